use chpp_core::config::RunConfig;
use chpp_core::gate::Permutation;
use chpp_core::promise::{minimal_ch4_permutations, shift_permutations};
use chpp_core::scs::{
    census, census_sweep, is_supersequence, scs_brute_oracle, scs_exact, scs_greedy, CensusMode,
    ProfileTable, SweepPolicy,
};
use proptest::prelude::*;
use rand::seq::index::sample;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn subset(all: &[Permutation], idx: &[usize]) -> Vec<Permutation> {
    idx.iter().map(|&i| all[i].clone()).collect()
}

#[test]
fn brute_oracle_examples() {
    let two: Vec<Permutation> = vec!["01".parse().unwrap(), "10".parse().unwrap()];
    assert_eq!(scs_brute_oracle(&two, 4).unwrap(), Some(3));
    assert_eq!(scs_brute_oracle(&two, 2).unwrap(), None);
    let shifts = shift_permutations(3, 3).unwrap();
    assert_eq!(scs_brute_oracle(shifts.perms(), 6).unwrap(), Some(5));
    assert_eq!(scs_exact(shifts.perms(), 6).unwrap().length, 5);
}

#[test]
fn shift_family_needs_2n_minus_1() {
    for n in 2..=6 {
        let shifts = shift_permutations(n, n).unwrap();
        let r = scs_exact(shifts.perms(), 6).unwrap();
        assert_eq!(r.length, 2 * n - 1, "N = {n}");
        assert!(shifts.perms().iter().all(|t| is_supersequence(&r.witness, t.as_slice())));
    }
}

#[test]
fn minimal_three_gate_set_needs_six() {
    let set = minimal_ch4_permutations();
    let r = scs_exact(set.perms(), 6).unwrap();
    assert_eq!(r.length, 6);
    // U_2U_1U_0U_1U_2U_1 in application order
    let witness = [1, 2, 1, 0, 1, 2];
    assert!(set.perms().iter().all(|t| is_supersequence(&witness, t.as_slice())));
}

#[test]
fn oracle_agrees_on_every_s3_subset_with_identity() {
    let all = Permutation::all(3);
    for mask in 0u32..32 {
        let idx: Vec<usize> =
            std::iter::once(0).chain((1..6).filter(|i| mask & (1 << (i - 1)) != 0)).collect();
        let set = subset(&all, &idx);
        let exact = scs_exact(&set, 6).unwrap().length;
        assert_eq!(scs_brute_oracle(&set, 9).unwrap(), Some(exact), "{idx:?}");
    }
}

#[test]
fn table_agrees_with_solver_on_random_s4_subsets() {
    let table = ProfileTable::get(4).unwrap();
    let all = table.perms();
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..300 {
        let size = rand::Rng::random_range(&mut rng, 1..=24);
        let idx: Vec<usize> = sample(&mut rng, 24, size).into_vec();
        let set = subset(all, &idx);
        let mask = table.mask_of(&set).unwrap();
        assert_eq!(table.scs_len(mask), scs_exact(&set, 6).unwrap().length, "{idx:?}");
    }
}

#[test]
fn full_s4_needs_twelve() {
    let r = scs_exact(&Permutation::all(4), 6).unwrap();
    assert_eq!(r.length, 12);
    let cfg = RunConfig::default();
    let row = census(4, 24, CensusMode::Exhaustive, &cfg).unwrap();
    assert_eq!((row.combos, row.min_len, row.max_len), (1, 12, 12));
    assert_eq!(row.avg_qpg, 3.0);
}

#[test]
fn exhaustive_n4_sweep_is_monotone() {
    let cfg = RunConfig { census_budget: None, ..RunConfig::default() };
    let policy = SweepPolicy { p_min: 2, p_max: 24, sample_count: 1, seed: 0 };
    let rows = census_sweep(4, &policy, &cfg).unwrap();
    assert_eq!(rows.len(), 23);
    assert_eq!(rows.iter().map(|r| r.combos).sum::<u64>(), (1 << 23) - 1);
    for w in rows.windows(2) {
        assert!(w[0].min_len <= w[1].min_len, "min at p = {}", w[1].p);
        assert!(w[0].max_len <= w[1].max_len, "max at p = {}", w[1].p);
    }
    assert!(rows.iter().all(|r| r.mode == CensusMode::Exhaustive));
}

#[test]
fn default_budget_sweep_samples_the_middle() {
    let cfg = RunConfig::default();
    let policy = SweepPolicy { p_min: 2, p_max: 24, sample_count: 2_000, seed: 5 };
    let rows = census_sweep(4, &policy, &cfg).unwrap();
    let exhaustive: Vec<usize> =
        rows.iter().filter(|r| r.mode == CensusMode::Exhaustive).map(|r| r.p).collect();
    let mut expected: Vec<usize> = (2..=5).collect();
    expected.extend(20..=24);
    assert_eq!(exhaustive, expected);
    assert!(rows.iter().filter(|r| r.mode != CensusMode::Exhaustive).all(|r| r.std_err.is_some()));
}

#[test]
fn census_is_schedule_independent() {
    let cfg = RunConfig::default();
    let run = |threads| {
        rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build()
            .unwrap()
            .install(|| census(5, 3, CensusMode::Exhaustive, &cfg).unwrap())
    };
    assert_eq!(run(1), run(4));
}

fn arb_subset(n: usize) -> impl Strategy<Value = Vec<Permutation>> {
    let all = Permutation::all(n);
    let m = all.len();
    proptest::sample::subsequence((0..m).collect::<Vec<_>>(), 1..=m.min(8))
        .prop_map(move |idx| subset(&all, &idx))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn witness_and_bounds(set in (3usize..=5).prop_flat_map(arb_subset)) {
        let n = set[0].len();
        let r = scs_exact(&set, 6).unwrap();
        prop_assert_eq!(r.witness.len(), r.length);
        for t in &set {
            prop_assert!(is_supersequence(&r.witness, t.as_slice()));
        }
        prop_assert!(r.length >= n);
        prop_assert_eq!(r.length == n, set.len() == 1);
        prop_assert!(r.length <= scs_greedy(&set).unwrap().length);
    }

    #[test]
    fn adding_an_ordering_never_helps(set in arb_subset(4), extra in 0usize..24) {
        let before = scs_exact(&set, 6).unwrap().length;
        let mut bigger = set.clone();
        bigger.push(Permutation::all(4)[extra].clone());
        prop_assert!(scs_exact(&bigger, 6).unwrap().length >= before);
    }
}
