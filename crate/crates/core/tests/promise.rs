use std::f64::consts::{PI, TAU};

use chpp_core::chm::{f4_family, fourier, sylvester_hadamard, ChMatrix};
use chpp_core::config::RunConfig;
use chpp_core::gate::{random_unitary, GateSet, WeylOp};
use chpp_core::phase::{circular_distance, wrap_radians};
use chpp_core::promise::{
    build_cv_gates, build_instance, conjugate_gates, phase_profile, products, shift_permutations,
    verify_promise, InstanceFile, PromiseInstance, Target, Verdict,
};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn f4_grid() -> Vec<f64> {
    (0..8).map(|i| i as f64 * PI / 8.0).collect()
}

fn check_round_trip(m: &ChMatrix, target: Target, cfg: &RunConfig) {
    for k in 0..m.p() {
        let inst = build_instance(m, k, target, cfg).unwrap();
        assert_eq!(
            verify_promise(&inst, cfg.tolerances.eps_phase).unwrap(),
            Verdict::Column(k),
            "{target:?}, p = {}, k = {k}",
            m.p()
        );
    }
}

#[test]
fn round_trip_every_family_and_column() {
    let cfg = RunConfig::default();
    for d in 2..=6 {
        let m = fourier(d).unwrap();
        check_round_trip(&m, Target::Qudit { dim: None }, &cfg);
        check_round_trip(&m, Target::Qudit { dim: Some(2 * d) }, &cfg);
        check_round_trip(&m, Target::Cv { alpha: 1.0 }, &cfg);
    }
    for a in f4_grid() {
        check_round_trip(&f4_family(a).unwrap(), Target::Cv { alpha: 0.7 }, &cfg);
    }
    for k in 1..=3 {
        let m = sylvester_hadamard(k).unwrap();
        check_round_trip(&m, Target::Qudit { dim: None }, &cfg);
        check_round_trip(&m, Target::Cv { alpha: 2.0 }, &cfg);
    }
}

#[test]
fn determinant_obstruction_holds_for_qudit_instances() {
    let cfg = RunConfig::default();
    let mut matrices: Vec<ChMatrix> = (2..=6).map(|d| fourier(d).unwrap()).collect();
    matrices.extend((1..=3).map(|k| sylvester_hadamard(k).unwrap()));
    matrices.push(f4_family(0.0).unwrap());
    matrices.push(f4_family(PI / 2.0).unwrap());
    for m in &matrices {
        for k in 0..m.p() {
            let inst = build_instance(m, k, Target::Qudit { dim: None }, &cfg).unwrap();
            let GateSet::Qudit(g) = inst.gates() else { unreachable!() };
            let dim = g[0].dim() as f64;
            let profile = phase_profile(g, inst.perm_set(), 1e-9).unwrap();
            for ph in profile {
                let ph = ph.expect("promise holds");
                assert!(circular_distance(wrap_radians(dim * ph), 0.0) < 1e-9);
            }
        }
    }
}

#[test]
fn conjugation_keeps_the_column() {
    let cfg = RunConfig::default();
    let m = fourier(3).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for k in 0..3 {
        let inst = build_instance(&m, k, Target::Qudit { dim: None }, &cfg).unwrap();
        let GateSet::Qudit(g) = inst.gates() else { unreachable!() };
        for _ in 0..50 {
            let v = random_unitary(3, &mut rng);
            let conj = conjugate_gates(g, &v).unwrap();
            let c = PromiseInstance::new(m.clone(), inst.perm_set().clone(), GateSet::Qudit(conj), None, &cfg)
                .unwrap();
            assert_eq!(verify_promise(&c, 1e-9).unwrap(), Verdict::Column(k));
        }
    }
}

#[test]
fn cv_column_of_ones_gives_identical_products() {
    let cfg = RunConfig::default();
    for m in [fourier(5).unwrap(), f4_family(1.234).unwrap()] {
        let gates = build_cv_gates(&m, 0, 1.3, None, &cfg.tolerances).unwrap();
        let prods = products(&gates, &shift_permutations(m.p(), m.p()).unwrap()).unwrap();
        let first: WeylOp = prods[0];
        for p in &prods {
            assert!(p.same_displacement(&first, 1e-12));
            assert!(circular_distance(p.theta, first.theta) < 1e-12);
        }
    }
}

#[test]
fn cv_products_share_displacement_with_gammas() {
    let cfg = RunConfig::default();
    let m = fourier(4).unwrap();
    let gammas = [0.3, -1.1, 2.5];
    for k in 0..4 {
        let gates = build_cv_gates(&m, k, 0.9, Some(&gammas), &cfg.tolerances).unwrap();
        let perms = shift_permutations(4, 4).unwrap();
        let profile = phase_profile(&gates, &perms, 1e-9).unwrap();
        for (j, ph) in profile.iter().enumerate() {
            let want = TAU * ((j * k) % 4) as f64 / 4.0;
            assert!(circular_distance(ph.unwrap(), want) < 1e-9, "k={k}, j={j}");
        }
    }
}

#[test]
fn instance_json_round_trip() {
    let cfg = RunConfig::default();
    for (m, target) in [
        (fourier(3).unwrap(), Target::Qudit { dim: Some(6) }),
        (f4_family(0.5).unwrap(), Target::Cv { alpha: 1.0 }),
    ] {
        let inst = build_instance(&m, 2, target, &cfg).unwrap();
        let text = serde_json::to_string(&inst.to_file()).unwrap();
        let file: InstanceFile = serde_json::from_str(&text).unwrap();
        let back = PromiseInstance::from_file(file, std::path::Path::new("."), &cfg).unwrap();
        assert_eq!(back, inst);
        assert_eq!(verify_promise(&back, 1e-9).unwrap(), Verdict::Column(2));
    }
}
