use std::io::Write;

use num_rational::Ratio;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::table::{ProfileTable, TABLE_MAX_N};
use super::{qpg, scs_exact};
use crate::config::RunConfig;
use crate::error::{Error, Result};
use crate::gate::Permutation;
use crate::promise::factorial;

/// How the combinations of one `(N, p)` are chosen.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase", tag = "mode")]
pub enum CensusMode {
    /// Every `p`-subset of `S_N` containing the identity.
    Exhaustive,
    /// `count` independent uniform draws of such subsets.
    Sample { count: u64, seed: u64 },
}

impl CensusMode {
    pub fn name(&self) -> &'static str {
        match self {
            CensusMode::Exhaustive => "exhaustive",
            CensusMode::Sample { .. } => "sample",
        }
    }
}

/// SCS statistics over the examined combinations of one `(N, p)`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CensusRow {
    #[serde(rename = "N")]
    pub n: usize,
    pub p: usize,
    pub combos: u64,
    #[serde(flatten)]
    pub mode: CensusMode,
    pub min_len: usize,
    pub max_len: usize,
    pub sum_len: u64,
    pub sum_sq_len: u64,
    pub avg_len: f64,
    pub min_qpg: f64,
    pub max_qpg: f64,
    pub avg_qpg: f64,
    /// Fixed at 1: the switch queries each gate once.
    pub switch_qpg: f64,
    /// Standard error of `avg_len`; sampled rows only.
    pub std_err: Option<f64>,
}

impl CensusRow {
    /// `sum_len / combos` as an exact fraction.
    pub fn avg_len_exact(&self) -> Ratio<u64> {
        Ratio::new(self.sum_len, self.combos)
    }

    fn from_stats(n: usize, p: usize, mode: CensusMode, s: Stats) -> CensusRow {
        let avg_len = s.sum as f64 / s.count as f64;
        let std_err = match mode {
            CensusMode::Sample { .. } if s.count > 1 => {
                let c = s.count as f64;
                let var = (s.sum_sq as f64 - s.sum as f64 * avg_len) / (c - 1.0);
                Some((var.max(0.0) / c).sqrt())
            }
            _ => None,
        };
        CensusRow {
            n,
            p,
            combos: s.count,
            mode,
            min_len: s.min,
            max_len: s.max,
            sum_len: s.sum,
            sum_sq_len: s.sum_sq,
            avg_len,
            min_qpg: qpg(s.min, n),
            max_qpg: qpg(s.max, n),
            avg_qpg: s.sum as f64 / (s.count as f64 * n as f64),
            switch_qpg: 1.0,
            std_err,
        }
    }
}

#[derive(Clone, Copy, Debug)]
struct Stats {
    count: u64,
    min: usize,
    max: usize,
    sum: u64,
    sum_sq: u64,
}

impl Stats {
    const EMPTY: Stats = Stats { count: 0, min: usize::MAX, max: 0, sum: 0, sum_sq: 0 };

    fn push(mut self, len: usize) -> Stats {
        self.count += 1;
        self.min = self.min.min(len);
        self.max = self.max.max(len);
        self.sum += len as u64;
        self.sum_sq += (len * len) as u64;
        self
    }

    fn merge(self, o: Stats) -> Stats {
        Stats {
            count: self.count + o.count,
            min: self.min.min(o.min),
            max: self.max.max(o.max),
            sum: self.sum + o.sum,
            sum_sq: self.sum_sq + o.sum_sq,
        }
    }
}

fn binomial(n: u128, k: u128) -> Option<u128> {
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        // acc·(n−i) is divisible by (i+1) since acc = C(n, i)
        acc = acc.checked_mul(n - i)? / (i + 1);
    }
    Some(acc)
}

/// Number of `p`-subsets of `S_N` containing the identity, if it fits in `u128`.
pub fn combination_count(n: usize, p: usize) -> Option<u128> {
    let m = factorial(n)?;
    if p == 0 || p as u128 > m {
        return Some(0);
    }
    binomial(m - 1, p as u128 - 1)
}

fn check_args(n: usize, p: usize, cfg: &RunConfig) -> Result<u128> {
    if n == 0 || n > cfg.n_max {
        return Err(Error::LimitExceeded(format!("N = {n} outside 1..={}", cfg.n_max)));
    }
    let m = factorial(n).expect("n ≤ n_max");
    if p < 2 || p as u128 > m {
        return Err(Error::Domain(format!("p = {p} outside 2..={m} for N = {n}")));
    }
    Ok(m)
}

// SCS length of {identity} ∪ others, indices into the lexicographic S_N
fn scs_len_of(n: usize, all: &[Permutation], table: Option<&ProfileTable>, others: &[usize]) -> Result<usize> {
    if let Some(t) = table {
        let mask = others.iter().fold(1u32, |acc, &i| acc | (1 << i));
        return Ok(t.scs_len(mask));
    }
    let set: Vec<Permutation> =
        std::iter::once(0).chain(others.iter().copied()).map(|i| all[i].clone()).collect();
    Ok(scs_exact(&set, n)?.length)
}

/// SCS statistics over `p`-subsets of `S_N` that contain the identity.
///
/// Exhaustive mode refuses to enumerate more than `cfg.census_budget`
/// combinations. Aggregates are exact integers, so the row does not depend on
/// the parallel schedule.
pub fn census(n: usize, p: usize, mode: CensusMode, cfg: &RunConfig) -> Result<CensusRow> {
    let m = check_args(n, p, cfg)? as usize;
    let all = Permutation::all(n);
    let table = if n <= TABLE_MAX_N { Some(ProfileTable::get(n)?) } else { None };
    let k = p - 1;

    let stats = match mode {
        CensusMode::Exhaustive => {
            let count = combination_count(n, p);
            if let Some(budget) = cfg.census_budget {
                if count.is_none_or(|c| c > budget as u128) {
                    let required = match count {
                        Some(c) => c.to_string(),
                        None => format!("more than {}", u128::MAX),
                    };
                    return Err(Error::BudgetExceeded { required, budget });
                }
            }
            match table {
                Some(t) => exhaustive_masks(m - 1, k, t),
                None => {
                    use itertools::Itertools;
                    (1..m)
                        .combinations(k)
                        .par_bridge()
                        .map(|c| scs_len_of(n, &all, None, &c))
                        .try_fold(|| Stats::EMPTY, |s, len| len.map(|l| s.push(l)))
                        .try_reduce(|| Stats::EMPTY, |a, b| Ok(a.merge(b)))?
                }
            }
        }
        CensusMode::Sample { count, seed } => {
            if count == 0 {
                return Err(Error::Domain("sample count must be positive".into()));
            }
            // drawn serially so the sample is fixed by the seed alone
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let draws: Vec<Vec<usize>> = (0..count)
                .map(|_| {
                    rand::seq::index::sample(&mut rng, m - 1, k)
                        .into_iter()
                        .map(|i| i + 1)
                        .collect()
                })
                .collect();
            draws
                .par_iter()
                .map(|c| scs_len_of(n, &all, table, c))
                .try_fold(|| Stats::EMPTY, |s, len| len.map(|l| s.push(l)))
                .try_reduce(|| Stats::EMPTY, |a, b| Ok(a.merge(b)))?
        }
    };
    Ok(CensusRow::from_stats(n, p, mode, stats))
}

// all k-subsets of bits 1..=bits, via Gosper's hack on the shifted mask
fn exhaustive_masks(bits: usize, k: usize, table: &ProfileTable) -> Stats {
    if k == 0 {
        return Stats::EMPTY.push(table.scs_len(1));
    }
    let limit = 1u64 << bits;
    let mut v: u64 = (1 << k) - 1;
    let mut s = Stats::EMPTY;
    while v < limit {
        s = s.push(table.scs_len(((v << 1) | 1) as u32));
        let c = v & v.wrapping_neg();
        let r = v + c;
        v = (((r ^ v) >> 2) / c) | r;
    }
    s
}

/// How [`census_sweep`] picks a mode for each `p`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SweepPolicy {
    pub p_min: usize,
    pub p_max: usize,
    /// Draws per sampled row.
    pub sample_count: u64,
    /// Row `p` is sampled with seed `seed + p`.
    pub seed: u64,
}

/// One census row per `p`: exhaustive where the budget allows, sampled elsewhere.
pub fn census_sweep(n: usize, policy: &SweepPolicy, cfg: &RunConfig) -> Result<Vec<CensusRow>> {
    if policy.p_min > policy.p_max {
        return Err(Error::Domain(format!(
            "empty p range {}..={}",
            policy.p_min, policy.p_max
        )));
    }
    (policy.p_min..=policy.p_max)
        .map(|p| {
            check_args(n, p, cfg)?;
            let fits = match (cfg.census_budget, combination_count(n, p)) {
                (None, _) => true,
                (Some(b), Some(c)) => c <= b as u128,
                (Some(_), None) => false,
            };
            let mode = if fits {
                CensusMode::Exhaustive
            } else {
                CensusMode::Sample {
                    count: policy.sample_count,
                    seed: policy.seed.wrapping_add(p as u64),
                }
            };
            census(n, p, mode, cfg)
        })
        .collect()
}

#[derive(Serialize)]
struct CsvRecord<'a> {
    #[serde(rename = "N")]
    n: usize,
    p: usize,
    combos: u64,
    mode: &'a str,
    min_len: usize,
    max_len: usize,
    avg_len: f64,
    min_qpg: f64,
    max_qpg: f64,
    avg_qpg: f64,
    switch_qpg: f64,
}

/// CSV with header `N,p,combos,mode,min_len,max_len,avg_len,min_qpg,max_qpg,avg_qpg,switch_qpg`.
pub fn write_csv<W: Write>(rows: &[CensusRow], out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    if rows.is_empty() {
        w.write_record([
            "N", "p", "combos", "mode", "min_len", "max_len", "avg_len", "min_qpg", "max_qpg",
            "avg_qpg", "switch_qpg",
        ])?;
    }
    for r in rows {
        w.serialize(CsvRecord {
            n: r.n,
            p: r.p,
            combos: r.combos,
            mode: r.mode.name(),
            min_len: r.min_len,
            max_len: r.max_len,
            avg_len: r.avg_len,
            min_qpg: r.min_qpg,
            max_qpg: r.max_qpg,
            avg_qpg: r.avg_qpg,
            switch_qpg: r.switch_qpg,
        })?;
    }
    w.flush()?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn counts() {
        assert_eq!(combination_count(3, 4), Some(10));
        assert_eq!(combination_count(4, 4), Some(1771));
        assert_eq!(combination_count(4, 24), Some(1));
        assert_eq!(binomial(23, 11), Some(1_352_078));
    }

    #[test]
    fn s3_rows() {
        let cfg = RunConfig::default();
        let r = census(3, 4, CensusMode::Exhaustive, &cfg).unwrap();
        assert_eq!((r.combos, r.min_len, r.max_len, r.sum_len), (10, 5, 6, 54));
        assert_eq!(r.avg_len_exact(), Ratio::new(27, 5));
        let full = census(3, 6, CensusMode::Exhaustive, &cfg).unwrap();
        assert_eq!((full.combos, full.min_len, full.max_len), (1, 7, 7));
    }

    #[test]
    fn budget_reports_required_count() {
        let cfg = RunConfig { census_budget: Some(100), ..RunConfig::default() };
        match census(4, 4, CensusMode::Exhaustive, &cfg) {
            Err(Error::BudgetExceeded { required, budget }) => {
                assert_eq!(required, "1771");
                assert_eq!(budget, 100);
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn p_out_of_range() {
        let cfg = RunConfig::default();
        assert!(matches!(census(3, 1, CensusMode::Exhaustive, &cfg), Err(Error::Domain(_))));
        assert!(matches!(census(3, 7, CensusMode::Exhaustive, &cfg), Err(Error::Domain(_))));
        assert!(matches!(census(7, 2, CensusMode::Exhaustive, &cfg), Err(Error::LimitExceeded(_))));
    }

    #[test]
    fn sampling_is_reproducible() {
        let cfg = RunConfig::default();
        let mode = CensusMode::Sample { count: 500, seed: 9 };
        let a = census(4, 8, mode, &cfg).unwrap();
        let b = census(4, 8, mode, &cfg).unwrap();
        assert_eq!(a, b);
        assert!(a.std_err.is_some());
        assert!(a.min_len as f64 <= a.avg_len && a.avg_len <= a.max_len as f64);
    }

    #[test]
    fn n5_uses_solver() {
        let cfg = RunConfig::default();
        let r = census(5, 2, CensusMode::Exhaustive, &cfg).unwrap();
        assert_eq!(r.combos, 119);
        assert_eq!(r.min_len, 6);
    }

    #[test]
    fn csv_header_is_exact() {
        let cfg = RunConfig::default();
        let r = census(3, 2, CensusMode::Exhaustive, &cfg).unwrap();
        let mut buf = Vec::new();
        write_csv(&[r], &mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        let mut lines = text.lines();
        assert_eq!(
            lines.next(),
            Some("N,p,combos,mode,min_len,max_len,avg_len,min_qpg,max_qpg,avg_qpg,switch_qpg")
        );
        assert!(lines.next().unwrap().starts_with("3,2,5,exhaustive,4,5,"));
    }
}
