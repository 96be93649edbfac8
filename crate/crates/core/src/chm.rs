//! Complex Hadamard matrices stored as log-Hadamard phase grids.
//!
//! A [`ChMatrix`] never holds complex entries: `M_{jk} = e^{iφ_{jk}}` with
//! `φ_{jk}` either an exact [`Turn`] or float radians, so unimodularity holds
//! by construction and only orthogonality needs checking.

use std::f64::consts::{FRAC_PI_2, PI, TAU};

use num_complex::Complex64;
use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::cyclotomic;
use crate::error::{Error, Result};
use crate::phase::{circular_distance, wrap_radians, PhaseValue, Rep, Turn};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "MatrixJson", into = "MatrixJson")]
pub struct ChMatrix {
    p: usize,
    rep: Rep,
    phases: Vec<PhaseValue>,
}

impl ChMatrix {
    /// Build from a row-major grid. Rejects empty, ragged, non-square and
    /// mixed exact/float grids. Float phases are wrapped into `[0, 2π)`.
    pub fn from_rows(rows: Vec<Vec<PhaseValue>>) -> Result<Self> {
        let p = rows.len();
        if p == 0 {
            return Err(Error::MalformedMatrix("empty grid".into()));
        }
        if let Some((j, row)) = rows.iter().enumerate().find(|(_, r)| r.len() != p) {
            return Err(Error::MalformedMatrix(format!(
                "row {j} has {} entries, expected {p}",
                row.len()
            )));
        }
        let rep = rows[0][0].rep();
        let mut phases = Vec::with_capacity(p * p);
        for (j, row) in rows.into_iter().enumerate() {
            for (k, v) in row.into_iter().enumerate() {
                if v.rep() != rep {
                    return Err(Error::MalformedMatrix(format!(
                        "entry ({j}, {k}) mixes exact and float phases"
                    )));
                }
                phases.push(match v {
                    PhaseValue::Float(x) if !x.is_finite() => {
                        return Err(Error::MalformedMatrix(format!("entry ({j}, {k}) is not finite")))
                    }
                    PhaseValue::Float(x) => PhaseValue::float(x),
                    exact => exact,
                });
            }
        }
        Ok(ChMatrix { p, rep, phases })
    }

    pub fn from_turns(rows: Vec<Vec<Turn>>) -> Result<Self> {
        Self::from_rows(
            rows.into_iter()
                .map(|r| r.into_iter().map(PhaseValue::Exact).collect())
                .collect(),
        )
    }

    pub fn from_radians(rows: Vec<Vec<f64>>) -> Result<Self> {
        Self::from_rows(
            rows.into_iter()
                .map(|r| r.into_iter().map(PhaseValue::Float).collect())
                .collect(),
        )
    }

    pub fn p(&self) -> usize {
        self.p
    }

    pub fn rep(&self) -> Rep {
        self.rep
    }

    pub fn phase(&self, j: usize, k: usize) -> PhaseValue {
        self.phases[j * self.p + k]
    }

    pub fn radians(&self, j: usize, k: usize) -> f64 {
        self.phase(j, k).radians()
    }

    pub fn entry(&self, j: usize, k: usize) -> Complex64 {
        Complex64::from_polar(1.0, self.radians(j, k))
    }

    /// Phases of column `k`, top to bottom.
    pub fn column(&self, k: usize) -> Vec<PhaseValue> {
        (0..self.p).map(|j| self.phase(j, k)).collect()
    }

    pub fn rows(&self) -> Vec<Vec<PhaseValue>> {
        self.phases.chunks(self.p).map(|r| r.to_vec()).collect()
    }

    /// Row-major complex entries.
    pub fn to_complex(&self) -> Vec<Complex64> {
        self.phases
            .iter()
            .map(|v| Complex64::from_polar(1.0, v.radians()))
            .collect()
    }

    /// First row and first column are all zero phases (within `eps_phase` for floats).
    pub fn is_dephased(&self, eps_phase: f64) -> bool {
        (0..self.p).all(|i| self.phase(0, i).is_zero(eps_phase) && self.phase(i, 0).is_zero(eps_phase))
    }

    /// Largest `|Σ_k e^{i(a_k − b_k)}|` over pairs of distinct lines.
    fn max_pair_deviation(&self, line: impl Fn(usize, usize) -> f64) -> f64 {
        let mut worst = 0.0f64;
        for a in 0..self.p {
            for b in (a + 1)..self.p {
                let s: Complex64 = (0..self.p)
                    .map(|i| Complex64::from_polar(1.0, line(a, i) - line(b, i)))
                    .sum();
                worst = worst.max(s.norm());
            }
        }
        worst
    }

    pub fn max_row_pair_deviation(&self) -> f64 {
        self.max_pair_deviation(|r, i| self.radians(r, i))
    }

    pub fn max_column_pair_deviation(&self) -> f64 {
        self.max_pair_deviation(|c, i| self.radians(i, c))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct ValidationReport {
    pub ok: bool,
    pub max_row_pair_deviation: f64,
    /// Orthogonality was decided by exact cyclotomic arithmetic.
    pub exact: bool,
}

/// Check `MM† = pI`.
///
/// Exact matrices are decided exactly whenever their common denominator is at
/// most [`cyclotomic::MAX_EXACT_ORDER`]; beyond that, and for float matrices,
/// every off-diagonal entry of `MM†` must have modulus at most `eps_unitary · p`.
/// The diagonal equals `p` structurally.
pub fn validate_ch(m: &ChMatrix, eps_unitary: f64) -> ValidationReport {
    let deviation = m.max_row_pair_deviation();
    if m.rep == Rep::Exact {
        let mut decided = true;
        let mut ok = true;
        'pairs: for a in 0..m.p {
            for b in (a + 1)..m.p {
                let diffs: Vec<Turn> = (0..m.p)
                    .map(|k| match (m.phase(a, k), m.phase(b, k)) {
                        (PhaseValue::Exact(x), PhaseValue::Exact(y)) => x - y,
                        _ => unreachable!("exact matrix holds exact phases"),
                    })
                    .collect();
                match cyclotomic::sum_vanishes(&diffs) {
                    Some(true) => {}
                    Some(false) => {
                        ok = false;
                        break 'pairs;
                    }
                    None => {
                        decided = false;
                        break 'pairs;
                    }
                }
            }
        }
        if decided {
            return ValidationReport { ok, max_row_pair_deviation: deviation, exact: true };
        }
    }
    ValidationReport {
        ok: deviation <= eps_unitary * m.p as f64,
        max_row_pair_deviation: deviation,
        exact: false,
    }
}

/// Output of [`dephase`]: `matrix = D₁ · m · D₂` with
/// `D₁ = diag(e^{i·row_factors})`, `D₂ = diag(e^{i·col_factors})`.
#[derive(Clone, Debug, PartialEq)]
pub struct Dephased {
    pub matrix: ChMatrix,
    pub row_factors: Vec<PhaseValue>,
    pub col_factors: Vec<PhaseValue>,
}

impl Dephased {
    /// Undo the diagonal factors, recovering the original matrix.
    pub fn reconstruct(&self) -> ChMatrix {
        let p = self.matrix.p;
        let rows = (0..p)
            .map(|j| {
                (0..p)
                    .map(|k| {
                        self.matrix
                            .phase(j, k)
                            .sub(&self.row_factors[j])
                            .sub(&self.col_factors[k])
                    })
                    .collect()
            })
            .collect();
        ChMatrix::from_rows(rows).expect("same shape and representation")
    }
}

/// Bring `m` to dephased form: rows are normalised by their column-0 phase
/// first, then columns by the resulting row-0 phase.
pub fn dephase(m: &ChMatrix) -> Dephased {
    let p = m.p;
    let row_factors: Vec<PhaseValue> = (0..p).map(|j| m.phase(j, 0).neg()).collect();
    let col_factors: Vec<PhaseValue> = (0..p)
        .map(|k| m.phase(0, k).add(&row_factors[0]).neg())
        .collect();
    let rows = (0..p)
        .map(|j| {
            (0..p)
                .map(|k| {
                    if j == 0 || k == 0 {
                        // zero by construction; avoid float residue
                        match m.rep {
                            Rep::Exact => PhaseValue::ZERO_EXACT,
                            Rep::Float => PhaseValue::Float(0.0),
                        }
                    } else {
                        m.phase(j, k).add(&row_factors[j]).add(&col_factors[k])
                    }
                })
                .collect()
        })
        .collect();
    Dephased {
        matrix: ChMatrix::from_rows(rows).expect("same shape and representation"),
        row_factors,
        col_factors,
    }
}

/// Butson classification result.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum BhClass {
    Butson { complexity: u64 },
    /// Float matrices only: "not Butson up to `d_max`".
    NotButson { row: usize, col: usize },
}

fn fits_order(radians: f64, d: u64, eps: f64) -> bool {
    let step = TAU / d as f64;
    let nearest = (radians / step).round() * step;
    circular_distance(radians, nearest) <= eps
}

/// Least `d` such that every entry is a `d`-th root of unity.
///
/// Exact matrices always classify as Butson with the lcm of their reduced
/// denominators. Float matrices are scanned over `d = 1..=d_max`; the
/// `NotButson` witness is the first entry (row-major) that is not a root of
/// unity of any order up to `d_max`, or, if each entry is individually a root
/// of unity, the first entry that fails at `d_max`.
pub fn classify_bh(m: &ChMatrix, d_max: u64, eps_phase: f64) -> BhClass {
    match m.rep {
        Rep::Exact => {
            let complexity = m.phases.iter().fold(1u64, |acc, v| match v {
                PhaseValue::Exact(t) => acc.lcm(&(t.den() as u64)),
                PhaseValue::Float(_) => unreachable!("exact matrix holds exact phases"),
            });
            BhClass::Butson { complexity }
        }
        Rep::Float => {
            for d in 1..=d_max {
                if m.phases.iter().all(|v| fits_order(v.radians(), d, eps_phase)) {
                    return BhClass::Butson { complexity: d };
                }
            }
            let at = |i: usize| BhClass::NotButson { row: i / m.p, col: i % m.p };
            if let Some(i) = m
                .phases
                .iter()
                .position(|v| !(1..=d_max).any(|d| fits_order(v.radians(), d, eps_phase)))
            {
                return at(i);
            }
            let i = m
                .phases
                .iter()
                .position(|v| !fits_order(v.radians(), d_max, eps_phase))
                .unwrap_or(0);
            at(i)
        }
    }
}

/// The Fourier matrix `(F_d)_{jk} = e^{2πi·jk/d}`.
pub fn fourier(d: usize) -> Result<ChMatrix> {
    if d == 0 {
        return Err(Error::Domain("Fourier order must be at least 1".into()));
    }
    let rows = (0..d)
        .map(|j| (0..d).map(|k| Turn::new(((j * k) % d) as i64, d as i64)).collect())
        .collect();
    ChMatrix::from_turns(rows)
}

// rows of F_4^{(1)}(a) in quarter turns, with `true` marking entries that also carry `a`
const F4_LAYOUT: [[(i64, bool); 4]; 4] = [
    [(0, false), (0, false), (0, false), (0, false)],
    [(0, false), (1, true), (2, false), (3, true)],
    [(0, false), (2, false), (0, false), (2, false)],
    [(0, false), (3, true), (2, false), (1, true)],
];

/// The one-parameter `CH(4)` family with entries `{1, ie^{ia}, −1, −ie^{ia}}`,
/// float representation, `a ∈ [0, π)` in radians.
pub fn f4_family(a: f64) -> Result<ChMatrix> {
    if !(0.0..PI).contains(&a) {
        return Err(Error::Domain(format!("F4 parameter {a} outside [0, π)")));
    }
    let rows = F4_LAYOUT
        .iter()
        .map(|row| {
            row.iter()
                .map(|&(quarters, shifted)| {
                    let base = quarters as f64 * FRAC_PI_2;
                    wrap_radians(if shifted { base + a } else { base })
                })
                .collect()
        })
        .collect();
    ChMatrix::from_radians(rows)
}

/// Exact-representation variant of [`f4_family`]; `a` is a fraction of a
/// full turn in `[0, 1/2)`.
pub fn f4_family_exact(a: Turn) -> Result<ChMatrix> {
    if 2 * a.num() >= a.den() {
        return Err(Error::Domain(format!("F4 parameter {a} turns outside [0, 1/2)")));
    }
    let rows = F4_LAYOUT
        .iter()
        .map(|row| {
            row.iter()
                .map(|&(quarters, shifted)| {
                    let base = Turn::new(quarters, 4);
                    if shifted {
                        base + a
                    } else {
                        base
                    }
                })
                .collect()
        })
        .collect();
    ChMatrix::from_turns(rows)
}

/// Largest accepted Sylvester exponent (order 2^16).
pub const MAX_SYLVESTER_EXPONENT: u32 = 16;

/// Real Hadamard matrix of order `2^k` by Sylvester doubling.
pub fn sylvester_hadamard(k: u32) -> Result<ChMatrix> {
    if k > MAX_SYLVESTER_EXPONENT {
        return Err(Error::Domain(format!(
            "Sylvester exponent {k} exceeds {MAX_SYLVESTER_EXPONENT}"
        )));
    }
    let n = 1usize << k;
    let rows = (0..n)
        .map(|j| {
            (0..n)
                .map(|c| if (j & c).count_ones() % 2 == 0 { Turn::ZERO } else { Turn::HALF })
                .collect()
        })
        .collect();
    ChMatrix::from_turns(rows)
}

/// Smallest finite target dimension able to host a promise specified by `m`:
/// its Butson complexity, or `None` when only a continuous-variable target works.
pub fn min_target_dimension(m: &ChMatrix, d_max: u64, eps_phase: f64) -> Option<u64> {
    match classify_bh(m, d_max, eps_phase) {
        BhClass::Butson { complexity } => Some(complexity),
        BhClass::NotButson { .. } => None,
    }
}

/// Whether `M_{jk}^D = 1` for every entry, the determinant constraint on a
/// `D`-dimensional target.
pub fn admits_target_dimension(m: &ChMatrix, dim: u64, eps_phase: f64) -> bool {
    m.phases.iter().all(|v| match *v {
        PhaseValue::Exact(t) => t.times(dim as i64).is_zero(),
        PhaseValue::Float(x) => circular_distance(x * dim as f64, 0.0) <= eps_phase * dim as f64,
    })
}

#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum EntryJson {
    Exact(Turn),
    Float(f64),
}

#[derive(Serialize, Deserialize)]
struct MatrixJson {
    p: usize,
    rep: Rep,
    phases: Vec<Vec<EntryJson>>,
}

impl TryFrom<MatrixJson> for ChMatrix {
    type Error = Error;

    fn try_from(raw: MatrixJson) -> Result<Self> {
        if raw.phases.len() != raw.p {
            return Err(Error::MalformedMatrix(format!(
                "declared p = {} but grid has {} rows",
                raw.p,
                raw.phases.len()
            )));
        }
        let rows = raw
            .phases
            .into_iter()
            .map(|r| {
                r.into_iter()
                    .map(|e| match e {
                        EntryJson::Exact(t) => PhaseValue::Exact(t),
                        EntryJson::Float(x) => PhaseValue::Float(x),
                    })
                    .collect()
            })
            .collect();
        let m = ChMatrix::from_rows(rows)?;
        if m.rep != raw.rep {
            return Err(Error::MalformedMatrix(format!(
                "declared rep {:?} does not match entries",
                raw.rep
            )));
        }
        Ok(m)
    }
}

impl From<ChMatrix> for MatrixJson {
    fn from(m: ChMatrix) -> Self {
        MatrixJson {
            p: m.p,
            rep: m.rep,
            phases: m
                .rows()
                .into_iter()
                .map(|r| {
                    r.into_iter()
                        .map(|v| match v {
                            PhaseValue::Exact(t) => EntryJson::Exact(t),
                            PhaseValue::Float(x) => EntryJson::Float(x),
                        })
                        .collect()
                })
                .collect(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const EPS: f64 = 1e-9;

    fn irrational_a() -> f64 {
        (TAU / 2f64.sqrt()) % PI
    }

    #[test]
    fn fourier_two_is_ch() {
        let f2 = fourier(2).unwrap();
        assert_eq!(f2.rows(), vec![
            vec![PhaseValue::Exact(Turn::ZERO), PhaseValue::Exact(Turn::ZERO)],
            vec![PhaseValue::Exact(Turn::ZERO), PhaseValue::Exact(Turn::HALF)],
        ]);
        let r = validate_ch(&f2, EPS);
        assert!(r.ok && r.exact);
    }

    #[test]
    fn parallel_rows_fail() {
        let m = ChMatrix::from_turns(vec![vec![Turn::ZERO; 2]; 2]).unwrap();
        let r = validate_ch(&m, EPS);
        assert!(!r.ok);
        assert!((r.max_row_pair_deviation - 2.0).abs() < 1e-12);
        let f = ChMatrix::from_radians(vec![vec![0.0; 2]; 2]).unwrap();
        assert!(!validate_ch(&f, EPS).ok);
    }

    #[test]
    fn malformed_grids() {
        assert!(matches!(ChMatrix::from_radians(vec![]), Err(Error::MalformedMatrix(_))));
        assert!(matches!(
            ChMatrix::from_radians(vec![vec![0.0, 0.0], vec![0.0]]),
            Err(Error::MalformedMatrix(_))
        ));
        let mixed = vec![
            vec![PhaseValue::Exact(Turn::ZERO), PhaseValue::Float(0.0)],
            vec![PhaseValue::Float(0.0), PhaseValue::Float(PI)],
        ];
        assert!(matches!(ChMatrix::from_rows(mixed), Err(Error::MalformedMatrix(_))));
    }

    #[test]
    fn f4_family_members_are_ch() {
        for a in [0.0, 0.1, 0.3, FRAC_PI_2, irrational_a(), 3.0] {
            let m = f4_family(a).unwrap();
            assert!(validate_ch(&m, 1e-12).ok, "a = {a}");
            assert!(m.max_column_pair_deviation() <= 1e-12 * 4.0);
        }
        assert!(matches!(f4_family(PI), Err(Error::Domain(_))));
        assert!(matches!(f4_family(-0.1), Err(Error::Domain(_))));
        assert!(matches!(f4_family_exact(Turn::HALF), Err(Error::Domain(_))));
    }

    #[test]
    fn f4_at_zero_is_fourier_four() {
        let f4 = fourier(4).unwrap();
        assert_eq!(f4_family_exact(Turn::ZERO).unwrap(), f4);
        let float = f4_family(0.0).unwrap();
        for j in 0..4 {
            for k in 0..4 {
                assert!((float.entry(j, k) - f4.entry(j, k)).norm() < 1e-15);
            }
        }
    }

    #[test]
    fn f4_at_half_pi_is_real() {
        let m = f4_family(FRAC_PI_2).unwrap();
        for j in 0..4 {
            for k in 0..4 {
                let z = m.entry(j, k);
                assert!(z.im.abs() < 1e-15 && (z.re.abs() - 1.0).abs() < 1e-15);
            }
        }
    }

    #[test]
    fn classification() {
        assert_eq!(classify_bh(&f4_family(0.0).unwrap(), 4096, EPS), BhClass::Butson { complexity: 4 });
        assert_eq!(
            classify_bh(&f4_family(FRAC_PI_2).unwrap(), 4096, EPS),
            BhClass::Butson { complexity: 2 }
        );
        assert_eq!(
            classify_bh(&f4_family_exact(Turn::new(1, 4)).unwrap(), 4096, EPS),
            BhClass::Butson { complexity: 2 }
        );
        // ie^{ia} is the first entry carrying the irrational parameter
        assert_eq!(
            classify_bh(&f4_family(irrational_a()).unwrap(), 1000, EPS),
            BhClass::NotButson { row: 1, col: 1 }
        );
        for d in 2..=12 {
            assert_eq!(
                classify_bh(&fourier(d).unwrap(), 4096, EPS),
                BhClass::Butson { complexity: d as u64 }
            );
        }
    }

    #[test]
    fn not_butson_witness_when_entries_are_roots_of_unity() {
        // 1/7 and 1/11 turns individually fit, but their lcm 77 exceeds d_max = 50
        let m = ChMatrix::from_radians(vec![vec![0.0, TAU / 7.0], vec![TAU / 11.0, 0.0]]).unwrap();
        assert_eq!(classify_bh(&m, 50, EPS), BhClass::NotButson { row: 0, col: 1 });
        assert_eq!(classify_bh(&m, 100, EPS), BhClass::Butson { complexity: 77 });
    }

    #[test]
    fn sylvester() {
        let h0 = sylvester_hadamard(0).unwrap();
        assert_eq!(h0.rows(), vec![vec![PhaseValue::Exact(Turn::ZERO)]]);
        assert_eq!(sylvester_hadamard(1).unwrap(), fourier(2).unwrap());
        let h2 = sylvester_hadamard(2).unwrap();
        assert_eq!(h2.p(), 4);
        assert!(validate_ch(&h2, EPS).ok);
        assert!(h2.is_dephased(0.0));
        assert_eq!(classify_bh(&h2, 4096, EPS), BhClass::Butson { complexity: 2 });
    }

    #[test]
    fn fourier_three_and_five() {
        let f3 = fourier(3).unwrap();
        assert!(validate_ch(&f3, EPS).ok);
        assert_eq!(classify_bh(&f3, 4096, EPS), BhClass::Butson { complexity: 3 });
        assert_eq!(min_target_dimension(&fourier(5).unwrap(), 4096, EPS), Some(5));
    }

    #[test]
    fn dephase_fixed_point_and_recovery() {
        let f3 = fourier(3).unwrap();
        let d = dephase(&f3);
        assert_eq!(d.matrix, f3);
        assert!(d.row_factors.iter().chain(&d.col_factors).all(|v| v.is_zero(0.0)));

        let mut rows = fourier(2).unwrap().rows();
        for v in rows[1].iter_mut() {
            *v = v.add(&PhaseValue::Exact(Turn::new(1, 4)));
        }
        let twisted = ChMatrix::from_rows(rows).unwrap();
        let d = dephase(&twisted);
        assert_eq!(d.matrix, fourier(2).unwrap());
        assert_eq!(d.row_factors[1], PhaseValue::Exact(Turn::new(3, 4)));
        assert_eq!(d.reconstruct(), twisted);
    }

    #[test]
    fn dephase_undoes_diagonal_twirl() {
        let base = f4_family(FRAC_PI_2).unwrap();
        let r = [0.3, 1.7, 4.0, 5.9];
        let c = [2.2, 0.4, 3.3, 6.1];
        let rows = (0..4)
            .map(|j| (0..4).map(|k| base.radians(j, k) + r[j] + c[k]).collect())
            .collect();
        let twirled = ChMatrix::from_radians(rows).unwrap();
        let d = dephase(&twirled);
        for j in 0..4 {
            for k in 0..4 {
                assert!(circular_distance(d.matrix.radians(j, k), base.radians(j, k)) < EPS);
            }
        }
        let back = d.reconstruct();
        for j in 0..4 {
            for k in 0..4 {
                assert!(circular_distance(back.radians(j, k), twirled.radians(j, k)) < EPS);
            }
        }
    }

    #[test]
    fn min_dimension() {
        assert_eq!(min_target_dimension(&f4_family(FRAC_PI_2).unwrap(), 4096, EPS), Some(2));
        assert_eq!(min_target_dimension(&f4_family(irrational_a()).unwrap(), 4096, EPS), None);
        let f6 = fourier(6).unwrap();
        for dim in [6, 12, 18] {
            assert!(admits_target_dimension(&f6, dim, EPS));
        }
        assert!(!admits_target_dimension(&f6, 4, EPS));
    }

    #[test]
    fn json_round_trip_and_mixed_rejection() {
        let m = f4_family_exact(Turn::new(1, 8)).unwrap();
        let s = serde_json::to_string(&m).unwrap();
        assert!(s.starts_with(r#"{"p":4,"rep":"exact","phases":[[{"num":0,"den":1}"#));
        assert_eq!(serde_json::from_str::<ChMatrix>(&s).unwrap(), m);

        let f = f4_family(0.3).unwrap();
        let s = serde_json::to_string(&f).unwrap();
        assert_eq!(serde_json::from_str::<ChMatrix>(&s).unwrap(), f);

        let mixed = r#"{"p":2,"rep":"float","phases":[[0.0,{"num":0,"den":1}],[0.0,3.14]]}"#;
        assert!(serde_json::from_str::<ChMatrix>(mixed).is_err());
        let wrong_rep = r#"{"p":1,"rep":"exact","phases":[[0.0]]}"#;
        assert!(serde_json::from_str::<ChMatrix>(wrong_rep).is_err());
    }
}
