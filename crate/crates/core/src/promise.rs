//! Promise instances, gate-set synthesis and promise verification.
//!
//! Every builder returns gates whose orderings `Π_j` satisfy
//! `Π_j = e^{iφ_{jk}} · Π₀` for the requested column `k`. The shift
//! constructions put the translation/shift gate first in `Π₀` and move it one
//! slot later per row; the minimal three-gate `CH(4)` sets follow the explicit
//! per-column parameter solutions.

use std::f64::consts::{FRAC_PI_2, PI, TAU};
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::chm::{classify_bh, f4_family, BhClass, ChMatrix};
use crate::config::{RunConfig, Tolerances};
use crate::error::{Error, Result};
use crate::gate::{
    pauli_x_power, pauli_z_power, product_in_order, weyl_compose, weyl_x, weyl_z, Gate, GateSet,
    Permutation, QuditGate, WeylOp,
};
use crate::phase::{circular_distance, PhaseValue};

/// `p` distinct orderings of the same `N` gates, the first being `Π₀`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "Vec<Permutation>", into = "Vec<Permutation>")]
pub struct PermutationSet(Vec<Permutation>);

impl PermutationSet {
    pub fn new(perms: Vec<Permutation>) -> Result<Self> {
        let Some(first) = perms.first() else {
            return Err(Error::InvalidPermutation("empty permutation set".into()));
        };
        let n = first.len();
        if let Some(p) = perms.iter().find(|p| p.len() != n) {
            return Err(Error::InvalidPermutation(format!(
                "{p} has length {}, expected {n}",
                p.len()
            )));
        }
        if !first.is_identity() {
            return Err(Error::InvalidPermutation(format!(
                "first ordering must be the identity, got {first}"
            )));
        }
        for (i, a) in perms.iter().enumerate() {
            if perms[..i].contains(a) {
                return Err(Error::InvalidPermutation(format!("{a} appears twice")));
            }
        }
        // distinctness already implies p <= N!; kept explicit for clarity of the error
        if factorial(n).is_some_and(|f| perms.len() as u128 > f) {
            return Err(Error::Domain(format!("p = {} exceeds {n}!", perms.len())));
        }
        Ok(PermutationSet(perms))
    }

    pub fn p(&self) -> usize {
        self.0.len()
    }

    /// Number of gates.
    pub fn n(&self) -> usize {
        self.0[0].len()
    }

    pub fn perms(&self) -> &[Permutation] {
        &self.0
    }
}

impl TryFrom<Vec<Permutation>> for PermutationSet {
    type Error = Error;

    fn try_from(v: Vec<Permutation>) -> Result<Self> {
        PermutationSet::new(v)
    }
}

impl From<PermutationSet> for Vec<Permutation> {
    fn from(s: PermutationSet) -> Self {
        s.0
    }
}

pub(crate) fn factorial(n: usize) -> Option<u128> {
    (1..=n as u128).try_fold(1u128, |acc, k| acc.checked_mul(k))
}

/// `Π₀ = [0, 1, …, N−1]` and `Π_j = [1, …, j, 0, j+1, …, N−1]`: gate 0 moves
/// `j` slots later in application order.
pub fn shift_permutations(p: usize, n: usize) -> Result<PermutationSet> {
    if p < 2 || p > n {
        return Err(Error::Domain(format!(
            "shift family needs 2 <= p <= N, got p = {p}, N = {n}"
        )));
    }
    let perms = (0..p)
        .map(|j| {
            let mut order: Vec<usize> = (1..=j).collect();
            order.push(0);
            order.extend(j + 1..n);
            Permutation::new(order)
        })
        .collect::<Result<_>>()?;
    PermutationSet::new(perms)
}

fn require_dephased(m: &ChMatrix, tol: &Tolerances) -> Result<()> {
    if m.is_dephased(tol.eps_phase) {
        Ok(())
    } else {
        Err(Error::NotDephased)
    }
}

fn require_column(m: &ChMatrix, k: usize) -> Result<()> {
    if k >= m.p() {
        return Err(Error::Domain(format!("column {k} out of range for p = {}", m.p())));
    }
    Ok(())
}

/// Continuous-variable gate set for column `k`, to be paired with
/// `shift_permutations(p, p)`.
///
/// `U₀` translates by `−α` and `U_j = Z_{β_j γ_j}` with
/// `β_j = (φ_{jk} − φ_{(j−1)k}) / α`, the phase difference taken between the
/// stored `[0, 2π)` representatives. Commuting `U₀` past `U_j` then picks up
/// exactly `e^{i(φ_{jk} − φ_{(j−1)k})}`. Missing `gammas` default to zero.
pub fn build_cv_gates(
    m: &ChMatrix,
    k: usize,
    alpha: f64,
    gammas: Option<&[f64]>,
    tol: &Tolerances,
) -> Result<Vec<WeylOp>> {
    require_column(m, k)?;
    if alpha == 0.0 || !alpha.is_finite() {
        return Err(Error::Domain("alpha must be a nonzero finite real".into()));
    }
    require_dephased(m, tol)?;
    let p = m.p();
    if let Some(g) = gammas {
        if g.len() != p - 1 {
            return Err(Error::SizeMismatch(format!("{} gammas for {} Z gates", g.len(), p - 1)));
        }
    }
    let mut gates = vec![weyl_x(-alpha)];
    for j in 1..p {
        let beta = (m.radians(j, k) - m.radians(j - 1, k)) / alpha;
        let gamma = gammas.map_or(0.0, |g| g[j - 1]);
        gates.push(weyl_z(beta, gamma));
    }
    Ok(gates)
}

/// Qudit gate set for column `k` of a Butson matrix of complexity `d`, to be
/// paired with `shift_permutations(p, p)`.
///
/// `U₀ = X^{−1}` and `U_j = Z^{q_j · D/d}` with `q_j = q_{jk} − q_{(j−1)k} mod d`.
/// `dim` defaults to `d` and must be a multiple of it.
pub fn build_qudit_gates(
    m: &ChMatrix,
    k: usize,
    dim: Option<usize>,
    cfg: &RunConfig,
) -> Result<Vec<QuditGate>> {
    require_column(m, k)?;
    require_dephased(m, &cfg.tolerances)?;
    let d = match classify_bh(m, cfg.d_max, cfg.tolerances.eps_phase) {
        BhClass::Butson { complexity } => complexity,
        BhClass::NotButson { row, col } => return Err(Error::NotButson { row, col }),
    };
    let dim = dim.unwrap_or(d as usize);
    if dim == 0 || !(dim as u64).is_multiple_of(d) {
        return Err(Error::IncompatibleDimension { complexity: d, dim });
    }
    let lift = (dim as u64 / d) as i64;
    let q = |j: usize| -> i64 {
        match m.phase(j, k) {
            PhaseValue::Exact(t) => t.numerator_over(d as i64).expect("d is the lcm of denominators"),
            PhaseValue::Float(x) => (x * d as f64 / TAU).round() as i64,
        }
    };
    let mut gates = vec![pauli_x_power(dim, -1)?];
    for j in 1..m.p() {
        let qj = (q(j) - q(j - 1)).rem_euclid(d as i64);
        gates.push(pauli_z_power(dim, qj * lift)?);
    }
    Ok(gates)
}

/// Free parameters of the minimal three-gate `CH(4)` solutions.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct MinimalFree {
    /// `α₁`, or `α₀` on the `k = 3, a = π/2` branch. Must be nonzero.
    pub alpha: f64,
    /// `α₂` on the `k = 3, a = π/2` branch; unused elsewhere.
    pub alpha2: f64,
    /// `β₁`, or `β₀` on the `k = 3, a = π/2` branch; every `β_j` for `k = 0`.
    pub beta: f64,
}

impl Default for MinimalFree {
    fn default() -> Self {
        MinimalFree { alpha: 1.0, alpha2: 1.0, beta: 0.0 }
    }
}

/// Orderings used by the minimal sets: `Π₀ = U₂U₁U₀`, `Π₁ = U₂U₀U₁`,
/// `Π₂ = U₀U₂U₁`, `Π₃ = U₀U₁U₂`.
pub fn minimal_ch4_permutations() -> PermutationSet {
    PermutationSet::new(
        [[0, 1, 2], [1, 0, 2], [1, 2, 0], [2, 1, 0]]
            .into_iter()
            .map(|o| Permutation::new(o.to_vec()).expect("valid orderings"))
            .collect(),
    )
    .expect("valid permutation set")
}

/// Translation and momentum-kick parameters `(α_i, β_i)` of the three gates.
pub fn minimal_ch4_parameters(a: f64, k: usize, free: MinimalFree, eps_phase: f64) -> Result<[(f64, f64); 3]> {
    if !(0.0..PI).contains(&a) {
        return Err(Error::Domain(format!("F4 parameter {a} outside [0, π)")));
    }
    let nonzero = |x: f64, name: &str| -> Result<f64> {
        if x == 0.0 || !x.is_finite() {
            Err(Error::Domain(format!("{name} must be a nonzero finite real")))
        } else {
            Ok(x)
        }
    };
    let MinimalFree { alpha, alpha2, beta } = free;
    Ok(match k {
        0 => [(0.0, beta); 3],
        1 => {
            let a1 = nonzero(alpha, "alpha_1")?;
            let a2 = (PI - 2.0 * a) * a1 / (PI + 2.0 * a);
            let b0 = (PI + 2.0 * a) / (2.0 * a1);
            let b2 = (3.0 * PI + 2.0 * a2 * beta - 2.0 * a) / (2.0 * a1);
            [(0.0, b0), (a1, beta), (a2, b2)]
        }
        2 => {
            let a1 = nonzero(alpha, "alpha_1")?;
            let b0 = PI / a1;
            [(0.0, b0), (a1, beta), (-a1, -b0 - beta)]
        }
        3 if (a - FRAC_PI_2).abs() <= eps_phase => {
            let a0 = nonzero(alpha, "alpha_0")?;
            let b2 = (-PI + alpha2 * beta) / a0;
            [(a0, beta), (0.0, 0.0), (alpha2, b2)]
        }
        3 => {
            let a1 = nonzero(alpha, "alpha_1")?;
            let a2 = (-3.0 * PI + 2.0 * a) * a1 / (PI - 2.0 * a);
            let b0 = (-PI + 2.0 * a) / (2.0 * a1);
            let b2 = (PI + 2.0 * a2 * beta - 2.0 * a) / (2.0 * a1);
            [(0.0, b0), (a1, beta), (a2, b2)]
        }
        _ => return Err(Error::Domain(format!("column {k} out of range for p = 4"))),
    })
}

/// Three continuous-variable gates `U_i = X_{α_i} Z_{β_i, 0}` realising column
/// `k` of `F₄⁽¹⁾(a)` over the orderings of [`minimal_ch4_permutations`].
pub fn build_minimal_ch4(
    a: f64,
    k: usize,
    free: MinimalFree,
    eps_phase: f64,
) -> Result<(Vec<WeylOp>, PermutationSet)> {
    let params = minimal_ch4_parameters(a, k, free, eps_phase)?;
    let gates = params
        .iter()
        .map(|&(alpha, beta)| weyl_compose(&weyl_x(alpha), &weyl_z(beta, 0.0)))
        .collect();
    Ok((gates, minimal_ch4_permutations()))
}

/// `{V U_j V†}`.
pub fn conjugate_gates(gates: &[QuditGate], v: &QuditGate) -> Result<Vec<QuditGate>> {
    gates.iter().map(|g| g.conjugate_by(v)).collect()
}

/// Outcome of [`verify_promise`].
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    /// The unique column matching every phase ratio.
    Column(usize),
    /// No column matches; reported against the claimed column, or the
    /// closest one when nothing was claimed. `got` is `None` when `Π_j` is
    /// not proportional to `Π₀` at all.
    Violation { column: usize, j: usize, expected: f64, got: Option<f64> },
}

/// A matrix, orderings and gates, optionally with the column the gates are
/// claimed to satisfy.
#[derive(Clone, Debug, PartialEq)]
pub struct PromiseInstance {
    matrix: ChMatrix,
    perm_set: PermutationSet,
    gates: GateSet,
    claimed_column: Option<usize>,
}

impl PromiseInstance {
    pub fn new(
        matrix: ChMatrix,
        perm_set: PermutationSet,
        gates: GateSet,
        claimed_column: Option<usize>,
        cfg: &RunConfig,
    ) -> Result<Self> {
        if matrix.p() != perm_set.p() {
            return Err(Error::SizeMismatch(format!(
                "matrix order {} but {} orderings",
                matrix.p(),
                perm_set.p()
            )));
        }
        if gates.len() != perm_set.n() {
            return Err(Error::SizeMismatch(format!(
                "{} gates but orderings over {}",
                gates.len(),
                perm_set.n()
            )));
        }
        require_dephased(&matrix, &cfg.tolerances)?;
        if let Some(k) = claimed_column {
            require_column(&matrix, k)?;
        }
        if let GateSet::Qudit(g) = &gates {
            QuditGate::check_homogeneous(g)?;
            let dim = g[0].dim();
            match classify_bh(&matrix, cfg.d_max, cfg.tolerances.eps_phase) {
                BhClass::NotButson { row, col } => return Err(Error::NotButson { row, col }),
                BhClass::Butson { complexity } if !(dim as u64).is_multiple_of(complexity) => {
                    return Err(Error::IncompatibleDimension { complexity, dim })
                }
                BhClass::Butson { .. } => {}
            }
        }
        Ok(PromiseInstance { matrix, perm_set, gates, claimed_column })
    }

    pub fn matrix(&self) -> &ChMatrix {
        &self.matrix
    }

    pub fn perm_set(&self) -> &PermutationSet {
        &self.perm_set
    }

    pub fn gates(&self) -> &GateSet {
        &self.gates
    }

    pub fn claimed_column(&self) -> Option<usize> {
        self.claimed_column
    }

    pub fn to_file(&self) -> InstanceFile {
        InstanceFile {
            matrix: MatrixRef::Inline(self.matrix.clone()),
            perms: self.perm_set.clone(),
            gates: self.gates.clone(),
            claimed_column: self.claimed_column,
        }
    }

    /// Resolve a parsed instance file; relative matrix paths are taken from `base_dir`.
    pub fn from_file(file: InstanceFile, base_dir: &Path, cfg: &RunConfig) -> Result<Self> {
        let matrix = match file.matrix {
            MatrixRef::Inline(m) => m,
            MatrixRef::Path(p) => {
                let text = std::fs::read_to_string(base_dir.join(&p))
                    .map_err(|e| Error::Io(format!("{p}: {e}")))?;
                serde_json::from_str(&text)?
            }
        };
        PromiseInstance::new(matrix, file.perms, file.gates, file.claimed_column, cfg)
    }
}

/// Either an inline matrix or a path to a matrix file.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum MatrixRef {
    Inline(ChMatrix),
    Path(String),
}

/// On-disk instance layout.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct InstanceFile {
    pub matrix: MatrixRef,
    pub perms: PermutationSet,
    pub gates: GateSet,
    #[serde(default)]
    pub claimed_column: Option<usize>,
}

/// `Π_j` for every ordering.
pub fn products<G: Gate>(gates: &[G], perm_set: &PermutationSet) -> Result<Vec<G>> {
    perm_set.perms().iter().map(|p| product_in_order(gates, p)).collect()
}

/// Phase of `Π_j / Π₀` for every `j`, `None` where not proportional.
pub fn phase_profile<G: Gate>(gates: &[G], perm_set: &PermutationSet, eps: f64) -> Result<Vec<Option<f64>>> {
    let prods = products(gates, perm_set)?;
    Ok(prods.iter().map(|pj| pj.phase_ratio(&prods[0], eps)).collect())
}

fn match_columns(m: &ChMatrix, profile: &[Option<f64>], eps: f64, claimed: Option<usize>) -> Result<Verdict> {
    let p = m.p();
    let deviation = |k: usize, j: usize| profile[j].map(|got| circular_distance(got, m.radians(j, k)));
    let matches: Vec<usize> = (0..p)
        .filter(|&k| (0..p).all(|j| deviation(k, j).is_some_and(|d| d <= eps)))
        .collect();
    match matches.as_slice() {
        [k] => Ok(Verdict::Column(*k)),
        [first, second, ..] => Err(Error::Ambiguous { first: *first, second: *second }),
        [] => {
            let column = claimed.unwrap_or_else(|| {
                (0..p)
                    .min_by(|&a, &b| {
                        let worst = |k| (0..p).map(|j| deviation(k, j).unwrap_or(f64::INFINITY)).fold(0.0, f64::max);
                        worst(a).total_cmp(&worst(b))
                    })
                    .unwrap_or(0)
            });
            let j = (0..p)
                .find(|&j| deviation(column, j).is_none_or(|d| d > eps))
                .unwrap_or(0);
            Ok(Verdict::Violation { column, j, expected: m.radians(j, column), got: profile[j] })
        }
    }
}

/// Find the unique column `k` with `Π_j = M_{jk} Π₀` for all `j`, checking
/// every column regardless of any claim.
pub fn verify_promise(inst: &PromiseInstance, eps: f64) -> Result<Verdict> {
    let profile = match &inst.gates {
        GateSet::Qudit(g) => phase_profile(g, &inst.perm_set, eps)?,
        GateSet::Weyl(g) => phase_profile(g, &inst.perm_set, eps)?,
    };
    match_columns(&inst.matrix, &profile, eps, inst.claimed_column)
}

/// Convenience wrapper around the builders: a complete instance for column `k`.
pub fn build_instance(m: &ChMatrix, k: usize, target: Target, cfg: &RunConfig) -> Result<PromiseInstance> {
    let perm_set = shift_permutations(m.p(), m.p())?;
    let gates = match target {
        Target::Qudit { dim } => GateSet::Qudit(build_qudit_gates(m, k, dim, cfg)?),
        Target::Cv { alpha } => GateSet::Weyl(build_cv_gates(m, k, alpha, None, &cfg.tolerances)?),
    };
    PromiseInstance::new(m.clone(), perm_set, gates, Some(k), cfg)
}

/// Minimal three-gate instance for column `k` of `F₄⁽¹⁾(a)`.
pub fn build_minimal_instance(a: f64, k: usize, free: MinimalFree, cfg: &RunConfig) -> Result<PromiseInstance> {
    let (gates, perms) = build_minimal_ch4(a, k, free, cfg.tolerances.eps_phase)?;
    PromiseInstance::new(f4_family(a)?, perms, GateSet::Weyl(gates), Some(k), cfg)
}

/// Target system for [`build_instance`].
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Target {
    Qudit { dim: Option<usize> },
    Cv { alpha: f64 },
}
