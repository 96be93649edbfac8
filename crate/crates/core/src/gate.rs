//! Gate algebra for the two target families: dense qudit unitaries (with the
//! generalized Pauli shift and clock) and continuous-variable Heisenberg-Weyl
//! displacements kept in normal form.

use std::f64::consts::TAU;
use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;
use rand::Rng;
use rand_distr::StandardNormal;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::phase::{circular_distance, wrap_radians};

/// Operator product. `a.compose(b)` is `a · b`: `b` acts first.
pub trait Gate: Clone {
    fn compose(&self, rhs: &Self) -> Self;

    /// Phase `c` with `self = e^{ic} · other`, if the two are proportional within `eps`.
    fn phase_ratio(&self, other: &Self, eps: f64) -> Option<f64>;

    /// Error unless all gates can be multiplied together.
    fn check_homogeneous(gates: &[Self]) -> Result<()>;
}

/// A dense `D × D` complex matrix acting on a qudit, row-major.
#[derive(Clone, Debug, PartialEq)]
pub struct QuditGate {
    dim: usize,
    entries: Vec<Complex64>,
}

impl QuditGate {
    pub fn new(dim: usize, entries: Vec<Complex64>) -> Result<Self> {
        if dim == 0 || entries.len() != dim * dim {
            return Err(Error::SizeMismatch(format!(
                "{} entries for a {dim}x{dim} gate",
                entries.len()
            )));
        }
        Ok(QuditGate { dim, entries })
    }

    pub fn identity(dim: usize) -> Self {
        let mut entries = vec![Complex64::new(0.0, 0.0); dim * dim];
        for i in 0..dim {
            entries[i * dim + i] = Complex64::new(1.0, 0.0);
        }
        QuditGate { dim, entries }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn entries(&self) -> &[Complex64] {
        &self.entries
    }

    pub fn get(&self, row: usize, col: usize) -> Complex64 {
        self.entries[row * self.dim + col]
    }

    pub fn adjoint(&self) -> Self {
        let d = self.dim;
        let mut entries = vec![Complex64::new(0.0, 0.0); d * d];
        for r in 0..d {
            for c in 0..d {
                entries[c * d + r] = self.entries[r * d + c].conj();
            }
        }
        QuditGate { dim: d, entries }
    }

    pub fn scale(&self, z: Complex64) -> Self {
        QuditGate { dim: self.dim, entries: self.entries.iter().map(|e| e * z).collect() }
    }

    /// Matrix power; negative exponents use the adjoint (the gate is assumed unitary).
    pub fn pow(&self, k: i64) -> Self {
        let base = if k < 0 { self.adjoint() } else { self.clone() };
        (0..k.unsigned_abs()).fold(QuditGate::identity(self.dim), |acc, _| acc.compose(&base))
    }

    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        self.entries
            .iter()
            .zip(&other.entries)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    /// `‖U†U − I‖_max ≤ eps`.
    pub fn is_unitary(&self, eps: f64) -> bool {
        self.adjoint().compose(self).max_abs_diff(&QuditGate::identity(self.dim)) <= eps
    }

    pub fn apply(&self, v: &[Complex64]) -> Vec<Complex64> {
        assert_eq!(v.len(), self.dim);
        self.entries
            .chunks(self.dim)
            .map(|row| row.iter().zip(v).map(|(a, b)| a * b).sum())
            .collect()
    }

    /// `V · self · V†`.
    pub fn conjugate_by(&self, v: &QuditGate) -> Result<Self> {
        if v.dim != self.dim {
            return Err(Error::DimensionMismatch { expected: self.dim, got: v.dim });
        }
        Ok(v.compose(self).compose(&v.adjoint()))
    }
}

impl Gate for QuditGate {
    fn compose(&self, rhs: &Self) -> Self {
        assert_eq!(self.dim, rhs.dim, "qudit dimension mismatch");
        let d = self.dim;
        let mut entries = vec![Complex64::new(0.0, 0.0); d * d];
        for r in 0..d {
            for k in 0..d {
                let a = self.entries[r * d + k];
                if a == Complex64::new(0.0, 0.0) {
                    continue;
                }
                for c in 0..d {
                    entries[r * d + c] += a * rhs.entries[k * d + c];
                }
            }
        }
        QuditGate { dim: d, entries }
    }

    /// Least-squares scalar `c = ⟨other, self⟩ / ⟨other, other⟩`, accepted when
    /// `|c| ≈ 1` and `‖self − c·other‖_max ≤ eps`.
    fn phase_ratio(&self, other: &Self, eps: f64) -> Option<f64> {
        if self.dim != other.dim {
            return None;
        }
        let inner: Complex64 = other.entries.iter().zip(&self.entries).map(|(b, a)| b.conj() * a).sum();
        let norm: f64 = other.entries.iter().map(|b| b.norm_sqr()).sum();
        if norm == 0.0 {
            return None;
        }
        let c = inner / norm;
        if (c.norm() - 1.0).abs() > eps {
            return None;
        }
        let c = c / c.norm();
        (self.max_abs_diff(&other.scale(c)) <= eps).then(|| wrap_radians(c.arg()))
    }

    fn check_homogeneous(gates: &[Self]) -> Result<()> {
        if let Some(first) = gates.first() {
            if let Some(g) = gates.iter().find(|g| g.dim != first.dim) {
                return Err(Error::DimensionMismatch { expected: first.dim, got: g.dim });
            }
        }
        Ok(())
    }
}

fn check_pauli_dim(dim: usize) -> Result<()> {
    if dim < 2 {
        return Err(Error::Domain(format!("generalized Pauli needs D >= 2, got {dim}")));
    }
    Ok(())
}

/// Shift `X|j⟩ = |j ⊕ 1⟩`.
pub fn pauli_x(dim: usize) -> Result<QuditGate> {
    check_pauli_dim(dim)?;
    let mut entries = vec![Complex64::new(0.0, 0.0); dim * dim];
    for j in 0..dim {
        entries[((j + 1) % dim) * dim + j] = Complex64::new(1.0, 0.0);
    }
    Ok(QuditGate { dim, entries })
}

/// Clock `Z|j⟩ = ω_D^j |j⟩`.
pub fn pauli_z(dim: usize) -> Result<QuditGate> {
    pauli_z_power(dim, 1)
}

/// `Z^q`, built directly from `ω_D^{jq}` so the phases are exact up to one rounding.
pub fn pauli_z_power(dim: usize, q: i64) -> Result<QuditGate> {
    check_pauli_dim(dim)?;
    let mut entries = vec![Complex64::new(0.0, 0.0); dim * dim];
    for j in 0..dim {
        let e = (j as i64 * q).rem_euclid(dim as i64);
        entries[j * dim + j] = Complex64::from_polar(1.0, TAU * e as f64 / dim as f64);
    }
    Ok(QuditGate { dim, entries })
}

/// `X^k`, a cyclic shift by `k` (negative `k` shifts backwards).
pub fn pauli_x_power(dim: usize, k: i64) -> Result<QuditGate> {
    check_pauli_dim(dim)?;
    let mut entries = vec![Complex64::new(0.0, 0.0); dim * dim];
    for j in 0..dim {
        let to = (j as i64 + k).rem_euclid(dim as i64) as usize;
        entries[to * dim + j] = Complex64::new(1.0, 0.0);
    }
    Ok(QuditGate { dim, entries })
}

/// Haar-random unitary: Gram-Schmidt on a complex Ginibre matrix.
pub fn random_unitary<R: Rng + ?Sized>(dim: usize, rng: &mut R) -> QuditGate {
    let mut cols: Vec<Vec<Complex64>> = Vec::with_capacity(dim);
    while cols.len() < dim {
        let mut v: Vec<Complex64> = (0..dim)
            .map(|_| Complex64::new(rng.sample(StandardNormal), rng.sample(StandardNormal)))
            .collect();
        for u in &cols {
            let proj: Complex64 = u.iter().zip(&v).map(|(a, b)| a.conj() * b).sum();
            v.iter_mut().zip(u).for_each(|(x, a)| *x -= proj * a);
        }
        let n = v.iter().map(|x| x.norm_sqr()).sum::<f64>().sqrt();
        if n > 1e-8 {
            cols.push(v.into_iter().map(|x| x / n).collect());
        }
    }
    let mut entries = vec![Complex64::new(0.0, 0.0); dim * dim];
    for (c, col) in cols.iter().enumerate() {
        for (r, x) in col.iter().enumerate() {
            entries[r * dim + c] = *x;
        }
    }
    QuditGate { dim, entries }
}

/// Uniformly random pure state.
pub fn random_state<R: Rng + ?Sized>(dim: usize, rng: &mut R) -> Vec<Complex64> {
    let v: Vec<Complex64> = (0..dim)
        .map(|_| Complex64::new(rng.sample(StandardNormal), rng.sample(StandardNormal)))
        .collect();
    let n = v.iter().map(|x| x.norm_sqr()).sum::<f64>().sqrt();
    v.into_iter().map(|x| x / n).collect()
}

/// `e^{iθ} · e^{i(β x̂ + γ p̂)}` in normal form.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct WeylOp {
    pub theta: f64,
    pub beta: f64,
    pub gamma: f64,
}

impl WeylOp {
    pub const IDENTITY: WeylOp = WeylOp { theta: 0.0, beta: 0.0, gamma: 0.0 };

    pub fn new(theta: f64, beta: f64, gamma: f64) -> Self {
        WeylOp { theta: wrap_radians(theta), beta, gamma }
    }

    pub fn inverse(&self) -> Self {
        WeylOp::new(-self.theta, -self.beta, -self.gamma)
    }

    /// Same displacement `(β, γ)` within `eps`.
    pub fn same_displacement(&self, other: &WeylOp, eps: f64) -> bool {
        (self.beta - other.beta).abs() <= eps && (self.gamma - other.gamma).abs() <= eps
    }
}

/// Position translation `X_α = e^{−iα p̂}`.
pub fn weyl_x(alpha: f64) -> WeylOp {
    WeylOp::new(0.0, 0.0, -alpha)
}

/// `Z_{βγ} = e^{i(β x̂ + γ p̂)}`.
pub fn weyl_z(beta: f64, gamma: f64) -> WeylOp {
    WeylOp::new(0.0, beta, gamma)
}

/// Product in the Heisenberg group, from `[x̂, p̂] = i`:
/// `e^{i(β₁x̂+γ₁p̂)} e^{i(β₂x̂+γ₂p̂)} = e^{i(γ₁β₂−β₁γ₂)/2} e^{i((β₁+β₂)x̂+(γ₁+γ₂)p̂)}`.
pub fn weyl_compose(a: &WeylOp, b: &WeylOp) -> WeylOp {
    WeylOp::new(
        a.theta + b.theta + 0.5 * (a.gamma * b.beta - a.beta * b.gamma),
        a.beta + b.beta,
        a.gamma + b.gamma,
    )
}

impl Gate for WeylOp {
    fn compose(&self, rhs: &Self) -> Self {
        weyl_compose(self, rhs)
    }

    fn phase_ratio(&self, other: &Self, eps: f64) -> Option<f64> {
        self.same_displacement(other, eps)
            .then(|| wrap_radians(self.theta - other.theta))
    }

    fn check_homogeneous(_: &[Self]) -> Result<()> {
        Ok(())
    }
}

/// Free-function form of [`Gate::phase_ratio`].
pub fn phase_ratio<G: Gate>(a: &G, b: &G, eps: f64) -> Option<f64> {
    a.phase_ratio(b, eps)
}

/// A gate ordering in application order: `order[0]` acts first.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<usize>", into = "Vec<usize>")]
pub struct Permutation(Vec<usize>);

impl Permutation {
    pub fn new(order: Vec<usize>) -> Result<Self> {
        let n = order.len();
        let mut seen = vec![false; n];
        for &i in &order {
            if i >= n || std::mem::replace(&mut seen[i], true) {
                return Err(Error::InvalidPermutation(format!(
                    "{order:?} is not a permutation of 0..{n}"
                )));
            }
        }
        Ok(Permutation(order))
    }

    /// `[0, 1, …, n−1]`, i.e. `Π₀ = U_{n−1}…U₁U₀`.
    pub fn identity(n: usize) -> Self {
        Permutation((0..n).collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_identity(&self) -> bool {
        self.0.iter().enumerate().all(|(i, &g)| i == g)
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.0
    }

    /// All permutations of `0..n` in lexicographic order (identity first).
    pub fn all(n: usize) -> Vec<Permutation> {
        use itertools::Itertools;
        (0..n).permutations(n).map(Permutation).collect()
    }
}

impl TryFrom<Vec<usize>> for Permutation {
    type Error = Error;

    fn try_from(v: Vec<usize>) -> Result<Self> {
        Permutation::new(v)
    }
}

impl From<Permutation> for Vec<usize> {
    fn from(p: Permutation) -> Self {
        p.0
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.0)
    }
}

/// Digits in application order (`"102"`) for `n ≤ 10`, comma-separated otherwise.
impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.len() <= 10 {
            self.0.iter().try_for_each(|i| write!(f, "{i}"))
        } else {
            let s: Vec<String> = self.0.iter().map(|i| i.to_string()).collect();
            f.write_str(&s.join(","))
        }
    }
}

impl FromStr for Permutation {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let order: Result<Vec<usize>> = if s.contains(',') {
            s.split(',')
                .map(|t| t.trim().parse().map_err(|_| Error::Parse(format!("bad gate index {t:?}"))))
                .collect()
        } else {
            s.chars()
                .map(|c| {
                    c.to_digit(10)
                        .map(|d| d as usize)
                        .ok_or_else(|| Error::Parse(format!("bad gate index {c:?} in {s:?}")))
                })
                .collect()
        };
        Permutation::new(order?)
    }
}

/// `U_{perm[N−1]} · … · U_{perm[1]} · U_{perm[0]}`.
pub fn product_in_order<G: Gate>(gates: &[G], perm: &Permutation) -> Result<G> {
    if gates.len() != perm.len() || gates.is_empty() {
        return Err(Error::SizeMismatch(format!(
            "{} gates for a permutation of length {}",
            gates.len(),
            perm.len()
        )));
    }
    G::check_homogeneous(gates)?;
    let order = perm.as_slice();
    Ok(order[1..]
        .iter()
        .fold(gates[order[0]].clone(), |acc, &g| gates[g].compose(&acc)))
}

/// A homogeneous gate set, as stored in instance files.
#[derive(Clone, Debug, PartialEq)]
pub enum GateSet {
    Qudit(Vec<QuditGate>),
    Weyl(Vec<WeylOp>),
}

impl GateSet {
    pub fn len(&self) -> usize {
        match self {
            GateSet::Qudit(g) => g.len(),
            GateSet::Weyl(g) => g.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn kind(&self) -> &'static str {
        match self {
            GateSet::Qudit(_) => "qudit",
            GateSet::Weyl(_) => "weyl",
        }
    }
}

#[derive(Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
enum GateSetJson {
    Qudit { dim: usize, gates: Vec<Vec<[f64; 2]>> },
    Weyl { gates: Vec<WeylOp> },
}

impl Serialize for GateSet {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let raw = match self {
            GateSet::Qudit(g) => GateSetJson::Qudit {
                dim: g.first().map_or(0, |u| u.dim),
                gates: g
                    .iter()
                    .map(|u| u.entries.iter().map(|z| [z.re, z.im]).collect())
                    .collect(),
            },
            GateSet::Weyl(g) => GateSetJson::Weyl { gates: g.clone() },
        };
        raw.serialize(s)
    }
}

impl<'de> Deserialize<'de> for GateSet {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        Ok(match GateSetJson::deserialize(d)? {
            GateSetJson::Qudit { dim, gates } => GateSet::Qudit(
                gates
                    .into_iter()
                    .map(|g| {
                        QuditGate::new(dim, g.into_iter().map(|[re, im]| Complex64::new(re, im)).collect())
                    })
                    .collect::<Result<_>>()
                    .map_err(D::Error::custom)?,
            ),
            GateSetJson::Weyl { gates } => {
                GateSet::Weyl(gates.into_iter().map(|g| WeylOp::new(g.theta, g.beta, g.gamma)).collect())
            }
        })
    }
}

/// Approximate equality of angles, for callers comparing phase ratios.
pub fn phases_close(a: f64, b: f64, eps: f64) -> bool {
    circular_distance(a, b) <= eps
}
