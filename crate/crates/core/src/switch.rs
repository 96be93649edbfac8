//! The `(N, p)`-switch and the three-step column-identification protocol.
//!
//! Qudit targets are simulated as dense `p × D` joint amplitudes. Continuous
//! variable targets are tracked symbolically: each control branch carries an
//! amplitude and the Weyl operator applied so far to a fixed reference state.
//! Branches may only be recombined by a control unitary once they share the
//! same displacement, at which point the operator phases fold into the
//! amplitudes.

use num_complex::Complex64;
use rand::Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::chm::ChMatrix;
use crate::config::{RunConfig, Tolerances};
use crate::error::{Error, Result};
use crate::gate::{product_in_order, weyl_compose, GateSet, WeylOp};
use crate::promise::{build_instance, PermutationSet, Target};

/// Initial target state.
#[derive(Clone, Debug, PartialEq)]
pub enum TargetState {
    Qudit(Vec<Complex64>),
    /// Reference state of a continuous-variable mode; the protocol outcome
    /// does not depend on which one.
    Vacuum,
}

impl TargetState {
    /// `|0⟩` of a `dim`-level system.
    pub fn basis(dim: usize) -> Self {
        let mut v = vec![Complex64::new(0.0, 0.0); dim];
        v[0] = Complex64::new(1.0, 0.0);
        TargetState::Qudit(v)
    }
}

/// Control register amplitudes.
#[derive(Clone, Debug, PartialEq)]
pub struct ControlState(Vec<Complex64>);

impl ControlState {
    pub fn new(amplitudes: Vec<Complex64>, eps_norm: f64) -> Result<Self> {
        let n: f64 = amplitudes.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt();
        if amplitudes.is_empty() || (n - 1.0).abs() > eps_norm {
            return Err(Error::Domain(format!("control state has norm {n}")));
        }
        Ok(ControlState(amplitudes))
    }

    pub fn basis(p: usize, j: usize) -> Self {
        let mut v = vec![Complex64::new(0.0, 0.0); p];
        v[j] = Complex64::new(1.0, 0.0);
        ControlState(v)
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.0
    }
}

/// Control ⊗ target.
#[derive(Clone, Debug, PartialEq)]
pub enum JointState {
    /// Row-major `p × dim` amplitudes: row `j` is the target component on `|j⟩`.
    Qudit { dim: usize, amps: Vec<Complex64> },
    /// Branch `j` is `amplitude · W |ref⟩` on `|j⟩`.
    Cv { branches: Vec<(Complex64, WeylOp)> },
}

impl JointState {
    pub fn product(control: &ControlState, target: &TargetState) -> Self {
        match target {
            TargetState::Qudit(psi) => JointState::Qudit {
                dim: psi.len(),
                amps: control.0.iter().flat_map(|c| psi.iter().map(move |t| c * t)).collect(),
            },
            TargetState::Vacuum => JointState::Cv {
                branches: control.0.iter().map(|&c| (c, WeylOp::IDENTITY)).collect(),
            },
        }
    }

    /// Dimension of the control register.
    pub fn p(&self) -> usize {
        match self {
            JointState::Qudit { dim, amps } => amps.len() / dim,
            JointState::Cv { branches } => branches.len(),
        }
    }

    /// Joint 2-norm. For CV states this is the norm of the branch amplitudes,
    /// every Weyl operator being unitary.
    pub fn norm(&self) -> f64 {
        match self {
            JointState::Qudit { amps, .. } => amps.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt(),
            JointState::Cv { branches } => branches.iter().map(|(a, _)| a.norm_sqr()).sum::<f64>().sqrt(),
        }
    }

    /// Apply a `p × p` row-major unitary to the control register.
    pub fn apply_control(&self, u: &[Complex64], eps: f64) -> Result<JointState> {
        let p = self.p();
        if u.len() != p * p {
            return Err(Error::SizeMismatch(format!("{}-entry control unitary for p = {p}", u.len())));
        }
        Ok(match self {
            JointState::Qudit { dim, amps } => {
                let mut out = vec![Complex64::new(0.0, 0.0); amps.len()];
                for l in 0..p {
                    for j in 0..p {
                        let c = u[l * p + j];
                        for t in 0..*dim {
                            out[l * dim + t] += c * amps[j * dim + t];
                        }
                    }
                }
                JointState::Qudit { dim: *dim, amps: out }
            }
            JointState::Cv { branches } => {
                let reference = branches[0].1;
                if branches.iter().any(|(_, w)| !w.same_displacement(&reference, eps)) {
                    return Err(Error::IncoherentBranches);
                }
                let common = WeylOp::new(0.0, reference.beta, reference.gamma);
                let folded: Vec<Complex64> = branches
                    .iter()
                    .map(|(a, w)| a * Complex64::from_polar(1.0, w.theta))
                    .collect();
                JointState::Cv {
                    branches: (0..p)
                        .map(|l| ((0..p).map(|j| u[l * p + j] * folded[j]).sum(), common))
                        .collect(),
                }
            }
        })
    }

    /// Probability of each control outcome.
    pub fn control_distribution(&self) -> Vec<f64> {
        match self {
            JointState::Qudit { dim, amps } => {
                amps.chunks(*dim).map(|row| row.iter().map(|a| a.norm_sqr()).sum()).collect()
            }
            JointState::Cv { branches } => branches.iter().map(|(a, _)| a.norm_sqr()).collect(),
        }
    }
}

/// `S(|j⟩ ⊗ |ψ⟩) = |j⟩ ⊗ Π_j|ψ⟩`, extended linearly.
pub fn apply_switch(state: &JointState, gates: &GateSet, perm_set: &PermutationSet) -> Result<JointState> {
    let p = state.p();
    if perm_set.p() != p {
        return Err(Error::SizeMismatch(format!("{} orderings for a {p}-level control", perm_set.p())));
    }
    if gates.len() != perm_set.n() {
        return Err(Error::SizeMismatch(format!("{} gates for orderings over {}", gates.len(), perm_set.n())));
    }
    match (state, gates) {
        (JointState::Qudit { dim, amps }, GateSet::Qudit(g)) => {
            if g[0].dim() != *dim {
                return Err(Error::DimensionMismatch { expected: *dim, got: g[0].dim() });
            }
            let mut out = Vec::with_capacity(amps.len());
            for (j, perm) in perm_set.perms().iter().enumerate() {
                let pi = product_in_order(g, perm)?;
                out.extend(pi.apply(&amps[j * dim..(j + 1) * dim]));
            }
            Ok(JointState::Qudit { dim: *dim, amps: out })
        }
        (JointState::Cv { branches }, GateSet::Weyl(g)) => {
            let out = branches
                .iter()
                .zip(perm_set.perms())
                .map(|(&(a, w), perm)| Ok((a, weyl_compose(&product_in_order(g, perm)?, &w))))
                .collect::<Result<_>>()?;
            Ok(JointState::Cv { branches: out })
        }
        (s, g) => Err(Error::KindMismatch(format!(
            "{} gates on a {} target",
            g.kind(),
            match s {
                JointState::Qudit { .. } => "qudit",
                JointState::Cv { .. } => "continuous-variable",
            }
        ))),
    }
}

/// Control measurement statistics.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SwitchOutcome {
    pub distribution: Vec<f64>,
    pub argmax: usize,
    pub deterministic: bool,
}

impl SwitchOutcome {
    pub fn from_distribution(distribution: Vec<f64>, eps_det: f64) -> Self {
        let argmax = distribution
            .iter()
            .enumerate()
            .max_by(|a, b| a.1.total_cmp(b.1))
            .map_or(0, |(i, _)| i);
        let deterministic = distribution[argmax] >= 1.0 - eps_det;
        SwitchOutcome { distribution, argmax, deterministic }
    }

    /// Draw `shots` measurement results.
    pub fn sample<R: Rng + ?Sized>(&self, shots: usize, rng: &mut R) -> Vec<usize> {
        let total: f64 = self.distribution.iter().sum();
        (0..shots)
            .map(|_| {
                let mut r = rng.random::<f64>() * total;
                for (i, &w) in self.distribution.iter().enumerate() {
                    if r < w {
                        return i;
                    }
                    r -= w;
                }
                self.argmax
            })
            .collect()
    }
}

/// States after each protocol step: initial `|0⟩⊗ψ`, after `M/√p`, after
/// the switch, after `M†/√p`.
#[derive(Clone, Debug)]
pub struct ProtocolTrace {
    pub stages: Vec<JointState>,
    pub outcome: SwitchOutcome,
}

fn scaled_control(m: &ChMatrix, adjoint: bool) -> Vec<Complex64> {
    let p = m.p();
    let s = 1.0 / (p as f64).sqrt();
    let mut u = vec![Complex64::new(0.0, 0.0); p * p];
    for l in 0..p {
        for j in 0..p {
            u[l * p + j] = if adjoint { m.entry(j, l).conj() * s } else { m.entry(l, j) * s };
        }
    }
    u
}

pub fn trace_protocol(
    m: &ChMatrix,
    perm_set: &PermutationSet,
    gates: &GateSet,
    psi: &TargetState,
    tol: &Tolerances,
) -> Result<ProtocolTrace> {
    if !m.is_dephased(tol.eps_phase) {
        return Err(Error::NotDephased);
    }
    if m.p() != perm_set.p() {
        return Err(Error::SizeMismatch(format!("matrix order {} but {} orderings", m.p(), perm_set.p())));
    }
    if let TargetState::Qudit(v) = psi {
        let n = v.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt();
        if v.is_empty() || (n - 1.0).abs() > tol.eps_unitary {
            return Err(Error::Domain(format!("target state has norm {n}")));
        }
    }
    let initial = JointState::product(&ControlState::basis(m.p(), 0), psi);
    let prepared = initial.apply_control(&scaled_control(m, false), tol.eps_phase)?;
    let switched = apply_switch(&prepared, gates, perm_set)?;
    let decoded = switched.apply_control(&scaled_control(m, true), tol.eps_phase)?;
    let outcome = SwitchOutcome::from_distribution(decoded.control_distribution(), tol.eps_det);
    Ok(ProtocolTrace { stages: vec![initial, prepared, switched, decoded], outcome })
}

/// `(M†/√p ⊗ I) · S · (M/√p ⊗ I)` on `|0⟩ ⊗ ψ`, then measure the control.
pub fn run_protocol(
    m: &ChMatrix,
    perm_set: &PermutationSet,
    gates: &GateSet,
    psi: &TargetState,
    tol: &Tolerances,
) -> Result<SwitchOutcome> {
    Ok(trace_protocol(m, perm_set, gates, psi, tol)?.outcome)
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ColumnReport {
    pub column: usize,
    pub argmax: usize,
    pub probability: f64,
    /// `1 − P(column)`.
    pub deviation: f64,
    pub deterministic: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SweepReport {
    pub columns: Vec<ColumnReport>,
    pub worst_deviation: f64,
    pub all_recovered: bool,
}

/// Build gates for every column with the given target, run the protocol,
/// and check the column comes back deterministically.
pub fn sweep_columns(m: &ChMatrix, target: Target, cfg: &RunConfig) -> Result<SweepReport> {
    let columns = (0..m.p())
        .into_par_iter()
        .map(|k| {
            let inst = build_instance(m, k, target, cfg)?;
            let state = match inst.gates() {
                GateSet::Qudit(g) => TargetState::basis(g[0].dim()),
                GateSet::Weyl(_) => TargetState::Vacuum,
            };
            let out = run_protocol(m, inst.perm_set(), inst.gates(), &state, &cfg.tolerances)?;
            let probability = out.distribution[k];
            Ok(ColumnReport {
                column: k,
                argmax: out.argmax,
                probability,
                deviation: 1.0 - probability,
                deterministic: out.deterministic,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let worst_deviation = columns.iter().map(|c| c.deviation).fold(0.0, f64::max);
    let all_recovered = columns.iter().all(|c| c.argmax == c.column && c.deterministic);
    Ok(SweepReport { columns, worst_deviation, all_recovered })
}
