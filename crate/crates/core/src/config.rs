use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Numerical tolerances shared by every module.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Tolerances {
    /// Radians; phase equality and root-of-unity detection.
    pub eps_phase: f64,
    /// Scaled by `p` when checking row orthogonality; also the unitarity bound.
    pub eps_unitary: f64,
    /// A measurement is deterministic when its top probability is at least `1 − eps_det`.
    pub eps_det: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Tolerances { eps_phase: 1e-9, eps_unitary: 1e-9, eps_det: 1e-9 }
    }
}

impl Tolerances {
    pub fn validate(&self) -> Result<()> {
        for (name, v) in [
            ("eps_phase", self.eps_phase),
            ("eps_unitary", self.eps_unitary),
            ("eps_det", self.eps_det),
        ] {
            if !(v.is_finite() && v > 0.0) {
                return Err(Error::Domain(format!("{name} must be positive, got {v}")));
            }
        }
        Ok(())
    }
}

/// Everything a run depends on besides its inputs.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RunConfig {
    pub tolerances: Tolerances,
    /// Largest number of combinations an exhaustive census may enumerate;
    /// `None` means unlimited.
    pub census_budget: Option<u64>,
    /// Upper bound of the float Butson search.
    pub d_max: u64,
    /// Largest permutation length accepted by the exact SCS solver.
    pub n_max: usize,
    pub seed: u64,
}

pub const DEFAULT_CENSUS_BUDGET: u64 = 10_000;
pub const DEFAULT_D_MAX: u64 = 4096;
pub const DEFAULT_N_MAX: usize = 6;
pub const DEFAULT_SAMPLE_COUNT: u64 = 100_000;

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            tolerances: Tolerances::default(),
            census_budget: Some(DEFAULT_CENSUS_BUDGET),
            d_max: DEFAULT_D_MAX,
            n_max: DEFAULT_N_MAX,
            seed: 0,
        }
    }
}

impl RunConfig {
    pub fn validate(&self) -> Result<()> {
        self.tolerances.validate()?;
        if self.d_max == 0 {
            return Err(Error::Domain("d_max must be positive".into()));
        }
        if self.n_max == 0 {
            return Err(Error::Domain("n_max must be positive".into()));
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn defaults_are_valid() {
        assert!(RunConfig::default().validate().is_ok());
    }

    #[test]
    fn non_positive_tolerances_rejected() {
        let mut c = RunConfig::default();
        c.tolerances.eps_det = 0.0;
        assert!(c.validate().is_err());
        c.tolerances.eps_det = f64::NAN;
        assert!(c.validate().is_err());
    }
}
