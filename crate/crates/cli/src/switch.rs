use std::f64::consts::PI;
use std::path::PathBuf;

use chpp_core::chm::{f4_family, fourier, sylvester_hadamard, ChMatrix};
use chpp_core::config::RunConfig;
use chpp_core::gate::{random_state, GateSet};
use chpp_core::promise::Target;
use chpp_core::switch::{run_protocol, sweep_columns, SweepReport, TargetState};
use clap::Subcommand;
use num_complex::Complex64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::json;

use crate::matrix::Family;
use crate::output::{read_json, CliError, CliResult, Output};
use crate::promise::{load_instance, TargetKind};

#[derive(Subcommand)]
pub enum SwitchCmd {
    /// Run the protocol on an instance and report the control distribution.
    Run {
        #[arg(long)]
        instance: PathBuf,
        /// Qudit target state: JSON list of `[re, im]` amplitudes (default |0⟩).
        #[arg(long, conflicts_with = "random_psi")]
        psi: Option<PathBuf>,
        /// Use a random normalised target state drawn from this seed.
        #[arg(long, value_name = "SEED")]
        random_psi: Option<u64>,
        /// Also draw this many measurement results (seeded by `--seed`).
        #[arg(long)]
        shots: Option<usize>,
    },
    /// Build gates for every column of a family of matrices and check recovery.
    Sweep {
        #[arg(long, value_enum)]
        family: Family,
        #[arg(long, value_enum, default_value = "qudit")]
        target: TargetKind,
        /// Smallest Fourier order.
        #[arg(long, default_value_t = 2)]
        dmin: usize,
        /// Largest Fourier order.
        #[arg(long, default_value_t = 6)]
        dmax: usize,
        /// Comma-separated F4 parameters in radians (default 0, π/7, π/3, π/2).
        #[arg(long, value_delimiter = ',')]
        a: Option<Vec<f64>>,
        /// Comma-separated Sylvester exponents (default 1,2,3).
        #[arg(long, value_delimiter = ',')]
        k: Option<Vec<u32>>,
        /// Translation length of the CV shift gate.
        #[arg(long, default_value_t = 1.0, allow_negative_numbers = true)]
        alpha: f64,
    },
}

#[derive(Serialize)]
struct SweepEntry {
    matrix: String,
    #[serde(flatten)]
    report: SweepReport,
}

fn sweep_matrices(family: Family, dmin: usize, dmax: usize, a: Option<Vec<f64>>, k: Option<Vec<u32>>) -> CliResult<Vec<(String, ChMatrix)>> {
    let v = match family {
        Family::Fourier => {
            (dmin.max(2)..=dmax).map(|d| Ok((format!("fourier({d})"), fourier(d)?))).collect::<Result<_, chpp_core::Error>>()?
        }
        Family::F4 => a
            .unwrap_or_else(|| vec![0.0, PI / 7.0, PI / 3.0, PI / 2.0])
            .into_iter()
            .map(|a| Ok((format!("f4({a})"), f4_family(a)?)))
            .collect::<Result<_, chpp_core::Error>>()?,
        Family::Sylvester => k
            .unwrap_or_else(|| vec![1, 2, 3])
            .into_iter()
            .map(|k| Ok((format!("sylvester({k})"), sylvester_hadamard(k)?)))
            .collect::<Result<_, chpp_core::Error>>()?,
    };
    Ok(v)
}

pub fn run(cmd: SwitchCmd, cfg: &RunConfig, out: &Output) -> CliResult {
    match cmd {
        SwitchCmd::Run { instance, psi, random_psi, shots } => {
            let inst = load_instance(&instance, cfg)?;
            let state = match inst.gates() {
                GateSet::Weyl(_) => {
                    if psi.is_some() || random_psi.is_some() {
                        return Err(CliError::new(
                            "kind_mismatch",
                            "continuous-variable instances take no --psi: the outcome does not depend on it",
                        ));
                    }
                    TargetState::Vacuum
                }
                GateSet::Qudit(g) => {
                    let dim = g[0].dim();
                    match (psi, random_psi) {
                        (Some(path), _) => {
                            let amps: Vec<Complex64> = read_json(&path)?;
                            TargetState::Qudit(amps)
                        }
                        (None, Some(seed)) => {
                            TargetState::Qudit(random_state(dim, &mut ChaCha8Rng::seed_from_u64(seed)))
                        }
                        (None, None) => TargetState::basis(dim),
                    }
                }
            };
            let outcome = run_protocol(inst.matrix(), inst.perm_set(), inst.gates(), &state, &cfg.tolerances)?;
            match shots {
                Some(n) => {
                    let samples = outcome.sample(n, &mut ChaCha8Rng::seed_from_u64(cfg.seed));
                    out.json(&json!({
                        "distribution": outcome.distribution,
                        "argmax": outcome.argmax,
                        "deterministic": outcome.deterministic,
                        "samples": samples,
                    }));
                }
                None => out.json(&outcome),
            }
            Ok(())
        }
        SwitchCmd::Sweep { family, target, dmin, dmax, a, k, alpha } => {
            let target = match target {
                TargetKind::Qudit => Target::Qudit { dim: None },
                TargetKind::Cv => Target::Cv { alpha },
                TargetKind::Minimal => {
                    return Err(CliError::new("domain_error", "sweeps use --target qudit or cv"))
                }
            };
            let entries = sweep_matrices(family, dmin, dmax, a, k)?
                .into_iter()
                .map(|(name, m)| Ok(SweepEntry { matrix: name, report: sweep_columns(&m, target, cfg)? }))
                .collect::<CliResult<Vec<_>>>()?;
            out.json(&entries);
            Ok(())
        }
    }
}
