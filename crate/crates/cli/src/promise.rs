use std::path::{Path, PathBuf};

use chpp_core::chm::ChMatrix;
use chpp_core::config::RunConfig;
use chpp_core::gate::GateSet;
use chpp_core::promise::{
    build_cv_gates, build_instance, build_minimal_instance, shift_permutations, verify_promise,
    InstanceFile, MinimalFree, PromiseInstance, Target, Verdict,
};
use clap::{Subcommand, ValueEnum};

use crate::output::{read_json, usage, CliError, CliResult, Output};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum TargetKind {
    /// Generalised Pauli gates on a qudit.
    Qudit,
    /// Heisenberg-Weyl displacements on a continuous-variable mode.
    Cv,
    /// The three-gate CH(4) construction (needs `--a`, no matrix).
    Minimal,
}

#[derive(Subcommand)]
pub enum PromiseCmd {
    /// Build gates satisfying the promise for one column.
    Build {
        /// Dephased matrix file (not used with `--target minimal`).
        #[arg(long)]
        matrix: Option<PathBuf>,
        #[arg(long)]
        column: usize,
        #[arg(long, value_enum)]
        target: TargetKind,
        /// Qudit dimension; a multiple of the Butson complexity (default: the complexity).
        #[arg(long)]
        dim: Option<usize>,
        /// Translation length of the CV shift gate.
        #[arg(long, default_value_t = 1.0, allow_negative_numbers = true)]
        alpha: f64,
        /// Comma-separated momentum components of the CV phase gates (default all zero).
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        gammas: Option<Vec<f64>>,
        /// F4 parameter in radians for `--target minimal`.
        #[arg(long)]
        a: Option<f64>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Find the column the gates of an instance satisfy.
    Verify {
        #[arg(long)]
        instance: PathBuf,
    },
}

pub fn load_instance(path: &Path, cfg: &RunConfig) -> CliResult<PromiseInstance> {
    let file: InstanceFile = read_json(path)?;
    let base = path.parent().unwrap_or(Path::new("."));
    Ok(PromiseInstance::from_file(file, base, cfg)?)
}

pub fn run(cmd: PromiseCmd, cfg: &RunConfig, out: &Output) -> CliResult {
    match cmd {
        PromiseCmd::Build { matrix, column, target, dim, alpha, gammas, a, out: path } => {
            let inst = match target {
                TargetKind::Minimal => {
                    let a = a.unwrap_or_else(|| usage("--target minimal needs --a"));
                    build_minimal_instance(a, column, MinimalFree::default(), cfg)?
                }
                TargetKind::Qudit | TargetKind::Cv => {
                    let path = matrix.unwrap_or_else(|| usage("--target qudit|cv needs --matrix"));
                    let m: ChMatrix = read_json(&path)?;
                    match (target, gammas) {
                        (TargetKind::Cv, Some(g)) => {
                            let gates = build_cv_gates(&m, column, alpha, Some(&g), &cfg.tolerances)?;
                            let perms = shift_permutations(m.p(), m.p())?;
                            PromiseInstance::new(m, perms, GateSet::Weyl(gates), Some(column), cfg)?
                        }
                        (TargetKind::Cv, None) => build_instance(&m, column, Target::Cv { alpha }, cfg)?,
                        _ => build_instance(&m, column, Target::Qudit { dim }, cfg)?,
                    }
                }
            };
            out.json_to(&inst.to_file(), path.as_deref())
        }
        PromiseCmd::Verify { instance } => {
            let inst = load_instance(&instance, cfg)?;
            let verdict = verify_promise(&inst, cfg.tolerances.eps_phase)?;
            out.json(&verdict);
            match verdict {
                Verdict::Column(_) => Ok(()),
                Verdict::Violation { column, j, .. } => Err(CliError::new(
                    "promise_violated",
                    format!("no column matches; closest is {column}, first mismatch at ordering {j}"),
                )),
            }
        }
    }
}
