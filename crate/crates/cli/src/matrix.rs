use std::path::PathBuf;

use chpp_core::chm::{
    classify_bh, dephase, f4_family, f4_family_exact, fourier, min_target_dimension, sylvester_hadamard,
    validate_ch, BhClass, ChMatrix,
};
use chpp_core::config::RunConfig;
use chpp_core::phase::{PhaseValue, Turn};
use clap::{Subcommand, ValueEnum};
use serde_json::json;

use crate::output::{read_json, usage, CliError, CliResult, Output};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Family {
    /// Fourier matrix of order `--d` (exact phases).
    Fourier,
    /// One-parameter CH(4) family; `--a` radians or `--a-turns NUM/DEN`.
    F4,
    /// Real Hadamard matrix of order 2^k (exact phases).
    Sylvester,
}

#[derive(Subcommand)]
pub enum MatrixCmd {
    /// Generate a matrix from one of the built-in families.
    Gen {
        #[arg(long, value_enum)]
        family: Family,
        /// Order of a Fourier matrix.
        #[arg(long)]
        d: Option<usize>,
        /// F4 parameter in radians, in [0, π).
        #[arg(long, allow_negative_numbers = true)]
        a: Option<f64>,
        /// F4 parameter as an exact fraction of a turn, in [0, 1/2).
        #[arg(long, value_name = "NUM/DEN", conflicts_with = "a")]
        a_turns: Option<String>,
        /// Sylvester exponent: order 2^k.
        #[arg(long)]
        k: Option<u32>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Check unimodularity and row orthogonality.
    Validate { file: PathBuf },
    /// Butson complexity: least d with every entry a d-th root of unity.
    Classify { file: PathBuf },
    /// Normalise the first row and column to ones.
    Dephase {
        file: PathBuf,
        /// Write the dephased matrix here (the factors are only printed).
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Smallest target dimension able to host a promise for this matrix.
    Mindim { file: PathBuf },
}

pub fn parse_turn(s: &str) -> Result<Turn, String> {
    let (num, den) = s.split_once('/').ok_or_else(|| format!("expected NUM/DEN, got `{s}`"))?;
    let num: i64 = num.trim().parse().map_err(|e| format!("`{num}`: {e}"))?;
    let den: i64 = den.trim().parse().map_err(|e| format!("`{den}`: {e}"))?;
    if den <= 0 {
        return Err(format!("denominator must be positive, got {den}"));
    }
    Ok(Turn::new(num, den))
}

pub fn generate(family: Family, d: Option<usize>, a: Option<f64>, a_turns: Option<&str>, k: Option<u32>) -> CliResult<ChMatrix> {
    let m = match family {
        Family::Fourier => fourier(d.unwrap_or_else(|| usage("--family fourier needs --d")))?,
        Family::F4 => match (a, a_turns) {
            (Some(a), _) => f4_family(a)?,
            (None, Some(t)) => f4_family_exact(parse_turn(t).unwrap_or_else(|e| usage(e)))?,
            (None, None) => usage("--family f4 needs --a or --a-turns"),
        },
        Family::Sylvester => sylvester_hadamard(k.unwrap_or_else(|| usage("--family sylvester needs --k")))?,
    };
    Ok(m)
}

fn radians(v: &[PhaseValue]) -> Vec<f64> {
    v.iter().map(PhaseValue::radians).collect()
}

pub fn run(cmd: MatrixCmd, cfg: &RunConfig, out: &Output) -> CliResult {
    let eps = cfg.tolerances.eps_phase;
    match cmd {
        MatrixCmd::Gen { family, d, a, a_turns, k, out: path } => {
            let m = generate(family, d, a, a_turns.as_deref(), k)?;
            out.json_to(&m, path.as_deref())
        }
        MatrixCmd::Validate { file } => {
            let m: ChMatrix = read_json(&file)?;
            let report = validate_ch(&m, cfg.tolerances.eps_unitary);
            out.json(&report);
            if report.ok {
                Ok(())
            } else {
                Err(CliError::new(
                    "not_hadamard",
                    format!("rows are not orthogonal: max deviation {}", report.max_row_pair_deviation),
                ))
            }
        }
        MatrixCmd::Classify { file } => {
            let m: ChMatrix = read_json(&file)?;
            match classify_bh(&m, cfg.d_max, eps) {
                BhClass::Butson { complexity } => out.json(&json!({ "butson": complexity })),
                BhClass::NotButson { row, col } => out.json(&json!({
                    "butson": null,
                    "d_max": cfg.d_max,
                    "witness": { "row": row, "col": col },
                })),
            }
            Ok(())
        }
        MatrixCmd::Dephase { file, out: path } => {
            let m: ChMatrix = read_json(&file)?;
            let dp = dephase(&m);
            if let Some(p) = path.as_deref() {
                out.json_to(&dp.matrix, Some(p))?;
            }
            out.json(&json!({
                "matrix": dp.matrix,
                "row_factors": radians(&dp.row_factors),
                "col_factors": radians(&dp.col_factors),
            }));
            Ok(())
        }
        MatrixCmd::Mindim { file } => {
            let m: ChMatrix = read_json(&file)?;
            let dim = min_target_dimension(&m, cfg.d_max, eps);
            out.json(&json!({ "min_dim": dim, "continuous_variable_only": dim.is_none() }));
            Ok(())
        }
    }
}
