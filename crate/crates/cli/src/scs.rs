use std::fs::File;
use std::io::BufWriter;
use std::path::{Path, PathBuf};

use chpp_core::config::{RunConfig, DEFAULT_SAMPLE_COUNT};
use chpp_core::gate::Permutation;
use chpp_core::scs::{census, census_sweep, qpg, scs_exact, write_csv, CensusMode, CensusRow, SweepPolicy};
use clap::Subcommand;
use serde_json::json;

use crate::output::{CliError, CliResult, Output};

#[derive(Subcommand)]
pub enum ScsCmd {
    /// Exact shortest common supersequence of a set of orderings.
    Solve {
        /// Orderings in application order, e.g. `012,102,120`; use `;` between
        /// orderings written with commas (`0,1,10;10,1,0`).
        #[arg(long)]
        perms: String,
        /// Include a shortest supersequence (application order).
        #[arg(long)]
        witness: bool,
    },
    /// SCS statistics over p-subsets of S_N containing the identity.
    Census {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        p: usize,
        /// Draw this many random subsets (seeded by `--seed`) instead of enumerating.
        #[arg(long, value_name = "COUNT")]
        sample: Option<u64>,
        /// Also write the row as CSV.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// One census row per p; exhaustive within `--budget`, sampled beyond it.
    Sweep {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 2)]
        p_min: usize,
        /// Defaults to N!.
        #[arg(long)]
        p_max: Option<usize>,
        /// Draws per sampled row; row p uses seed `--seed` + p.
        #[arg(long, default_value_t = DEFAULT_SAMPLE_COUNT)]
        samples: u64,
        /// Also write the rows as CSV.
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn parse_perms(s: &str) -> CliResult<Vec<Permutation>> {
    let sep = if s.contains(';') { ';' } else { ',' };
    s.split(sep)
        .map(|t| t.trim().parse::<Permutation>().map_err(CliError::from))
        .collect()
}

fn csv_to(rows: &[CensusRow], path: &Path) -> CliResult {
    let file = File::create(path).map_err(|e| CliError::new("io_error", format!("{}: {e}", path.display())))?;
    Ok(write_csv(rows, BufWriter::new(file))?)
}

pub fn run(cmd: ScsCmd, cfg: &RunConfig, out: &Output) -> CliResult {
    match cmd {
        ScsCmd::Solve { perms, witness } => {
            let set = parse_perms(&perms)?;
            let r = scs_exact(&set, cfg.n_max)?;
            let n = set[0].len();
            let mut v = json!({ "N": n, "length": r.length, "qpg": qpg(r.length, n) });
            if witness {
                v["witness"] = json!(r.witness);
            }
            out.json(&v);
            Ok(())
        }
        ScsCmd::Census { n, p, sample, out: path } => {
            let mode = match sample {
                Some(count) => CensusMode::Sample { count, seed: cfg.seed },
                None => CensusMode::Exhaustive,
            };
            let row = census(n, p, mode, cfg)?;
            if let Some(path) = path {
                csv_to(std::slice::from_ref(&row), &path)?;
            }
            out.json(&row);
            Ok(())
        }
        ScsCmd::Sweep { n, p_min, p_max, samples, out: path } => {
            let p_max = match p_max {
                Some(p) => p,
                None => (1..=n.min(cfg.n_max)).product(),
            };
            let policy = SweepPolicy { p_min, p_max, sample_count: samples, seed: cfg.seed };
            let rows = census_sweep(n, &policy, cfg)?;
            if let Some(path) = path {
                csv_to(&rows, &path)?;
            }
            out.json(&rows);
            Ok(())
        }
    }
}
