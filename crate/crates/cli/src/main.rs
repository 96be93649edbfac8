//! `chpp`: command-line front end for complex Hadamard promise problems.
//!
//! Results go to stdout as JSON (CSV for census tables); failures go to
//! stderr as `{"error": {"code", "message"}}` with exit status 1. Usage errors
//! exit with status 2.

mod matrix;
mod output;
mod promise;
mod scs;
mod switch;

use std::process::ExitCode;

use chpp_core::config::{RunConfig, Tolerances, DEFAULT_CENSUS_BUDGET, DEFAULT_D_MAX, DEFAULT_N_MAX};
use clap::{Args, Parser, Subcommand};

use output::{CliError, Output};

#[derive(Parser)]
#[command(name = "chpp", version, about = "Complex Hadamard promise problems and the quantum switch")]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Global {
    /// Phase tolerance in radians.
    #[arg(long, global = true, default_value_t = 1e-9)]
    eps_phase: f64,
    /// Orthogonality / unitarity tolerance.
    #[arg(long, global = true, default_value_t = 1e-9)]
    eps_unitary: f64,
    /// A measurement counts as deterministic at probability ≥ 1 − eps-det.
    #[arg(long, global = true, default_value_t = 1e-9)]
    eps_det: f64,
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Largest exhaustive census, in combinations, or `unlimited`.
    #[arg(long, global = true, default_value_t = Budget(Some(DEFAULT_CENSUS_BUDGET)))]
    budget: Budget,
    /// Largest Butson order searched for float matrices.
    #[arg(long, global = true, default_value_t = DEFAULT_D_MAX)]
    d_max: u64,
    /// Largest permutation length accepted by the SCS solver.
    #[arg(long, global = true, default_value_t = DEFAULT_N_MAX)]
    n_max: usize,
    /// Compact JSON (the default).
    #[arg(long, global = true, conflicts_with = "pretty")]
    json: bool,
    /// Indented JSON.
    #[arg(long, global = true)]
    pretty: bool,
}

#[derive(Clone, Copy, Debug)]
struct Budget(Option<u64>);

impl std::fmt::Display for Budget {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self.0 {
            Some(b) => write!(f, "{b}"),
            None => f.write_str("unlimited"),
        }
    }
}

impl std::str::FromStr for Budget {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        if s.eq_ignore_ascii_case("unlimited") {
            return Ok(Budget(None));
        }
        s.parse::<u64>()
            .map(|b| Budget(Some(b)))
            .map_err(|_| format!("expected a number or `unlimited`, got `{s}`"))
    }
}

#[derive(Subcommand)]
enum Command {
    /// Generate, validate and classify complex Hadamard matrices.
    #[command(subcommand)]
    Matrix(matrix::MatrixCmd),
    /// Build and verify promise instances.
    #[command(subcommand)]
    Promise(promise::PromiseCmd),
    /// Run the switch protocol.
    #[command(subcommand)]
    Switch(switch::SwitchCmd),
    /// Shortest common supersequences and fixed-order query costs.
    #[command(subcommand)]
    Scs(scs::ScsCmd),
}

impl Global {
    fn config(&self) -> Result<RunConfig, CliError> {
        let cfg = RunConfig {
            tolerances: Tolerances {
                eps_phase: self.eps_phase,
                eps_unitary: self.eps_unitary,
                eps_det: self.eps_det,
            },
            census_budget: self.budget.0,
            d_max: self.d_max,
            n_max: self.n_max,
            seed: self.seed,
        };
        cfg.validate()?;
        Ok(cfg)
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let out = Output { pretty: cli.global.pretty };
    let result = cli.global.config().and_then(|cfg| match cli.command {
        Command::Matrix(c) => matrix::run(c, &cfg, &out),
        Command::Promise(c) => promise::run(c, &cfg, &out),
        Command::Switch(c) => switch::run(c, &cfg, &out),
        Command::Scs(c) => scs::run(c, &cfg, &out),
    });
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            out.error(&e);
            ExitCode::from(1)
        }
    }
}
