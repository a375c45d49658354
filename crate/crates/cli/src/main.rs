//! `cbqt`: case tables, parameter sweeps and validation for controlled
//! bidirectional teleportation of coherent-state qubits.
//!
//! Exit codes: 0 success, 1 failed invariant or runtime error, 2 bad flags,
//! bad config or bad range.

mod cases;
mod config;
mod output;
mod sweep;
mod validate;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use config::{Format, Overrides, RunConfig};
use sweep::{Axis, Quantity, SweepSpec};

#[derive(Debug)]
pub enum CliError {
    /// Exit 2.
    Usage(String),
    /// Exit 1.
    Failure(String),
}

impl CliError {
    fn code(&self) -> u8 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Failure(_) => 1,
        }
    }

    fn message(&self) -> &str {
        match self {
            CliError::Usage(m) | CliError::Failure(m) => m,
        }
    }
}

#[derive(Parser, Debug)]
#[command(name = "cbqt", version, about = "Controlled bidirectional teleportation of coherent-state qubits")]
struct Cli {
    #[command(flatten)]
    common: Common,
    #[command(subcommand)]
    command: Command,
}

/// Angles are in radians.
#[derive(Args, Debug)]
struct Common {
    /// Mean photon number |alpha|^2 [default: 2.0]
    #[arg(long, global = true)]
    alpha2: Option<f64>,
    /// Alice's polar angle [default: pi/2]
    #[arg(long, global = true)]
    theta: Option<f64>,
    /// Alice's phase [default: 0]
    #[arg(long, global = true)]
    phi: Option<f64>,
    /// Bob's polar angle [default: pi/3]
    #[arg(long = "theta-p", global = true)]
    theta_p: Option<f64>,
    /// Bob's phase [default: 0]
    #[arg(long = "phi-p", global = true)]
    phi_p: Option<f64>,
    /// Fock cutoff for the oracle [default: 40]
    #[arg(long = "n-max", global = true)]
    n_max: Option<usize>,
    /// Numerical tolerance for invariants [default: 1e-9]
    #[arg(long, global = true)]
    tol: Option<f64>,
    /// Output file; stdout when absent
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// csv or json [default: csv]
    #[arg(long, global = true)]
    format: Option<Format>,
    /// key=value file; flags override its values
    #[arg(long, global = true)]
    config: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// All 50 measurement cases at one parameter point
    #[command(allow_negative_numbers = true)]
    Cases,
    /// One quantity along alpha2 or theta
    #[command(allow_negative_numbers = true)]
    Sweep {
        /// avg_fidelity, case_prob:<family,branch> (e.g. case_prob:I,+) or maf
        #[arg(long)]
        quantity: Quantity,
        #[arg(long, value_enum)]
        axis: Axis,
        #[arg(long)]
        from: f64,
        #[arg(long)]
        to: f64,
        /// Grid points, at least 2
        #[arg(long, default_value_t = 51)]
        steps: usize,
        /// Report whether the engine curve is monotone
        #[arg(long)]
        check_monotone: bool,
    },
    /// Invariant suite and discrepancy ledger (JSON)
    #[command(allow_negative_numbers = true)]
    Validate,
}

fn init_threads() -> Result<(), CliError> {
    let Ok(raw) = std::env::var("CBQT_THREADS") else { return Ok(()) };
    let n: usize = raw
        .trim()
        .parse()
        .ok()
        .filter(|&n| n > 0)
        .ok_or_else(|| CliError::Usage(format!("CBQT_THREADS must be a positive integer, got '{raw}'")))?;
    rayon::ThreadPoolBuilder::new().num_threads(n).build_global().map_err(|e| CliError::Failure(e.to_string()))
}

fn run(cli: Cli) -> Result<bool, CliError> {
    init_threads()?;
    let c = cli.common;
    let flags = Overrides {
        alpha2: c.alpha2,
        theta: c.theta,
        phi: c.phi,
        theta_p: c.theta_p,
        phi_p: c.phi_p,
        n_max: c.n_max,
        tol: c.tol,
        out: c.out,
        format: c.format,
    };
    let cfg = RunConfig::resolve(flags, c.config.as_deref())?;
    match cli.command {
        Command::Cases => cases::run(&cfg).map(|_| true),
        Command::Sweep { quantity, axis, from, to, steps, check_monotone } => {
            sweep::run(&cfg, &SweepSpec { quantity, axis, from, to, steps, check_monotone }).map(|_| true)
        }
        Command::Validate => validate::run(&cfg),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => e.exit(),
    };
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {}", e.message());
            ExitCode::from(e.code())
        }
    }
}
