//! The `dioph` command line: constant tables, the dual-bound theorem for a
//! single pair, simulation of best approximations, and invariant suites.

pub mod bounds_cmd;
pub mod config;
pub mod error;
pub mod output;
pub mod simulate_cmd;
pub mod verify;

use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, Subcommand};
use dioph_core::numerics::DEFAULT_PRECISION_BITS;

use config::{OutputFormat, RunConfig, Threads};
use error::CliError;
use simulate_cmd::SimulateArgs;

#[derive(Debug, Parser)]
#[command(name = "dioph", version, about = "Exponent bounds and best-approximation experiments")]
pub struct Cli {
    /// Working precision in bits (at least 64).
    #[arg(long, global = true, env = "DIOPH_PRECISION_BITS", default_value_t = DEFAULT_PRECISION_BITS)]
    pub precision_bits: usize,
    /// Relative tolerance for root finding.
    #[arg(long, global = true, default_value = "1e-30")]
    pub tol: String,
    #[arg(long, global = true, value_enum, default_value_t = OutputFormat::Text)]
    pub format: OutputFormat,
    /// Worker threads: a positive integer or `auto`.
    #[arg(long, global = true, default_value_t = Threads::Auto)]
    pub threads: Threads,
    /// Significant digits of printed reals.
    #[arg(long, global = true, default_value_t = 12)]
    pub digits: usize,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Table of τ_n, σ_n, w(n), μ_n, the regular-graph bound and χ_n, plus Θ.
    Bounds {
        /// `n`, `a..b` (inclusive) or a comma list.
        #[arg(long = "n")]
        n: String,
        /// Keep only even n.
        #[arg(long)]
        even: bool,
    },
    /// Defect, auxiliary quantities and the four dual-exponent bounds for one pair.
    TheoremNew {
        #[arg(long = "n")]
        n: u32,
        #[arg(long, allow_hyphen_values = true)]
        alpha: String,
        /// A decimal or `inf`.
        #[arg(long, allow_hyphen_values = true)]
        beta: String,
    },
    /// Enumerate best approximations to a target and write CSV/JSON results.
    Simulate {
        /// `veronese:<e|pi|sqrt2|golden|liouville|decimal>` or `explicit:<d1,d2,...>`.
        #[arg(long)]
        target: String,
        #[arg(long = "n")]
        n: usize,
        #[arg(long, default_value_t = 10_000)]
        xmax: u64,
        /// Accept xmax above 1000000.
        #[arg(long)]
        no_xmax_cap: bool,
        /// Offsets |o_i| <= widen around round(x ξ_i) added to the pool.
        #[arg(long, default_value_t = 1)]
        widen: u32,
        /// With --beta: also check the structure of the sequence for this pair.
        #[arg(long)]
        alpha: Option<String>,
        #[arg(long)]
        beta: Option<String>,
        #[arg(long, default_value = "dioph-out")]
        out_dir: PathBuf,
        /// Uniform grid points on [0, q_max] (record breakpoints are added).
        #[arg(long, default_value_t = 200)]
        q_points: usize,
        /// Trailing fraction of the data used for estimates.
        #[arg(long, default_value_t = 0.5)]
        window: f64,
    },
    /// Run an invariant suite: constants, corollary, monotonicity, oracle or profile.
    Verify {
        suite: String,
        /// Seed for the randomised suites.
        #[arg(long, default_value_t = 20240611)]
        seed: u64,
    },
}

impl Cli {
    pub fn config(&self) -> Result<RunConfig, CliError> {
        RunConfig::new(self.precision_bits, &self.tol, self.format, self.threads, self.digits)
    }
}

/// Execute a parsed command, writing results to `out`.
///
/// Output is buffered and written once the command has finished, including
/// whatever was produced before an error.
pub fn run(cli: &Cli, out: &mut dyn Write) -> Result<(), CliError> {
    let cfg = cli.config()?;
    let pool = cfg.thread_pool()?;
    let mut buf: Vec<u8> = Vec::new();
    let result = pool.install(|| dispatch(cli, &cfg, &mut buf));
    out.write_all(&buf).map_err(|e| CliError::Io {
        path: "<stdout>".into(),
        message: e.to_string(),
    })?;
    result
}

fn dispatch(cli: &Cli, cfg: &RunConfig, out: &mut Vec<u8>) -> Result<(), CliError> {
    match &cli.command {
        Command::Bounds { n, even } => {
            let ns = bounds_cmd::parse_n_range(n)?;
            bounds_cmd::cmd_bounds(&ns, *even, cfg, out)
        }
        Command::TheoremNew { n, alpha, beta } => bounds_cmd::cmd_theorem_new(*n, alpha, beta, cfg, out),
        Command::Simulate {
            target,
            n,
            xmax,
            no_xmax_cap,
            widen,
            alpha,
            beta,
            out_dir,
            q_points,
            window,
        } => {
            let args = SimulateArgs {
                target: target.clone(),
                n: *n,
                x_max: *xmax,
                widen: *widen,
                alpha: alpha.clone(),
                beta: beta.clone(),
                out_dir: out_dir.clone(),
                q_points: *q_points,
                window: *window,
                no_cap: *no_xmax_cap,
            };
            simulate_cmd::cmd_simulate(&args, cfg, out)
        }
        Command::Verify { suite, seed } => verify::cmd_verify(suite.parse()?, *seed, cfg, out),
    }
}
