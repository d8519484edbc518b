//! `jsdm` — divergences, the JSD metric family, sequence segmentation, and
//! the measurement-maximized quantum JSD, behind one subcommand-style binary.

mod divergence;
mod metric_scan;
mod output;
mod quantum;
mod segment;
mod simulate;

use clap::{Parser, Subcommand};

#[derive(Parser)]
#[command(name = "jsdm", version, about = "Jensen-Shannon divergence metrics toolkit")]
struct Cli {
    /// Worker threads for parallel scans (default: available parallelism).
    /// Results are identical for every thread count.
    #[arg(long, global = true)]
    threads: Option<usize>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate entropy or a divergence between two distributions.
    Divergence(divergence::Args),
    /// Classify an exponent, scan h_alpha monotonicity, search for triangle
    /// violations, and optionally emit figure data.
    #[command(name = "metric-scan")]
    MetricScan(metric_scan::Args),
    /// Recursively segment symbol sequences at a significance threshold.
    Segment(segment::Args),
    /// Generate a seeded block ensemble and emit its cursor-profile tables.
    Simulate(simulate::Args),
    /// Measurement-maximized JSD between two qubit states.
    #[command(name = "quantum-jsd")]
    QuantumJsd(quantum::Args),
}

/// CLI failure modes, mapped onto exit codes: usage problems exit 2 (like
/// argument-parse failures), everything else exits 1 with a one-line
/// `error: ...` message on stderr.
#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Run(String),
}

impl CliError {
    fn usage(msg: impl Into<String>) -> Self {
        Self::Usage(msg.into())
    }
}

impl From<jsdm_core::Error> for CliError {
    fn from(e: jsdm_core::Error) -> Self {
        Self::Run(e.to_string())
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        Self::Run(e.to_string())
    }
}

pub type CliResult<T> = Result<T, CliError>;

/// Seed resolution: explicit flag, then the JSDM_SEED environment variable,
/// then zero.
pub fn resolve_seed(explicit: Option<u64>) -> CliResult<u64> {
    if let Some(s) = explicit {
        return Ok(s);
    }
    match std::env::var("JSDM_SEED") {
        Ok(text) => text
            .trim()
            .parse()
            .map_err(|e| CliError::usage(format!("JSDM_SEED is not an integer: {e}"))),
        Err(_) => Ok(0),
    }
}

fn run(cli: Cli) -> CliResult<()> {
    if let Some(n) = cli.threads {
        rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
            .map_err(|e| CliError::Run(format!("thread pool: {e}")))?;
    }
    match cli.command {
        Command::Divergence(args) => divergence::run(args),
        Command::MetricScan(args) => metric_scan::run(args),
        Command::Segment(args) => segment::run(args),
        Command::Simulate(args) => simulate::run(args),
        Command::QuantumJsd(args) => quantum::run(args),
    }
}

fn main() {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => {}
        Err(CliError::Usage(msg)) => {
            eprintln!("error: usage: {msg}");
            std::process::exit(2);
        }
        Err(CliError::Run(msg)) => {
            eprintln!("error: {msg}");
            std::process::exit(1);
        }
    }
}
