use std::path::PathBuf;
use std::process::ExitCode;
use std::str::FromStr;

use clap::{Args, Parser, Subcommand, ValueEnum};
use secrecy_lab::schemes::Model;

mod commands;
mod config;
mod format;

use config::Config;
use format::ExactReal;

/// Secrecy rates, bounds and exact verification for the wiretap channel with
/// a helper and the multiple access wiretap channel.
#[derive(Debug, Parser)]
#[command(name = "secrecy-lab", version)]
struct Cli {
    /// Write the result here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Machine-readable output (sweeps default to csv).
    #[arg(long, global = true)]
    format: Option<Format>,
    /// key=value file with default flag values.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Achievable secrecy rate of one channel.
    Rate(RateArgs),
    /// Upper bound on the secrecy rate.
    Bound(BoundArgs),
    /// Normalized achievable rate and bound over a grid of beta1.
    Sweep(SweepArgs),
    /// Exhaustive certification of the schemes or the truncated-model oracles.
    Verify(VerifyArgs),
}

#[derive(Debug, Args)]
struct RateArgs {
    kind: Option<RateKind>,
    #[arg(long)]
    n1: Option<u32>,
    #[arg(long)]
    n2: Option<u32>,
    #[arg(long)]
    ne: Option<u32>,
    /// Linear SNR of user 1.
    #[arg(long, conflicts_with = "snr1_db")]
    snr1: Option<f64>,
    #[arg(long)]
    snr1_db: Option<f64>,
    #[arg(long)]
    beta1: Option<ExactReal>,
    #[arg(long)]
    beta2: Option<ExactReal>,
}

#[derive(Debug, Args)]
struct BoundArgs {
    #[arg(long)]
    model: Option<Model>,
    #[arg(long)]
    n1: Option<u32>,
    #[arg(long)]
    n2: Option<u32>,
    #[arg(long)]
    ne: Option<u32>,
    #[arg(long)]
    beta1: Option<ExactReal>,
    #[arg(long)]
    beta2: Option<ExactReal>,
}

#[derive(Debug, Args)]
struct SweepArgs {
    #[arg(long)]
    model: Option<Model>,
    #[arg(long)]
    beta2: Option<ExactReal>,
    #[arg(long)]
    beta1_from: Option<ExactReal>,
    #[arg(long)]
    beta1_to: Option<ExactReal>,
    #[arg(long)]
    step: Option<ExactReal>,
}

#[derive(Debug, Args)]
struct VerifyArgs {
    target: Option<VerifyTarget>,
    /// Model to certify; both when omitted.
    #[arg(long)]
    model: Option<Model>,
    #[arg(long)]
    max_n: Option<u32>,
    /// Cap on enumerated message + jam bits.
    #[arg(long)]
    budget: Option<u32>,
    /// Also remove each protecting jam level and expect leakage.
    #[arg(long)]
    mutate: bool,
    /// Gains p/h_denom in [1, 2) for the lemma oracles.
    #[arg(long)]
    h_denom: Option<u64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum RateKind {
    LdWth,
    LdMac,
    GWth,
    GMac,
}

impl FromStr for RateKind {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        <Self as ValueEnum>::from_str(s, true)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum VerifyTarget {
    Scheme,
    Lemmas,
}

impl FromStr for VerifyTarget {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        <Self as ValueEnum>::from_str(s, true)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Csv,
    Json,
}

impl FromStr for Format {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        <Self as ValueEnum>::from_str(s, true)
    }
}

#[derive(Debug)]
enum CliError {
    Usage(String),
    Io(String),
    Singular(String),
    /// A verification run found failures.
    Failed(String),
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) | CliError::Io(_) => 1,
            CliError::Singular(_) => 2,
            CliError::Failed(_) => 3,
        }
    }

    fn message(&self) -> &str {
        match self {
            CliError::Usage(m) | CliError::Io(m) | CliError::Singular(m) | CliError::Failed(m) => m,
        }
    }
}

impl From<secrecy_lab::Error> for CliError {
    fn from(e: secrecy_lab::Error) -> Self {
        if e.is_singular() {
            CliError::Singular(e.to_string())
        } else {
            CliError::Usage(e.to_string())
        }
    }
}

/// Settings shared by every command after merging flags and config.
struct Common {
    out: Option<PathBuf>,
    format: Option<Format>,
}

const COMMON_KEYS: [&str; 2] = ["out", "format"];

fn init_threads() -> Result<(), CliError> {
    let Ok(v) = std::env::var("SECRECY_LAB_THREADS") else {
        return Ok(());
    };
    let n = v
        .trim()
        .parse::<usize>()
        .ok()
        .filter(|&n| n > 0)
        .ok_or_else(|| CliError::Usage(format!("SECRECY_LAB_THREADS must be a positive integer, got `{v}`")))?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(n)
        .build_global()
        .map_err(|e| CliError::Usage(format!("cannot start {n} worker threads: {e}")))
}

fn run(cli: Cli) -> Result<(), CliError> {
    init_threads()?;
    let config = match &cli.config {
        Some(path) => Config::load(path)?,
        None => Config::default(),
    };
    let keys: &[&str] = match cli.command {
        Command::Rate(_) => &["kind", "n1", "n2", "ne", "snr1", "snr1-db", "beta1", "beta2"],
        Command::Bound(_) => &["model", "n1", "n2", "ne", "beta1", "beta2"],
        Command::Sweep(_) => &["model", "beta2", "beta1-from", "beta1-to", "step"],
        Command::Verify(_) => &["target", "model", "max-n", "budget", "mutate", "h-denom"],
    };
    config.check_keys(&[&COMMON_KEYS[..], keys].concat())?;
    let common = Common {
        out: config.pick(cli.out, "out")?,
        format: config.pick(cli.format, "format")?,
    };
    match cli.command {
        Command::Rate(a) => commands::rate(&common, &config, a),
        Command::Bound(a) => commands::bound(&common, &config, a),
        Command::Sweep(a) => commands::sweep(&common, &config, a),
        Command::Verify(a) => commands::verify(&common, &config, a),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 1 } else { 0 });
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {}", e.message());
            ExitCode::from(e.exit_code())
        }
    }
}
