//! The `ucslab` command line, callable in-process with its standard output redirected.

mod commands;
pub mod config;
pub mod manifest;
pub mod output;
mod progress;

use std::cell::RefCell;
use std::ffi::OsString;
use std::fmt;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use ucslab_core::Error;

use crate::config::{FileConfig, Overrides, Settings};
use crate::output::Format;

pub const EXIT_COUNTEREXAMPLE: u8 = 1;
pub const EXIT_USAGE: u8 = 2;
pub const EXIT_ENVIRONMENT: u8 = 3;
pub const EXIT_EMPTY_CLASS: u8 = 4;

#[derive(Debug)]
pub struct CliError {
    code: u8,
    message: String,
}

impl CliError {
    pub fn usage(m: impl Into<String>) -> Self {
        CliError { code: EXIT_USAGE, message: m.into() }
    }

    pub fn env(m: impl Into<String>) -> Self {
        CliError { code: EXIT_ENVIRONMENT, message: m.into() }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        let code = match &e {
            Error::EmptyClass { .. } => EXIT_EMPTY_CLASS,
            Error::Io(_)
            | Error::Halted { .. }
            | Error::CheckpointCorrupt(_)
            | Error::CheckpointVersion { .. }
            | Error::CheckpointMismatch(_) => EXIT_ENVIRONMENT,
            _ => EXIT_USAGE,
        };
        CliError { code, message: e.to_string() }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.message)
    }
}

#[derive(Parser)]
#[command(name = "ucslab", version, about = "Exhaustive checks on separated union-closed families")]
pub struct Cli {
    /// TOML file with any of: max_n, workers, out_dir, progress_secs, batch_units
    #[arg(long, env = "UCSLAB_CONFIG", global = true)]
    config: Option<PathBuf>,
    /// Largest ground set accepted for exhaustive runs
    #[arg(long, env = "UCSLAB_MAX_N", global = true)]
    max_n: Option<u32>,
    #[arg(long, env = "UCSLAB_WORKERS", global = true)]
    workers: Option<usize>,
    /// Directory for result files; relative --out paths are placed here
    #[arg(long, env = "UCSLAB_OUT_DIR", global = true)]
    out_dir: Option<PathBuf>,
    /// Seconds between progress lines on stderr (0 disables them)
    #[arg(long, env = "UCSLAB_PROGRESS_SECS", global = true)]
    progress_secs: Option<u64>,
    /// No progress or summary lines on stderr
    #[arg(long, short, global = true)]
    quiet: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
pub enum Command {
    /// List every union-closed family on n points, one per line
    Enumerate(EnumerateArgs),
    /// Smallest best-cover fraction over one class
    Constant(ConstantArgs),
    /// Check the conjectured bound over a class
    Verify(VerifyArgs),
    /// Exact audit of the binomial inequalities
    Audit(AuditArgs),
    /// Constants for every order and class over a range of n
    Table(TableArgs),
    /// Sizes of the separated and weakly separated classes
    Classify(ClassifyArgs),
    /// Check the subfamily claims on every family with n <= 4
    ProofSteps(ProofStepArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum StrategyArg {
    Recursive,
    Filter,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum ClassArg {
    All,
    Separated,
    #[value(alias = "weak")]
    WeaklySeparated,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum VariantArg {
    Standard,
    Strong,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum ModeArg {
    Labeled,
    Canonical,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum WitnessArg {
    Designated,
    Strict,
}

#[derive(Args)]
pub struct EnumerateArgs {
    #[arg(long)]
    pub n: u32,
    #[arg(long, value_enum, default_value = "recursive")]
    pub strategy: StrategyArg,
    /// One representative per isomorphism class, followed by a tab and the orbit size
    #[arg(long, conflicts_with = "strategy")]
    pub canonical: bool,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Args)]
pub struct ScanArgs {
    /// Defaults to canonical from n = 5 on
    #[arg(long, value_enum)]
    pub mode: Option<ModeArg>,
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long, value_enum)]
    pub format: Option<Format>,
}

#[derive(Args)]
pub struct ConstantArgs {
    #[arg(long)]
    pub n: u32,
    #[arg(long)]
    pub k: u32,
    #[arg(long)]
    pub l: u32,
    #[arg(long, value_enum, default_value = "all")]
    pub class: ClassArg,
    /// Same as --class weakly-separated
    #[arg(long, conflicts_with = "class")]
    pub weak: bool,
    #[command(flatten)]
    pub scan: ScanArgs,
}

#[derive(Args)]
pub struct VerifyArgs {
    #[arg(long)]
    pub n: u32,
    #[arg(long, required_unless_present = "all_orders")]
    pub k: Option<u32>,
    #[arg(long, required_unless_present = "all_orders")]
    pub l: Option<u32>,
    #[arg(long, value_enum, default_value = "standard")]
    pub variant: VariantArg,
    /// Every k <= n, l <= k and both variants in one pass
    #[arg(long, conflicts_with_all = ["k", "l", "variant"])]
    pub all_orders: bool,
    /// Resume from and save progress to this file
    #[arg(long)]
    pub checkpoint: Option<PathBuf>,
    #[arg(long, hide = true)]
    pub halt_after_batches: Option<u64>,
    #[command(flatten)]
    pub scan: ScanArgs,
}

#[derive(Args)]
pub struct AuditArgs {
    #[arg(long, default_value_t = 30)]
    pub max_k: u32,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Args)]
pub struct TableArgs {
    /// `a..b` (inclusive) or a single n
    #[arg(long)]
    pub n: String,
    #[command(flatten)]
    pub scan: ScanArgs,
}

#[derive(Args)]
pub struct ClassifyArgs {
    #[arg(long)]
    pub n: u32,
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long, value_enum)]
    pub format: Option<Format>,
}

#[derive(Args)]
pub struct ProofStepArgs {
    #[arg(long)]
    pub n: u32,
    #[arg(long, value_enum, default_value = "designated")]
    pub witness: WitnessArg,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

pub struct Context<'a> {
    pub settings: Settings,
    pub quiet: bool,
    pub out: RefCell<&'a mut dyn Write>,
}

impl Context<'_> {
    pub fn note(&self, line: impl AsRef<str>) {
        if !self.quiet {
            eprintln!("{}", line.as_ref());
        }
    }
}

fn run_inner(args: Vec<OsString>, out: &mut dyn Write) -> Result<u8, CliError> {
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return Ok(if e.use_stderr() { EXIT_USAGE } else { 0 });
        }
    };
    let file = match &cli.config {
        Some(p) => Some((p.as_path(), FileConfig::load(p)?)),
        None => None,
    };
    let over =
        Overrides { max_n: cli.max_n, workers: cli.workers, out_dir: cli.out_dir, progress_secs: cli.progress_secs };
    let ctx = Context { settings: Settings::resolve(over, file)?, quiet: cli.quiet, out: RefCell::new(out) };
    commands::dispatch(&ctx, cli.command)
}

/// Runs one command line (program name first) and returns the exit code. Results that
/// would go to standard output are written to `out`; diagnostics go to standard error.
pub fn run<I, T>(args: I, out: &mut dyn Write) -> u8
where
    I: IntoIterator<Item = T>,
    T: Into<OsString>,
{
    match run_inner(args.into_iter().map(Into::into).collect(), out) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("ucslab: error: {e}");
            e.code
        }
    }
}
