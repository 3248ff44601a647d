//! Command-line harness for `powertour`: generate point sets, build tours,
//! run verification suites and benchmark sweeps.
//!
//! Exit codes: 0 success, 1 usage or input error, 2 a certified bound was
//! violated, 3 an internal certificate failed.

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

pub mod bench;
pub mod gen;
pub mod parallel;
pub mod range;
pub mod tour;
pub mod verify;

pub use range::IntRange;

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_VIOLATION: i32 = 2;
pub const EXIT_CERTIFICATE: i32 = 3;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Lib(#[from] powertour::Error),
    #[error("certified bound violated: {0}")]
    Violation(String),
    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) | CliError::Io(_) => EXIT_USAGE,
            CliError::Lib(powertour::Error::Certificate(_)) => EXIT_CERTIFICATE,
            CliError::Lib(_) => EXIT_USAGE,
            CliError::Violation(_) => EXIT_VIOLATION,
        }
    }
}

pub type CliResult<T> = Result<T, CliError>;

#[derive(Debug, Parser)]
#[command(name = "powertour", version, about = "Power-cost tours of points in the unit cube")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Write a named or random point set (JSON, or CSV for a .csv output).
    Gen(GenArgs),
    /// Build a tour and compare its cost with the named bounds.
    Tour(TourArgs),
    /// Run a verification suite and print a JSON summary.
    Verify(VerifyArgs),
    /// Sweep algorithms over a grid of k and n and print CSV.
    Bench(BenchArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Generator {
    Uniform,
    CubeVertices,
    Clustered,
    DiagonalPair,
    #[value(name = "k3-code4")]
    K3Code4,
    #[value(name = "k4-even-weight")]
    K4EvenWeight,
    EvenWeight,
    #[value(name = "figure1-four")]
    Figure1Four,
    #[value(name = "figure1-two")]
    Figure1Two,
    #[value(name = "figure1-five")]
    Figure1Five,
}

#[derive(Debug, Args)]
pub struct GenArgs {
    #[arg(value_enum)]
    pub generator: Generator,
    #[arg(long)]
    pub k: Option<u32>,
    #[arg(long)]
    pub n: Option<usize>,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Cluster count for `clustered`.
    #[arg(long, default_value_t = 4)]
    pub clusters: usize,
    /// Cluster half-width for `clustered`.
    #[arg(long, default_value_t = 0.05)]
    pub radius: f64,
    /// Output file; stdout (JSON) when absent.
    #[arg(short, long)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Algo {
    MstSekanina,
    Greedy,
    TwoPhase,
    Newman2d,
    Oracle,
}

impl Algo {
    pub fn algorithm(self) -> powertour::Algorithm {
        use powertour::Algorithm as A;
        match self {
            Algo::MstSekanina => A::MstSekanina,
            Algo::Greedy => A::Greedy,
            Algo::TwoPhase => A::TwoPhase,
            Algo::Newman2d => A::Newman2d,
            Algo::Oracle => A::Oracle,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum DiagonalArg {
    Main,
    Anti,
}

#[derive(Debug, Args)]
pub struct TourArgs {
    #[arg(long, value_enum)]
    pub algo: Algo,
    /// Exponent; defaults to the dimension of the input.
    #[arg(long)]
    pub k: Option<u32>,
    /// Point-set file (JSON, or CSV by extension).
    pub input: PathBuf,
    /// Forest threshold for `two-phase` (default `k^{-1/4}`).
    #[arg(long)]
    pub cutoff: Option<f64>,
    #[arg(long, value_enum, default_value_t = DiagonalArg::Main)]
    pub diagonal: DiagonalArg,
    /// Omit wall times and the timestamp.
    #[arg(long)]
    pub no_timing: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Suite {
    Lemma1,
    Lemma5,
    Lemma7,
    Lemma9,
    Bincode,
    BoundsSweep,
    TightExamples,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[arg(value_enum)]
    pub suite: Suite,
    /// Random trials per k.
    #[arg(long, default_value_t = 1000)]
    pub trials: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Values of k, e.g. `3..8` or `3,5,7`.
    #[arg(long)]
    pub k: Option<IntRange>,
    /// Range of n sampled per trial, e.g. `2..200`.
    #[arg(long)]
    pub n: Option<IntRange>,
    /// Relative tolerance for equality checks.
    #[arg(long, default_value_t = 1e-9)]
    pub tol: f64,
    #[arg(long)]
    pub no_timing: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Family {
    Uniform,
    Clustered,
    CubeVertices,
    DiagonalPair,
}

#[derive(Debug, Args)]
pub struct BenchArgs {
    #[arg(long, default_value = "3,4,5")]
    pub k: IntRange,
    #[arg(long, default_value = "10,100")]
    pub n: IntRange,
    #[arg(long, value_enum, value_delimiter = ',', default_value = "mst-sekanina,greedy,two-phase")]
    pub algos: Vec<Algo>,
    #[arg(long, value_enum, default_value_t = Family::Uniform)]
    pub instance: Family,
    /// Seeds `seed, seed+1, ...` per grid cell.
    #[arg(long, default_value_t = 1)]
    pub trials: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Print the two-phase `s_k/√k` trend table over `--k` instead.
    #[arg(long)]
    pub trend: bool,
    #[arg(short, long)]
    pub output: Option<PathBuf>,
    /// Leave the time column empty.
    #[arg(long)]
    pub no_timing: bool,
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let informational = matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion);
            let text = e.render().to_string();
            if informational {
                let _ = write!(out, "{text}");
                return EXIT_OK;
            }
            let _ = write!(err, "{text}");
            return EXIT_USAGE;
        }
    };
    let result = match cli.command {
        Command::Gen(a) => gen::run(&a, out),
        Command::Tour(a) => tour::run(&a, out),
        Command::Verify(a) => verify::run(&a, out),
        Command::Bench(a) => bench::run(&a, out),
    };
    match result {
        Ok(()) => EXIT_OK,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            e.exit_code()
        }
    }
}

/// Seconds since the Unix epoch, for the optional timestamp field.
pub(crate) fn timestamp() -> u64 {
    std::time::SystemTime::now()
        .duration_since(std::time::UNIX_EPOCH)
        .map(|d| d.as_secs())
        .unwrap_or(0)
}

pub(crate) fn write_json<T: serde::Serialize>(out: &mut dyn Write, value: &T) -> CliResult<()> {
    let text = serde_json::to_string_pretty(value).map_err(|e| CliError::Usage(e.to_string()))?;
    writeln!(out, "{text}")?;
    Ok(())
}
