mod commands;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

/// Rigorous estimates of sums over the ordinates of zeta zeros.
#[derive(Debug, Parser)]
#[command(name = "zetasum", version)]
struct Cli {
    /// Working precision in bits; overrides ZETASUM_PRECISION_BITS.
    #[arg(long, global = true)]
    precision: Option<u32>,

    /// `fast` skips certification of zero enclosures and works at 64 bits.
    #[arg(long, global = true, value_enum, default_value_t = Mode::Certified)]
    mode: Mode,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Mode {
    Certified,
    Fast,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Compute, import or inspect zero tables.
    Zeros {
        #[command(subcommand)]
        action: ZerosAction,
    },
    /// Estimate Σ φ(γ) or its regularized limit for a weight φ.
    Estimate(EstimateArgs),
    /// Reproduce one of the constants c1, c2, H.
    Constants {
        #[arg(value_enum)]
        which: Constant,
        /// Number of zeros to sum over.
        #[arg(long, default_value_t = 10_000)]
        n: usize,
        #[command(flatten)]
        zeros: ZerosArg,
    },
    /// Naive and boundary-corrected estimates of c2 for n = 10, 100, ...
    Table1 {
        #[arg(long, default_value_t = 10_000)]
        max_n: usize,
        /// Also write the report as CSV.
        #[arg(long)]
        csv: Option<PathBuf>,
        #[command(flatten)]
        zeros: ZerosArg,
    },
    /// Compare the plain Lehman bound with the boundary-corrected E2 bound.
    CompareBounds {
        #[arg(long)]
        phi: String,
        #[arg(long = "T")]
        t: String,
    },
}

#[derive(Debug, Subcommand)]
enum ZerosAction {
    /// Locate and certify zeros, optionally writing them to a file.
    Find {
        #[arg(long, required_unless_present = "n", conflicts_with = "n")]
        t_max: Option<f64>,
        /// Find the first n zeros instead of those below a height.
        #[arg(long)]
        n: Option<usize>,
        #[arg(long)]
        out: Option<PathBuf>,
        /// Target radius of each zero enclosure [default: 1e-9, widened
        /// where f64 brackets cannot resolve it].
        #[arg(long)]
        tol: Option<f64>,
    },
    /// Validate a zero table file.
    Import {
        #[arg(long = "in")]
        input: PathBuf,
    },
    /// Statistics of a zero table file.
    Info {
        #[arg(long = "in")]
        input: PathBuf,
    },
}

#[derive(Debug, Clone, clap::Args)]
struct ZerosArg {
    /// Zero table file, or `compute` to locate the zeros first.
    #[arg(long, default_value = "compute")]
    zeros: String,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Method {
    Lehman,
    Theorem1,
    Theorem4,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Constant {
    C1,
    C2,
    #[value(name = "H", alias = "h")]
    H,
}

#[derive(Debug, clap::Args)]
struct EstimateArgs {
    /// Expression in t, or builtin:<name>[:<param>].
    #[arg(long)]
    phi: String,
    #[command(flatten)]
    zeros: ZerosArg,
    /// Cut off between zeros n and n+1.
    #[arg(long, conflicts_with = "t")]
    n: Option<usize>,
    /// Explicit cutoff; must lie strictly between zeros.
    #[arg(long = "T")]
    t: Option<String>,
    #[arg(long, value_enum, default_value_t = Method::Theorem1)]
    method: Method,
    /// Start of the domain of φ, and the lower integration limit for theorem4.
    #[arg(long = "T0")]
    t0: Option<f64>,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match commands::run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::FAILURE
        }
    }
}
