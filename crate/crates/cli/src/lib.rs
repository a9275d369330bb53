//! Command-line front end for `algdiag`: argument parsing, exact JSON
//! output, and the regression corpus runner.

pub mod commands;
pub mod corpus;
pub mod json;
pub mod oracle;

use algdiag::ErrorKind;
use clap::{Parser, Subcommand, ValueEnum};
use thiserror::Error;

pub use commands::Report;

/// Process exit codes.
pub mod exit {
    pub const OK: i32 = 0;
    pub const VERIFICATION_FAILED: i32 = 1;
    pub const USAGE: i32 = 2;
    pub const MATH: i32 = 3;
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error(transparent)]
    Engine(#[from] algdiag::Error),
    #[error("{0}")]
    Usage(String),
    #[error("malformed JSON input: {0}")]
    Json(String),
    #[error("bad oracle directive: {0}")]
    Oracle(String),
    #[error("{0}")]
    Io(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Engine(e) if e.kind() == ErrorKind::Math => exit::MATH,
            _ => exit::USAGE,
        }
    }
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Debug, Parser)]
#[command(
    name = "algdiag",
    version,
    about = "Exact diagonals, Hensel lifting and Weierstrass division"
)]
pub struct Cli {
    /// Comma-separated variable order; the last one plays the role of `t`.
    #[arg(long, global = true)]
    pub vars: Option<String>,
    /// Truncation order.
    #[arg(long, global = true, default_value_t = 10)]
    pub order: u32,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    /// Seed for randomized corpus entries.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum DiagKind {
    Small,
    Big,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum WeierstrassMode {
    Prepare,
    Divide,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum AnnihilatorOp {
    Add,
    Mul,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Small or big diagonal of a rational function.
    Diag { kind: DiagKind, expr: String },
    /// Lift a simple root of P(0, t) to a power series root of P.
    Lift {
        poly: String,
        #[arg(default_value = "0", allow_hyphen_values = true)]
        root: String,
        /// Overrides --order.
        order: Option<u32>,
    },
    /// Lift a coprime factorization f(0, t) = p0 q0 to f = p q.
    LiftFactor { f: String, p0: String, q0: String },
    /// Rational function whose big diagonal is W(x, h), with h the root of P
    /// vanishing at the origin.
    Dl {
        poly: String,
        /// Numerator coefficients a_0, a_1, .. of W in t.
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        num: Vec<String>,
        /// Denominator coefficients b_0, b_1, .. of W in t.
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        den: Vec<String>,
    },
    /// Weierstrass preparation of G, or division of F by G.
    Weierstrass {
        mode: WeierstrassMode,
        /// `G` for prepare, `F G` for divide. Put expressions that start
        /// with `-` after `--`.
        #[arg(num_args = 1..=2, required = true)]
        exprs: Vec<String>,
        /// Distinguished variable; defaults to the last of --vars.
        #[arg(long)]
        var: Option<String>,
    },
    /// Two-dimensional code for an algebraic series. With --num, POLY is the
    /// annihilator S of h and the series is W(x, h); otherwise POLY is the
    /// minimal polynomial of the series.
    AmCode {
        poly: String,
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        num: Vec<String>,
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        den: Vec<String>,
    },
    /// Annihilator of a sum or product of two algebraic series.
    Annihilate {
        op: AnnihilatorOp,
        p1: String,
        p2: String,
    },
    /// Coefficientwise product of two rational functions.
    Hadamard { f: String, g: String },
    /// Run a regression corpus: `builtin` or a path to a JSON file.
    Corpus {
        #[arg(default_value = "builtin")]
        source: String,
        /// Number of extra randomized lifting entries drawn from --seed.
        #[arg(long, default_value_t = 0)]
        random: usize,
        /// Print the built-in corpus as JSON and exit.
        #[arg(long)]
        dump: bool,
    },
}

/// Runs a parsed command line.
pub fn run(cli: &Cli) -> Result<Report, CliError> {
    commands::dispatch(cli)
}
