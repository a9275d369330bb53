use thiserror::Error;

/// Everything that can go wrong in the engine.
///
/// Variants are split by [`ErrorKind`] into usage errors (the caller passed
/// inconsistent data) and mathematical precondition failures.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("variable sets differ: [{left}] vs [{right}]")]
    VarMismatch { left: String, right: String },
    #[error("unknown variable `{0}`")]
    UnknownVariable(String),
    #[error("duplicate variable `{0}`")]
    DuplicateVariable(String),
    #[error("polynomial has degree 0 in `{0}`")]
    ZeroDegree(String),
    #[error("zero polynomial where a nonzero one is required")]
    ZeroPolynomial,
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("series has zero constant term and is not a unit")]
    NotAUnit,
    #[error("series is not divisible by {var}^{power}")]
    NotDivisible { var: String, power: u32 },
    #[error("{0} is not a root of the annihilator at the origin")]
    NotARoot(String),
    #[error("{0} is a multiple root of the annihilator at the origin; lifting refused")]
    MultipleRoot(String),
    #[error("seed factors do not multiply to f(0, t)")]
    BadSeed,
    #[error("seed factors are not coprime (resultant vanishes)")]
    NotCoprime,
    #[error("series is not `{0}`-regular inside its truncation window")]
    NotRegular(String),
    #[error("annihilator is not etale: {0}")]
    NotEtale(String),
    #[error("denominator b_0 vanishes at the origin")]
    DenominatorNotUnit,
    #[error("rational function is not a power series: {0}")]
    NotExpandable(String),
    #[error("d/dy1 Q(0,0) = 0 or Q(0,0) != 0; use the representation branch")]
    UseRepresentationBranch,
    #[error("polynomial division is not exact")]
    InexactDivision,

    #[error("syntax error at line {line}, column {column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("division in polynomial context")]
    NotAPolynomial,
    #[error("division by zero")]
    ZeroDenominator,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ErrorKind {
    /// Bad input shape: parse failures, unknown or mismatched variables.
    Usage,
    /// A mathematical precondition of the requested operation does not hold.
    Math,
}

impl Error {
    pub fn kind(&self) -> ErrorKind {
        use Error::*;
        match self {
            VarMismatch { .. }
            | UnknownVariable(_)
            | DuplicateVariable(_)
            | ZeroDegree(_)
            | ZeroPolynomial
            | InvalidArgument(_)
            | Syntax { .. }
            | NotAPolynomial
            | ZeroDenominator => ErrorKind::Usage,
            _ => ErrorKind::Math,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
