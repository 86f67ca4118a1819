use thiserror::Error;

/// Errors raised anywhere in the library.
#[derive(Debug, Error)]
pub enum Error {
    #[error("division by a series that vanishes identically to its truncation order")]
    DivisionByZeroSeries,
    #[error("division by zero")]
    DivisionByZero,
    #[error("exponents {0} and {1} differ by a non-integer")]
    IncompatibleExponents(String, String),
    #[error("coefficient of q^{exponent} requested but the series is only known below q^{known}")]
    BeyondTruncation { exponent: String, known: String },
    #[error("truncation order exhausted: {0}")]
    TruncationExhausted(String),
    #[error("inner series of a substitution must have positive integral valuation")]
    InvalidSubstitution,
    #[error("operation requires an integral leading exponent, found {0}")]
    FractionalExponent(String),
    #[error("series carries a nonzero log q term")]
    LogTerm,
    #[error("unknown form id '{0}'")]
    UnknownForm(String),
    #[error("precision of {0} bits is below the minimum of {1} bits")]
    PrecisionTooLow(u32, u32),
    #[error("point is not in the upper half-plane")]
    NotInUpperHalfPlane,
    #[error("pole: {0}")]
    Pole(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("endpoint data has length {got}, operator needs {expected}")]
    EndpointLength { expected: usize, got: usize },
    #[error("indicial polynomial at the expansion point is not theta^{0}; only points of maximal unipotent monodromy are supported")]
    NotMaximalUnipotent(usize),
    #[error("right-hand side has a nonzero constant term")]
    NonzeroConstantRhs,
    #[error("quadrature did not reach the requested tolerance: {0}")]
    Quadrature(String),
    #[error("square-root branch discontinuity along the integration path near s = {0}")]
    BranchDiscontinuity(String),
    #[error("outside the region of convergence: {0}")]
    Convergence(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
