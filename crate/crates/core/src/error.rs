use thiserror::Error;

/// Errors raised by the algebra, verification and I/O layers.
#[derive(Debug, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,

    #[error("leading coefficient is not invertible: {0}")]
    NonInvertibleLeading(String),

    #[error("truncation exhausted: {0}")]
    TruncationExhausted(String),

    #[error("elements are linearly dependent over the constants")]
    Dependent,

    #[error("denominator does not split into linear factors over the supported field (remaining factor {0})")]
    NonSplit(String),

    #[error("no fundamental set of solutions found up to window (found {found}, need {needed}; window-bounded verdict)")]
    NoFundamentalSet { found: usize, needed: usize },

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("point mismatch: element lives at z = {found}, expected z = {expected}")]
    PointMismatch { found: String, expected: String },

    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error("incomparable groups: {0}")]
    Incomparable(String),

    #[error("verification failed: {0}")]
    Verification(String),

    #[error("syntax error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },

    #[error("invalid data: {0}")]
    Format(String),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
