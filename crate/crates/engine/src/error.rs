use thiserror::Error;

/// Errors raised by the symbolic engine.
#[derive(Debug, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,

    #[error("not invertible: {0}")]
    NotInvertible(String),

    #[error("unknown formal symbol `{0}`")]
    UnknownSymbol(String),

    #[error("malformed rational `{0}`")]
    MalformedNumber(String),

    /// A derivative that the jet model cannot supply (second normal derivatives,
    /// tangential derivatives of curvature data, ...).
    #[error("derivative unavailable: {0}")]
    DerivativeUnavailable(String),

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("unsupported dimension {0} (expected 4 or 6)")]
    UnsupportedDimension(usize),

    #[error("symbol is in the wrong stage: {0}")]
    Stage(String),

    #[error("symbol does not decay in the normal covariable: {0}")]
    NonDecaying(String),

    #[error("invalid case: {0}")]
    InvalidCase(String),

    #[error("composition truncated beyond first order: {0}")]
    Truncation(String),

    #[error("fixture error in entry `{entry}`: {reason}")]
    Fixture { entry: String, reason: String },

    #[error("invariant violated: {0}")]
    Invariant(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
