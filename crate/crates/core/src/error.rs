use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ArsError {
    #[error("invalid field: {0}")]
    InvalidField(String),

    #[error("field mismatch: {0}")]
    FieldMismatch(String),

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("window mismatch: {0}")]
    WindowMismatch(String),

    #[error("not a sub-window: {0}")]
    NotSubWindow(String),

    #[error("unknown vertex `{0}`")]
    UnknownVertex(String),

    #[error("unknown arrow `{0}`")]
    UnknownArrow(String),

    #[error("path not in window: {0}")]
    PathNotInWindow(String),

    #[error("invalid quiver: {0}")]
    InvalidQuiver(String),

    #[error("invalid representation: {0}")]
    InvalidRep(String),

    #[error("invalid map: {0}")]
    InvalidMap(String),

    #[error("sequence is not exact: {0}")]
    NotExact(String),

    #[error("operation requires a prime field, got {0}")]
    UnsupportedField(String),

    #[error("characteristic {characteristic} too small for dimension {dim}")]
    CharacteristicTooSmall { characteristic: u64, dim: usize },

    #[error("representation is decomposable: {0}")]
    Decomposable(String),

    #[error("representation is projective: {0}")]
    Projective(String),

    #[error("representation is injective: {0}")]
    Injective(String),

    #[error("the two routes to {op} disagree: {detail}")]
    RouteMismatch { op: &'static str, detail: String },

    #[error("decomposition failed: {0}")]
    DecompositionFailed(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("budget exceeded: {0}")]
    BudgetExceeded(String),

    #[error("non-commuting tower: {0}")]
    NonCommuting(String),

    #[error("internal error: {0}")]
    Internal(String),

    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
}

pub type Result<T> = std::result::Result<T, ArsError>;
