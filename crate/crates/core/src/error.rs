use thiserror::Error;

use crate::exactpoly::TruncationContext;

/// Errors raised by the library.
#[derive(Debug, Error)]
pub enum KhopfError {
    #[error("truncation contexts differ: {0} vs {1}")]
    ContextMismatch(TruncationContext, TruncationContext),

    #[error("invalid truncation context: {0}")]
    InvalidContext(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("invalid index: {0}")]
    InvalidIndex(String),

    #[error("input is not {kind}: coefficients of {left} and {right} differ")]
    NotInvariant {
        kind: &'static str,
        left: String,
        right: String,
    },

    #[error("expansion in family {family} failed: unexplained term at {witness}")]
    ExpansionFailed { family: String, witness: String },

    #[error("truncation inadequate: {0}")]
    Inadequate(String),

    #[error("identity violated: {0}")]
    IdentityViolation(String),

    #[error("structure constant is not an integer: {0}")]
    NonInteger(String),

    #[error("cache error: {0}")]
    Cache(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, KhopfError>;
