use thiserror::Error;

#[derive(Debug, Error)]
pub enum BellError {
    #[error("party count {n} outside supported range {min}..={max}")]
    Size { n: usize, min: usize, max: usize },

    #[error("dimension mismatch: {0}")]
    Dimension(String),

    #[error("degenerate input: affine dimension deficit {deficit} (expected {expected})")]
    Degenerate { expected: usize, deficit: usize },

    #[error("classical bound missing; compute it first")]
    MissingBound,

    #[error("facet enumeration for n >= 6 refused: exact enumeration is intractable at this size")]
    Intractable,

    #[error("resource cap exceeded: {0}")]
    ResourceCap(String),

    #[error("bad input: {0}")]
    BadInput(String),

    #[error("internal error: {0}")]
    Internal(String),
}

impl From<serde_json::Error> for BellError {
    fn from(e: serde_json::Error) -> Self {
        BellError::BadInput(e.to_string())
    }
}

impl From<std::io::Error> for BellError {
    fn from(e: std::io::Error) -> Self {
        BellError::BadInput(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, BellError>;
