use thiserror::Error;

/// Errors produced by the library.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum WittError {
    #[error("invalid graph: {0}")]
    InvalidGraph(String),

    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },

    #[error("size cap exceeded: {what} = {value} > {limit}")]
    CapExceeded {
        what: &'static str,
        value: usize,
        limit: usize,
    },

    #[error("argument must be positive: {0}")]
    ZeroArgument(&'static str),

    #[error("non-exact division: {0}")]
    NonExactDivision(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("not enough input values: need {needed}, got {got}")]
    Insufficient { needed: usize, got: usize },
}

pub type Result<T> = std::result::Result<T, WittError>;
