use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("parse error at line {line}, column {col}: {msg}")]
    Parse { line: usize, col: usize, msg: String },

    #[error("ring mismatch: {0}")]
    RingMismatch(String),

    #[error("resource limit exceeded: {0}")]
    ResourceLimit(String),

    #[error("timeout after {0:?}")]
    Timeout(std::time::Duration),

    #[error("input is not graded: {0}")]
    NotGraded(String),

    #[error("input is not homogeneous: {0}")]
    NotHomogeneous(String),

    #[error("precondition failed: {0}")]
    Precondition(String),

    #[error("invalid input: {0}")]
    Invalid(String),
}

impl Error {
    /// True for failures caused by the step budget or the wall clock.
    pub fn is_budget(&self) -> bool {
        matches!(self, Error::ResourceLimit(_) | Error::Timeout(_))
    }
}

pub type Result<T> = std::result::Result<T, Error>;
