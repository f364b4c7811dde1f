use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid input: {0}")]
    InvalidInput(String),

    /// A size parameter exceeded the configured cap for an operation.
    #[error("{operation}: requested size {requested} exceeds cap {cap}")]
    ResourceLimit {
        operation: &'static str,
        requested: usize,
        cap: usize,
    },

    /// Power iteration stopped at the iteration cap before reaching the tolerance.
    #[error("no convergence after {iterations} iterations (last estimate {last_estimate}, last change {last_change:e})")]
    NonConvergence {
        iterations: usize,
        last_estimate: f64,
        last_change: f64,
    },
}

impl Error {
    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidInput(msg.into())
    }
}
