use num_complex::Complex64;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("root solver did not converge after {iterations} iterations")]
    SolverFailure {
        iterations: usize,
        best: Vec<Complex64>,
    },
    #[error("degenerate input: {0}")]
    Degenerate(String),
    #[error("invalid branch: {0}")]
    InvalidBranch(String),
    #[error("capacity exceeded: {what} (limit {limit}, requested {requested})")]
    Capacity {
        what: &'static str,
        limit: usize,
        requested: usize,
    },
    #[error("domain error: {0}")]
    Domain(String),
    #[error("trace failed: {0}")]
    Trace(String),
    #[error("inconsistent trace: {0}")]
    Inconsistent(String),
    #[error("non-finite value: {0}")]
    NonFinite(String),
}

impl Error {
    /// True for failures caused by floating-point behaviour rather than bad input.
    pub fn is_numeric(&self) -> bool {
        matches!(
            self,
            Error::SolverFailure { .. } | Error::Trace(_) | Error::Inconsistent(_) | Error::NonFinite(_)
        )
    }
}

pub type Result<T> = std::result::Result<T, Error>;
