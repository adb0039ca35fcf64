use thiserror::Error;

/// Failure modes shared by every numerical routine in the crate.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum QError {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("series failed to converge within {terms} terms")]
    Divergence { terms: usize },
    #[error("denominator vanishes: {0}")]
    Pole(String),
    #[error("outside domain: {0}")]
    Domain(String),
    #[error("iteration did not converge: {0}")]
    NoConvergence(String),
    #[error("eigensolver failure: {0}")]
    Eigen(String),
}

pub type QResult<T> = Result<T, QError>;
