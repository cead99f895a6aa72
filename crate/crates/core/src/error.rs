use thiserror::Error;

/// Errors raised by the numerical routines and the verification harness.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),

    #[error("evaluation failed at t = {t}: {reason}")]
    Evaluation { t: f64, reason: String },

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("shape mismatch: {0}")]
    Shape(String),

    #[error("eigensolver did not converge after {sweeps} sweeps (off-diagonal norm {residual:e})")]
    NoConvergence { sweeps: usize, residual: f64 },

    #[error("internal consistency check failed: {0}")]
    Consistency(String),

    #[error("generator exhausted after {attempts} attempts: {what}")]
    GeneratorExhausted { attempts: usize, what: String },

    #[error("unknown suite `{0}`")]
    UnknownSuite(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn domain(msg: impl Into<String>) -> Error {
    Error::Domain(msg.into())
}

pub(crate) fn precondition(msg: impl Into<String>) -> Error {
    Error::Precondition(msg.into())
}
