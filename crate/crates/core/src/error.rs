use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

/// Failure modes shared by every numerical route in the crate.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("gamma function pole at x = {0}")]
    GammaPole(f64),

    #[error("domain error: {0}")]
    Domain(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("series diverges: {0}")]
    Divergence(String),

    #[error("terms do not alternate with decreasing magnitude (index {index})")]
    NonAlternating { index: usize },

    #[error("no convergence after {iterations} iterations (last change {last_delta:e})")]
    NonConvergence { iterations: usize, last_delta: f64 },

    #[error("integrand returned a non-finite value at x = {0}")]
    IntegrandFailure(f64),

    #[error("i/o failure on {path}: {message}")]
    Io { path: String, message: String },
}

impl Error {
    pub(crate) fn precondition(msg: impl Into<String>) -> Self {
        Error::Precondition(msg.into())
    }

    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }
}
