use thiserror::Error;

/// Errors raised by the numerical routines.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    /// An argument is outside the domain of the operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// An iterative method ran out of iterations. The final bracket is kept
    /// for diagnostics.
    #[error("no convergence after {iterations} iterations (bracket [{lo}, {hi}])")]
    Convergence { iterations: usize, lo: f64, hi: f64 },

    /// A file or document could not be decoded.
    #[error("parse error in {context}: {message}")]
    Parse { context: String, message: String },
}

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
