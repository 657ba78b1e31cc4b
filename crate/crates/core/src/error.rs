use thiserror::Error;

/// Errors produced by the library.
///
/// The variants line up with the CLI exit codes: `Domain`, `Capacity`,
/// `UnsupportedShape` and `Precondition` are caller errors, `Convergence`
/// and `Inconsistency` come out of the numerical routines.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),

    #[error("capacity exceeded: {what} is {got}, limit is {limit}")]
    Capacity {
        what: &'static str,
        got: u64,
        limit: u64,
    },

    #[error("unsupported factorization shape for {n}: {reason}")]
    UnsupportedShape { n: u64, reason: String },

    #[error("precondition failed: {0}")]
    Precondition(String),

    #[error("root finder did not converge after {iterations} iterations (unconverged indices: {unconverged:?})")]
    Convergence {
        iterations: usize,
        unconverged: Vec<usize>,
    },

    #[error("inconsistent results: {0}")]
    Inconsistency(String),
}

impl Error {
    /// Short machine-readable tag for the error kind.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::Domain(_) => "domain",
            Error::Capacity { .. } => "capacity",
            Error::UnsupportedShape { .. } => "unsupported_shape",
            Error::Precondition(_) => "precondition",
            Error::Convergence { .. } => "convergence",
            Error::Inconsistency(_) => "inconsistency",
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
