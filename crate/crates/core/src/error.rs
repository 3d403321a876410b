use thiserror::Error;

/// Failure modes shared by every module.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// An argument outside the mathematical or physical domain of an operation.
    #[error("{quantity} out of domain: {detail}")]
    Domain {
        quantity: &'static str,
        detail: String,
    },
    /// A root or minimum could not be bracketed or refined.
    #[error("solver failure: {0}")]
    Solver(String),
    /// Quadrature or another numerical procedure failed to converge.
    #[error("numerical failure: {0}")]
    Numerical(String),
    /// Malformed user input (profile files, configs, flags).
    #[error("invalid input: {0}")]
    Input(String),
}

impl Error {
    pub(crate) fn domain(quantity: &'static str, detail: impl Into<String>) -> Self {
        Error::Domain {
            quantity,
            detail: detail.into(),
        }
    }

    /// True for errors caused by what the caller supplied rather than by a numerical breakdown.
    pub fn is_input_error(&self) -> bool {
        matches!(self, Error::Domain { .. } | Error::Input(_))
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
