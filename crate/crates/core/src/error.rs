use thiserror::Error;

/// Errors produced by the covariance-matrix algebra and everything built on it.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// An argument lies outside the domain of the operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// A covariance matrix violates the uncertainty principle.
    #[error("unphysical state: {0}")]
    Unphysical(String),

    /// A decomposition failed to reach the required accuracy.
    #[error("numerical failure: {0}")]
    Numerical(String),

    /// The closed-form expression is only stated for a narrower class of inputs.
    #[error("unsupported formula: {0}")]
    UnsupportedFormula(String),

    /// A Monte Carlo trial failed; carries enough context to replay it.
    #[error("trial {index} (seed {seed}) failed: {source}")]
    Trial {
        index: u64,
        seed: u64,
        source: Box<Error>,
    },
}

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    /// The innermost error, looking through [`Error::Trial`] wrappers.
    pub fn root(&self) -> &Error {
        match self {
            Error::Trial { source, .. } => source.root(),
            other => other,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
