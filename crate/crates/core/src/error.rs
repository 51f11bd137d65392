use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// The operation is undefined at this input (log of zero, `0^α` with `α ≤ 0`, ...).
    #[error("domain error: {0}")]
    Domain(String),

    #[error("value {index} of the first set has no partner within tolerance")]
    NoMatch { index: usize },

    #[error("value {index} of the first set has several partners within tolerance")]
    AmbiguousMatch { index: usize },

    #[error("degenerate input: {0}")]
    DegenerateInput(String),

    /// The shear probe saw a single output sheet.
    #[error("probe failed: {0}")]
    ProbeFailed(String),

    #[error("invalid configuration: {0}")]
    InvalidConfig(String),

    #[error("parse error: {0}")]
    Parse(String),
}

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }
}
