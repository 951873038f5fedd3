use thiserror::Error;

/// Errors raised across the library.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("unsupported: {0}")]
    Unsupported(String),

    /// A closed-form approximation was asked for outside the parameter
    /// regime it was derived for.
    #[error("regime violation: {0}")]
    Regime(String),

    #[error("convergence failure: {0}")]
    Convergence(String),

    #[error("sample is not over-dispersed (variance {variance} <= mean {mean})")]
    NotOverDispersed { mean: f64, variance: f64 },
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn invalid(msg: impl Into<String>) -> Error {
    Error::InvalidInput(msg.into())
}
