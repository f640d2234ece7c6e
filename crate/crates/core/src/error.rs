use alloc::string::String;

/// Errors raised by evaluations in this crate.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    /// An argument lies outside the domain of the operation.
    #[error("domain error: {0}")]
    Domain(String),
    /// An infinite product or series did not reach the truncation threshold.
    #[error("no convergence after {terms} terms: {what}")]
    Convergence { what: String, terms: usize },
    /// Evaluation too close to a pole or a zero of a denominator.
    #[error("singularity: {0}")]
    Singularity(String),
    /// Matrix inversion rejected by the condition-number guard.
    #[error("ill-conditioned inversion (condition estimate {condition:e})")]
    Conditioning { condition: f64 },
    /// Integration circle grazes a declared pole radius.
    #[error("contour radius {radius} within {gap:e} of pole radius {pole}")]
    Contour { radius: f64, pole: f64, gap: f64 },
    /// A bracket produced a mode index outside the configured window.
    #[error("mode index {index} outside window |n| <= {window}")]
    Window { index: i64, window: i64 },
    /// Invalid configuration values.
    #[error("invalid configuration: {0}")]
    Config(String),
}

pub type Result<T> = core::result::Result<T, Error>;

pub(crate) fn domain(msg: impl Into<String>) -> Error {
    Error::Domain(msg.into())
}

pub(crate) fn singular(msg: impl Into<String>) -> Error {
    Error::Singularity(msg.into())
}
