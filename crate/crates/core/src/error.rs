use thiserror::Error;

/// Errors raised by the distribution kernels, samplers and diagnostics.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum GigError {
    /// An argument lies outside the domain of the operation.
    #[error("domain error: {0}")]
    Domain(String),
    /// A numerical routine failed to converge or produced a non-finite value.
    #[error("numeric error: {0}")]
    Numeric(String),
    /// The input is degenerate for the requested statistic (e.g. a constant chain).
    #[error("degenerate input: {0}")]
    Degenerate(String),
    /// A size or shape precondition was violated.
    #[error("precondition violated: {0}")]
    Precondition(String),
}

pub type Result<T, E = GigError> = std::result::Result<T, E>;

pub(crate) fn domain<T>(msg: impl Into<String>) -> Result<T> {
    Err(GigError::Domain(msg.into()))
}
