//! Crate-wide error type.

use thiserror::Error;

#[derive(Debug, Clone, Error)]
pub enum Error {
    /// A parameter is outside the mathematical domain of the function
    /// (e.g. a Lerch parameter at a pole).
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    /// An argument violates a documented precondition (interval ordering,
    /// support membership, positivity, ...).
    #[error("domain error: {0}")]
    Domain(String),

    /// An iterative scheme (series or adaptive quadrature) hit its cap
    /// before reaching the requested tolerance.
    #[error("failed to converge: {0}")]
    NonConvergent(String),

    /// The positive-secrecy region is empty for the given geometry.
    #[error("degenerate secrecy region: {0}")]
    DegenerateRegion(String),

    /// Bad run configuration (CLI flags or config file).
    #[error("config error: {0}")]
    Config(String),
}

pub type Result<T> = std::result::Result<T, Error>;
