//! Crate-wide error type.

use thiserror::Error;

/// Errors reported by simulator operations.
#[derive(Debug, Clone, Error)]
pub enum Error {
    /// A constructor or operation received a value outside its contract.
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    /// Two objects that must live on the same chain do not.
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    /// The iterative propagator exhausted its step budget before reaching
    /// the requested accuracy.
    #[error("propagator did not converge: {0}")]
    NonConvergence(String),

    /// An inverse problem has no solution for the given inputs.
    #[error("no solution: {0}")]
    NoSolution(String),

    /// The LAPACK backend reported a failure.
    #[error("linear algebra backend failure: {0}")]
    Backend(String),
}

pub type Result<T> = std::result::Result<T, Error>;
