//! Error taxonomy shared by every module of the crate.

use thiserror::Error;

/// Errors surfaced by the analytic and stochastic operations.
#[derive(Debug, Clone, Error, PartialEq)]
pub enum DhgError {
    /// A gamma-type function was evaluated at a nonpositive-integer pole.
    #[error("pole error: {0}")]
    Pole(String),

    /// A computed magnitude left the representable range of `f64`.
    #[error("overflow error: {0}")]
    Overflow(String),

    /// A series or iterative scheme failed to reach its tolerance.
    #[error("convergence error: {0}")]
    Convergence(String),

    /// An argument lies outside the domain of the requested operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// The parameter set violates the preconditions of the operation.
    #[error("parameter error: {0}")]
    Parameter(String),
}

impl DhgError {
    /// Short machine-readable tag, used by the CLI error stream.
    pub fn kind(&self) -> &'static str {
        match self {
            DhgError::Pole(_) => "pole",
            DhgError::Overflow(_) => "overflow",
            DhgError::Convergence(_) => "convergence",
            DhgError::Domain(_) => "domain",
            DhgError::Parameter(_) => "parameter",
        }
    }
}

pub type Result<T> = std::result::Result<T, DhgError>;
