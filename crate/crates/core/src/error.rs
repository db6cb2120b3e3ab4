use thiserror::Error;

/// Errors raised by the Casimir force computations.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum CasimirError {
    #[error("parameter `{name}` out of domain: {reason}")]
    Domain { name: &'static str, reason: String },

    #[error("quadrature did not converge: value {value:e}, error estimate {error:e}")]
    Quadrature { value: f64, error: f64 },

    #[error("series did not converge after {terms} terms")]
    Series { terms: usize },

    #[error("non-finite sample while differentiating at {at:e}")]
    NonFinite { at: f64 },

    #[error("absorption table, line {line}: {reason}")]
    Table { line: usize, reason: String },

    #[error("expansion outside its range of validity: {0}")]
    Expansion(String),
}

pub type Result<T> = std::result::Result<T, CasimirError>;

pub(crate) fn domain(name: &'static str, reason: impl Into<String>) -> CasimirError {
    CasimirError::Domain {
        name,
        reason: reason.into(),
    }
}
