use thiserror::Error;

/// Failure modes shared by every module of the crate.
#[derive(Debug, Clone, Error, PartialEq)]
pub enum MonoError {
    /// Input outside the mathematical domain of an operation (zero coordinate,
    /// singular matrix, non-squarefree polynomial, ...).
    #[error("domain error: {0}")]
    Domain(String),

    /// Malformed textual or JSON input.
    #[error("parse error: {0}")]
    Parse(String),

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    /// The input is valid but outside what the exact algorithms support.
    #[error("unsupported: {0}")]
    Unsupported(String),

    /// Two eigenvalue moduli could not be separated or proven equal.
    #[error("indistinguishable moduli: {first} vs {second}")]
    IndistinguishableModuli { first: String, second: String },

    /// A configured budget (words, bits, iterations) was exhausted.
    #[error("budget exhausted: {0}")]
    Budget(String),
}

impl MonoError {
    pub fn domain(msg: impl Into<String>) -> Self {
        MonoError::Domain(msg.into())
    }

    pub fn unsupported(msg: impl Into<String>) -> Self {
        MonoError::Unsupported(msg.into())
    }

    pub fn budget(msg: impl Into<String>) -> Self {
        MonoError::Budget(msg.into())
    }

    /// Stable machine-readable kind tag.
    pub fn kind(&self) -> &'static str {
        match self {
            MonoError::Domain(_) => "domain",
            MonoError::Parse(_) => "parse",
            MonoError::DimensionMismatch { .. } => "dimension_mismatch",
            MonoError::Unsupported(_) => "unsupported",
            MonoError::IndistinguishableModuli { .. } => "indistinguishable_moduli",
            MonoError::Budget(_) => "budget",
        }
    }
}

pub type Result<T> = std::result::Result<T, MonoError>;
