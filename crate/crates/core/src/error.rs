use thiserror::Error;

use crate::element::Flavor;

/// Errors raised by the monoid engine.
///
/// Domain errors always name the violated precondition so that callers
/// chaining many factorization steps can tell exactly which guard fired.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MunnError {
    #[error("flavor mismatch: {left} vs {right}")]
    FlavorMismatch { left: Flavor, right: Flavor },

    #[error("result leaves flavor {flavor}: {detail}")]
    FlavorViolation { flavor: Flavor, detail: String },

    #[error("unsupported flavor {flavor} for {operation}")]
    UnsupportedFlavor {
        flavor: Flavor,
        operation: &'static str,
    },

    #[error("precondition `{name}` violated: {detail}")]
    Precondition { name: &'static str, detail: String },

    #[error("postcondition `{name}` failed: {detail}")]
    Postcondition { name: &'static str, detail: String },

    #[error("parse error: {0}")]
    Parse(String),

    #[error("invalid alphabet: {0}")]
    Alphabet(String),

    #[error("resource cap exceeded: {0}")]
    ResourceCap(String),
}

impl MunnError {
    pub(crate) fn pre(name: &'static str, detail: impl Into<String>) -> Self {
        MunnError::Precondition {
            name,
            detail: detail.into(),
        }
    }

    pub(crate) fn post(name: &'static str, detail: impl Into<String>) -> Self {
        MunnError::Postcondition {
            name,
            detail: detail.into(),
        }
    }

    /// True for errors caused by exhausting a search budget.
    pub fn is_resource(&self) -> bool {
        matches!(self, MunnError::ResourceCap(_))
    }
}

pub type Result<T> = std::result::Result<T, MunnError>;
