//! Error type shared by every module of the engine.

use thiserror::Error;

/// Errors fall into two families: *construction/input* errors (bad ring
/// parameters, malformed tables, cap violations, parse failures) and
/// *precondition* errors (an operation was called on a value outside its
/// stated domain, e.g. the zero polynomial or an empty set). The CLI maps
/// the first family to exit code 1 and the second to exit code 2.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid ring parameters: {0}")]
    InvalidSpec(String),

    #[error("element cap exceeded: |R| = {size} > cap {cap}")]
    CapExceeded { size: u128, cap: u64 },

    #[error("axiom violation: {0}")]
    AxiomViolation(String),

    #[error("endomorphism law violation: {0}")]
    EndoViolation(String),

    #[error("ring mismatch: {0} vs {1}")]
    RingMismatch(String, String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("search budget exceeded: {0}")]
    Budget(String),
}

impl Error {
    /// True for domain-precondition failures (CLI exit code 2); false for
    /// configuration and construction errors (exit code 1).
    pub fn is_precondition(&self) -> bool {
        matches!(self, Error::Precondition(_))
    }
}

pub type Result<T> = std::result::Result<T, Error>;
