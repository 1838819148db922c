use thiserror::Error;

use crate::report::ValidationReport;

#[derive(Debug, Error)]
pub enum Error {
    /// Dimensions or tensor shapes do not fit together.
    #[error("shape mismatch: {0}")]
    Shape(String),

    #[error("capacity exceeded: {0}")]
    Capacity(String),

    /// A structure failed its defining identities.
    #[error("{what} fails its axioms ({} violation(s))", report.violations.len())]
    Axioms { what: String, report: ValidationReport },

    /// A precondition of the operation does not hold.
    #[error("precondition failed: {0}")]
    Precondition(String),

    #[error("illegal bidegree ({m},{n}): {reason}")]
    Bidegree { m: usize, n: usize, reason: String },

    #[error("parse error: {0}")]
    Parse(String),

    /// A post-construction self-check failed; indicates a bug.
    #[error("internal verification failed: {0}")]
    Internal(String),
}

impl Error {
    pub fn axioms(what: impl Into<String>, report: ValidationReport) -> Self {
        Error::Axioms { what: what.into(), report }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
