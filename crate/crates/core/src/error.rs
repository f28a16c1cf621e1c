use thiserror::Error;

/// Every failure the workbench can report.
///
/// Variants map onto the CLI exit codes: [`Error::Capacity`] is reported
/// separately from the rest so callers can tell "too big to check" apart
/// from "wrong".
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("label {label} out of range [1, {max}]")]
    Range { label: usize, max: usize },

    #[error("shape error: {0}")]
    Shape(String),

    #[error("validation error: {rule}")]
    Validation { rule: String },

    #[error("objective mismatch: {0}")]
    ObjectiveMismatch(String),

    #[error("degenerate instance: {0}")]
    Degenerate(String),

    #[error("capacity exceeded: {what} needs {needed}, cap is {cap}")]
    Capacity {
        what: String,
        needed: String,
        cap: u64,
    },

    #[error("structure error: {0}")]
    Structure(String),

    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("usage error: {0}")]
    Usage(String),

    #[error("internal error: {0}")]
    Internal(String),
}

impl Error {
    pub(crate) fn validation(rule: impl Into<String>) -> Self {
        Error::Validation { rule: rule.into() }
    }

    pub(crate) fn capacity(what: impl Into<String>, needed: impl ToString, cap: u64) -> Self {
        Error::Capacity {
            what: what.into(),
            needed: needed.to_string(),
            cap,
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
