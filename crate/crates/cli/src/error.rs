use thiserror::Error;

/// Exit status 2 for malformed input or exceeded bounds, 1 for a failed law.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CliError {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("unknown reference: {0}")]
    UnknownReference(String),
    #[error("partial table `{symbol}`: no entry for ({})", .missing.join(", "))]
    PartialTable { symbol: String, missing: Vec<String> },
    #[error("too large: {0}")]
    TooLarge(String),
    #[error("{0}")]
    Io(String),
    #[error("{check}: {witness}")]
    Violation { check: String, witness: String },
}

impl CliError {
    pub fn violation(check: impl Into<String>, witness: impl ToString) -> Self {
        CliError::Violation { check: check.into(), witness: witness.to_string() }
    }

    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Violation { .. } => 1,
            _ => 2,
        }
    }
}
