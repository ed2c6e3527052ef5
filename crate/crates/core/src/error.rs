use std::io;

use thiserror::Error;

pub type Result<T, E = CgaError> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum CgaError {
    /// An argument lies outside the domain where the operation is defined.
    #[error("domain error: {0}")]
    Domain(String),

    /// A brute-force or experiment run would exceed its work budget.
    #[error("work budget exceeded: {context} needs {cost} elementary checks (budget {budget})")]
    Budget {
        context: String,
        cost: u128,
        budget: u128,
    },

    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error(transparent)]
    Io(#[from] io::Error),
}

impl CgaError {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        CgaError::Domain(msg.into())
    }

    pub(crate) fn parse(line: usize, msg: impl Into<String>) -> Self {
        CgaError::Parse {
            line,
            message: msg.into(),
        }
    }
}
