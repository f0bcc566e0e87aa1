//! Model files, command dispatch and reports for the `tannaka` binary.

pub mod dto;
pub mod export;
pub mod model;
pub mod report;
pub mod run;

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CliError {
    /// Malformed or inconsistent input, with the offending field path.
    #[error("{path}: {message}")]
    Parse { path: String, message: String },
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("{0}")]
    Io(String),
}

impl CliError {
    pub fn parse(path: impl Into<String>, message: impl Into<String>) -> Self {
        CliError::Parse { path: path.into(), message: message.into() }
    }

    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Parse { .. } | CliError::Io(_) => 2,
            CliError::Unsupported(_) => 3,
        }
    }
}

/// Exit codes of the binary.
pub mod exit {
    pub const PASS: i32 = 0;
    pub const FAILURE: i32 = 1;
    pub const PARSE: i32 = 2;
    pub const UNSUPPORTED: i32 = 3;
}
