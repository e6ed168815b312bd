use std::io;

use thiserror::Error;

/// Everything that maps to exit code 2.
#[derive(Debug, Error)]
pub enum CliError {
    #[error("{path}: {source}")]
    Io {
        path: String,
        #[source]
        source: io::Error,
    },
    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("invalid configuration: {0}")]
    Invalid(String),
    #[error("usage: {0}")]
    Usage(String),
}

impl From<pathinfo_core::Error> for CliError {
    fn from(e: pathinfo_core::Error) -> Self {
        CliError::Invalid(e.to_string())
    }
}
