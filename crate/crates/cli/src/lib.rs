//! Command-line front end for `paintwave-core`.
//!
//! Exit codes: 0 success, 2 invalid configuration or arguments, 3 no
//! propagation path, 4 I/O failure.

pub mod commands;
pub mod output;
pub mod run_config;

use std::path::PathBuf;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Config(paintwave_core::Error),
    #[error("{0}")]
    NoPath(paintwave_core::Error),
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Config(_) => 2,
            CliError::NoPath(_) => 3,
            CliError::Io { .. } => 4,
        }
    }

    pub fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        CliError::Io {
            path: path.into(),
            source,
        }
    }
}

impl From<paintwave_core::Error> for CliError {
    fn from(e: paintwave_core::Error) -> Self {
        match e {
            paintwave_core::Error::NoPath => CliError::NoPath(e),
            other => CliError::Config(other),
        }
    }
}
