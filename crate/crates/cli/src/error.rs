use std::path::PathBuf;

use thiserror::Error;

/// Failures surfaced by the command-line front end.
#[derive(Debug, Error)]
pub enum CliError {
    /// Bad flags or flag values; exit code 2.
    #[error("invalid value for {flag}: {message}")]
    Usage { flag: &'static str, message: String },

    /// A failure inside one of the library stages; exit code 1.
    #[error("{module}: {source}")]
    Internal {
        module: &'static str,
        #[source]
        source: polypi_core::Error,
    },

    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("catalog cache {path}: {message}")]
    Cache { path: PathBuf, message: String },

    #[error("report encoding: {0}")]
    Encode(String),
}

impl CliError {
    pub fn usage(flag: &'static str, message: impl Into<String>) -> Self {
        CliError::Usage {
            flag,
            message: message.into(),
        }
    }

    pub fn internal(module: &'static str) -> impl FnOnce(polypi_core::Error) -> CliError {
        move |source| CliError::Internal { module, source }
    }

    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage { .. } => 2,
            _ => 1,
        }
    }
}
