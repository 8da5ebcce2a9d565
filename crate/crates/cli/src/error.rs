use std::path::PathBuf;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("config {path}: {message}")]
    Config { path: PathBuf, message: String },
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("{path}: {source}")]
    Csv {
        path: PathBuf,
        #[source]
        source: csv::Error,
    },
    #[error(transparent)]
    Core(#[from] rossby_core::Error),
}

impl CliError {
    /// 1 for numerical and I/O failures, 2 for anything the caller got wrong.
    pub fn exit_code(&self) -> u8 {
        match self {
            Self::Usage(_) | Self::Config { .. } => 2,
            Self::Io { .. } | Self::Csv { .. } => 1,
            Self::Core(e) if e.is_numerical() => 1,
            Self::Core(_) => 2,
        }
    }
}

pub type CliResult<T> = std::result::Result<T, CliError>;
