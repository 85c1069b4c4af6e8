use std::path::PathBuf;

/// Failures that stop a command before any verdict is produced.
#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("configuration error: {0}")]
    Config(String),
    #[error("cannot read {path}: {source}")]
    Read {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("invalid INI file: {0}")]
    Ini(#[from] ini::ParseError),
    #[error("cannot write report: {0}")]
    Io(#[from] std::io::Error),
    #[error("cannot write CSV: {0}")]
    Csv(#[from] csv::Error),
    #[error(transparent)]
    Core(#[from] ahgraph_core::Error),
}

impl CliError {
    pub fn config(msg: impl Into<String>) -> Self {
        CliError::Config(msg.into())
    }

    /// Exit status: 2 for anything the user can fix in the invocation.
    pub fn exit_code(&self) -> u8 {
        2
    }
}

pub type CliResult<T> = std::result::Result<T, CliError>;
