use std::path::PathBuf;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    /// Bad config, flag value, or parameter. Exit code 2.
    #[error("{0}")]
    Input(String),
    /// Unreadable config or unwritable output. Exit code 3.
    #[error("{}: {source}", path.display())]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Input(_) => 2,
            CliError::Io { .. } => 3,
        }
    }

    pub(crate) fn input(field: &str, err: impl std::fmt::Display) -> Self {
        CliError::Input(format!("{field}: {err}"))
    }
}
