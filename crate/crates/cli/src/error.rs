use std::path::PathBuf;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error(transparent)]
    Core(#[from] fairshare::Error),

    #[error("cannot read {}: {source}", path.display())]
    Read {
        path: PathBuf,
        source: std::io::Error,
    },

    #[error("cannot write {}: {source}", path.display())]
    Write {
        path: PathBuf,
        source: std::io::Error,
    },

    #[error("{0}")]
    Usage(String),
}

impl CliError {
    /// 2 for bad input, 3 for a size guard, 4 for a method that does not fit the instance.
    pub fn exit_code(&self) -> u8 {
        use fairshare::Error as E;
        match self {
            CliError::Core(E::Guard { .. }) => 3,
            CliError::Core(E::Mismatch(_)) => 4,
            CliError::Core(_) | CliError::Read { .. } | CliError::Write { .. } | CliError::Usage(_) => 2,
        }
    }
}

pub type CliResult<T> = Result<T, CliError>;
