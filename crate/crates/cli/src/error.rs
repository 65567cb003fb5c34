use std::path::PathBuf;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Config(String),

    #[error("cannot write {}: {source}", path.display())]
    Output {
        path: PathBuf,
        source: std::io::Error,
    },

    #[error("numerical failure: {0}")]
    Numerical(ptdimer_core::Error),
}

impl From<ptdimer_core::Error> for CliError {
    fn from(e: ptdimer_core::Error) -> Self {
        match e {
            ptdimer_core::Error::InvalidScan(_) | ptdimer_core::Error::NonFiniteParam { .. } => {
                CliError::Config(e.to_string())
            }
            other => CliError::Numerical(other),
        }
    }
}

impl CliError {
    /// 2 for anything the user can fix in the configuration, 3 when the
    /// numerics fail.
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Config(_) | CliError::Output { .. } => 2,
            CliError::Numerical(_) => 3,
        }
    }
}
