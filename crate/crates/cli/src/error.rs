use std::path::PathBuf;

use thiserror::Error;

/// Failures of a CLI invocation, each tied to a process exit code.
#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),

    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("verification failed: {0}")]
    Verification(String),

    #[error(transparent)]
    Compute(molrate::Error),
}

impl CliError {
    pub const EXIT_FAILURE: i32 = 1;
    pub const EXIT_IO: i32 = 2;
    pub const EXIT_USAGE: i32 = 64;

    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => Self::EXIT_USAGE,
            CliError::Io { .. } => Self::EXIT_IO,
            CliError::Verification(_) | CliError::Compute(_) => Self::EXIT_FAILURE,
        }
    }

    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        CliError::Io { path: path.into(), source }
    }
}

impl From<molrate::Error> for CliError {
    /// Bad inputs surface as usage errors; numerical failures do not.
    fn from(e: molrate::Error) -> Self {
        match e {
            molrate::Error::Config(_) | molrate::Error::Domain { .. } | molrate::Error::LengthMismatch { .. } => {
                CliError::Usage(e.to_string())
            }
            other => CliError::Compute(other),
        }
    }
}
