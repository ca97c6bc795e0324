use fingeom::Error;
use thiserror::Error;

/// Process exit codes.
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_VALIDATION: i32 = 3;
pub const EXIT_MATH: i32 = 4;
pub const EXIT_IO: i32 = 1;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("usage: {0}")]
    Usage(String),
    #[error("invalid input: {0}")]
    Validation(String),
    #[error("{0}")]
    Math(Error),
    #[error("{context}: {source}")]
    Io {
        context: String,
        #[source]
        source: std::io::Error,
    },
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => EXIT_USAGE,
            CliError::Validation(_) => EXIT_VALIDATION,
            CliError::Math(_) => EXIT_MATH,
            CliError::Io { .. } => EXIT_IO,
        }
    }

    pub fn io(context: impl Into<String>, source: std::io::Error) -> Self {
        CliError::Io {
            context: context.into(),
            source,
        }
    }
}

impl From<Error> for CliError {
    /// Bad groups and classes are input validation failures; everything else
    /// is a mathematical precondition.
    fn from(e: Error) -> Self {
        match e {
            Error::InvalidGroup(_) | Error::UnknownElement(_) | Error::NonCyclicClass(_) => {
                CliError::Validation(e.to_string())
            }
            other => CliError::Math(other),
        }
    }
}
