use std::path::PathBuf;

/// Errors raised by the library and the `mdlab` binary.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    /// An argument is outside its documented range or could not be parsed.
    #[error("invalid parameter: {0}")]
    Parameter(String),

    /// An operation was called on input that violates its precondition.
    #[error("precondition violated: {0}")]
    Precondition(String),

    /// The requested problem size exceeds a configured budget.
    #[error("resource limit exceeded: {0}")]
    Resource(String),

    /// Not enough precision to certify the requested continued-fraction digits.
    #[error("certification failed: {0}")]
    Certification(String),

    /// A least-squares fit has no spread in its abscissae.
    #[error("degenerate fit: {0}")]
    DegenerateFit(String),

    #[error("i/o error on {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),
}

impl Error {
    pub(crate) fn param(msg: impl Into<String>) -> Self {
        Error::Parameter(msg.into())
    }

    pub(crate) fn pre(msg: impl Into<String>) -> Self {
        Error::Precondition(msg.into())
    }

    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }

    /// Process exit code used by the command-line front end.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Parameter(_) | Error::Precondition(_) | Error::DegenerateFit(_) => 2,
            Error::Resource(_) | Error::Certification(_) => 3,
            Error::Io { .. } | Error::Json(_) | Error::Csv(_) => 1,
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
