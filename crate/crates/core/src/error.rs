use std::fmt::Write as _;
use std::path::Path;

/// Errors produced by the measurement pipeline.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    /// A run log failed to parse. `line` is 1-based.
    #[error("{path}:{line}: {message}")]
    Parse {
        path: String,
        line: usize,
        message: String,
    },

    /// Two files map to the same (algorithm, function, dimension, instance).
    #[error("duplicate run for {key} in {first} and {second}")]
    DuplicateTrace {
        key: String,
        first: String,
        second: String,
    },

    #[error("no runs found for {0}")]
    EmptyGroup(String),

    /// Simulated restarts need at least one successful trial.
    #[error("runtime undefined: no successful trial in the entry")]
    UndefinedRuntime,

    #[error("inconsistent table grids: {0}")]
    GridMismatch(String),

    #[error("{path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },

    #[error("{}", format_multiple(.0))]
    Multiple(Vec<Error>),
}

impl Error {
    pub fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidArgument(msg.into())
    }

    pub(crate) fn parse(line: usize, message: impl Into<String>) -> Self {
        Error::Parse {
            path: "<input>".to_owned(),
            line,
            message: message.into(),
        }
    }

    /// Rewrites the path of a parse error once the source file is known.
    pub fn with_path(self, path: &Path) -> Self {
        match self {
            Error::Parse { line, message, .. } => Error::Parse {
                path: path.display().to_string(),
                line,
                message,
            },
            other => other,
        }
    }
}

fn format_multiple(errors: &[Error]) -> String {
    let mut out = format!("{} error(s):", errors.len());
    for e in errors {
        let _ = write!(out, "\n  {e}");
    }
    out
}

pub type Result<T> = std::result::Result<T, Error>;
