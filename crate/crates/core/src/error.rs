use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    /// Shapes, indices or groups that do not fit together.
    #[error("structural error: {0}")]
    Structural(String),

    /// Malformed input document; `path` is a dotted field path, possibly empty.
    #[error("parse error at {path}: {message}")]
    Parse { path: String, message: String },

    #[error("grading error on pair ({i}, {j}): {message}")]
    Grading { i: usize, j: usize, message: String },

    #[error("skew symmetry error on pair ({i}, {j}): {message}")]
    Skew { i: usize, j: usize, message: String },

    #[error("commutation factor invalid: {0}")]
    Epsilon(String),

    /// An operation's precondition did not hold; the message names the witness.
    #[error("precondition failed: {0}")]
    Precondition(String),

    #[error("unsupported operation: {0}")]
    Unsupported(String),

    /// A result that the theory says cannot happen for data that passed its checks.
    #[error("internal consistency error: {0}")]
    InternalConsistency(String),

    #[error("io error: {0}")]
    Io(String),
}

impl Error {
    pub fn parse(path: impl Into<String>, message: impl Into<String>) -> Self {
        Error::Parse {
            path: path.into(),
            message: message.into(),
        }
    }

    pub fn structural(message: impl Into<String>) -> Self {
        Error::Structural(message.into())
    }

    /// Prefixes the field path of a parse error.
    pub fn at(self, prefix: &str) -> Self {
        match self {
            Error::Parse { path, message } => {
                let path = if path.is_empty() {
                    prefix.to_string()
                } else if path.starts_with('[') {
                    format!("{prefix}{path}")
                } else {
                    format!("{prefix}.{path}")
                };
                Error::Parse { path, message }
            }
            other => other,
        }
    }
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}
