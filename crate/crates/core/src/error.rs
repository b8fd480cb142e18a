use thiserror::Error;

/// Errors surfaced by the library.
///
/// The CLI maps these onto process exit codes: validation and precondition
/// failures exit 1, internal consistency failures exit 2, parse errors exit 3.
#[derive(Debug, Error)]
pub enum Error {
    #[error("matrix not full rank")]
    NotFullRank,

    #[error("{0}")]
    Validation(String),

    #[error("internal consistency failure: {0}")]
    Internal(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("{0}")]
    Unsupported(String),
}

impl Error {
    pub fn validation(msg: impl Into<String>) -> Self {
        Error::Validation(msg.into())
    }

    pub fn internal(msg: impl Into<String>) -> Self {
        Error::Internal(msg.into())
    }

    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Parse(_) => 3,
            Error::Internal(_) => 2,
            _ => 1,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
