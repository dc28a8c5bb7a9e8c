use std::io;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    /// Syntax error; `line` and `column` are 1-based. Truth-table strings
    /// report `line` 1 and the character offset as `column`.
    #[error("parse error at {line}:{column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },

    /// Structurally invalid network, naming the offending gate.
    #[error("{gate}: {message}")]
    Semantic { gate: String, message: String },

    #[error("no legal move available")]
    NoMoveAvailable,

    #[error("degenerate warm-up: {0}")]
    DegenerateWarmup(String),

    #[error(transparent)]
    Io(#[from] io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidArgument(msg.into())
    }

    pub(crate) fn parse(line: usize, column: usize, msg: impl Into<String>) -> Self {
        Error::Parse {
            line,
            column,
            message: msg.into(),
        }
    }
}

impl From<crate::netcore::Violation> for Error {
    fn from(v: crate::netcore::Violation) -> Self {
        Error::Semantic {
            gate: v.gate.map_or_else(|| "network".into(), |g| format!("g{g}")),
            message: v.message,
        }
    }
}
