use thiserror::Error;

/// Errors raised by the relmod kernel.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// Presentation parameters or indices are out of range.
    #[error("parameter error: {0}")]
    Param(String),

    /// Text input did not match the word or ring-element grammar.
    #[error("parse error at column {column}: {message}")]
    Parse { column: usize, message: String },

    /// Vector or matrix shapes do not line up.
    #[error("dimension mismatch: {0}")]
    Dimension(String),

    /// A constructed object failed its own verification. This is an
    /// implementation bug, never an input problem.
    #[error("internal self-check failed: {0}")]
    SelfCheck(String),

    /// Malformed certificate or complex document.
    #[error("format error: {0}")]
    Format(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn param(msg: impl Into<String>) -> Self {
        Error::Param(msg.into())
    }

    pub(crate) fn parse(column: usize, msg: impl Into<String>) -> Self {
        Error::Parse {
            column,
            message: msg.into(),
        }
    }

    /// Prefixes the message with a location such as `lambda[1][0]`.
    pub fn at(self, location: &str) -> Self {
        match self {
            Error::Parse { column, message } => Error::Parse {
                column,
                message: format!("{location}: {message}"),
            },
            Error::Param(m) => Error::Param(format!("{location}: {m}")),
            Error::Dimension(m) => Error::Dimension(format!("{location}: {m}")),
            Error::SelfCheck(m) => Error::SelfCheck(format!("{location}: {m}")),
            Error::Format(m) => Error::Format(format!("{location}: {m}")),
        }
    }
}
