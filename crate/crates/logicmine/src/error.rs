use std::fmt;

#[derive(Debug, thiserror::Error)]
pub enum FormatError {
    #[error("line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
    #[error(transparent)]
    Core(#[from] logicmine_core::Error),
    #[error(transparent)]
    Csv(#[from] csv::Error),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl FormatError {
    pub(crate) fn at(line: usize, column: usize, message: impl fmt::Display) -> Self {
        FormatError::Parse {
            line,
            column,
            message: message.to_string(),
        }
    }

    /// Wraps a core error raised while handling a given line.
    pub(crate) fn on_line(line: usize, err: logicmine_core::Error) -> Self {
        Self::at(line, 1, err)
    }
}

pub type Result<T, E = FormatError> = std::result::Result<T, E>;
