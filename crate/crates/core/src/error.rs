use thiserror::Error;

/// Errors raised by the graph, kernel and estimation routines.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("invalid kernel: {0}")]
    InvalidKernel(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("infeasible: {0}")]
    Infeasible(String),

    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("numeric failure: {0}")]
    Numeric(String),

    #[error("malformed document: {0}")]
    Document(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    pub(crate) fn arg(msg: impl Into<String>) -> Self {
        Error::InvalidArgument(msg.into())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
