use thiserror::Error;

/// Errors raised by the numerical kernels and the harness.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("pole: {0}")]
    Pole(String),
    #[error("domain error: {0}")]
    Domain(String),
    #[error("no convergence: {0}")]
    Convergence(String),
    #[error("branch cut: {0}")]
    Branch(String),
    #[error("step-size control failed: {0}")]
    Tolerance(String),
    #[error("quadrature failed: {0}")]
    Quadrature(String),
    #[error("non-finite result: {0}")]
    NonFinite(String),
    #[error("config error{}: {field}: {message}", line.map(|l| format!(" (line {l})")).unwrap_or_default())]
    Config {
        line: Option<usize>,
        field: String,
        message: String,
    },
    #[error("i/o error: {0}")]
    Io(String),
}

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
