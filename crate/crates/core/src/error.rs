use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("pole at q = 1")]
    PoleAtOne,
    #[error("length mismatch: {0} vs {1}")]
    LengthMismatch(usize, usize),
    #[error("not a partition: {0}")]
    NotAPartition(String),
    #[error("not a horizontal strip: {0}")]
    NotAStrip(String),
    #[error("degenerate parameters: {0}")]
    DegenerateParameters(String),
    #[error("convergence condition violated: {0}")]
    ConvergenceViolated(String),
    #[error("unsupported regime: {0}")]
    UnsupportedRegime(String),
    #[error("parse error: {0}")]
    Parse(String),
}

impl Error {
    /// Stable machine-readable tag used in CLI error records.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::DivisionByZero => "DivisionByZero",
            Error::PoleAtOne => "PoleAtOne",
            Error::LengthMismatch(..) => "LengthMismatch",
            Error::NotAPartition(_) => "NotAPartition",
            Error::NotAStrip(_) => "NotAStrip",
            Error::DegenerateParameters(_) => "DegenerateParameters",
            Error::ConvergenceViolated(_) => "ConvergenceViolated",
            Error::UnsupportedRegime(_) => "UnsupportedRegime",
            Error::Parse(_) => "ParseError",
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
