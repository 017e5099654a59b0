use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid parameters: {0}")]
    InvalidParameter(String),

    #[error("coordinate {index} has value {value}, outside [0, {k})")]
    CoordinateOutOfRange { index: usize, value: u64, k: u32 },

    #[error("host too large: {0}")]
    HostTooLarge(String),

    #[error("vertices {0} and {1} are not adjacent in the host")]
    NotAdjacent(u64, u64),

    #[error("search budget exhausted: {0}")]
    BudgetExhausted(String),

    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("graph already contains a copy of Q_{0}")]
    ContainsPattern(u32),

    #[error("edge endpoints are not both in A_0")]
    NotA0Pair,

    #[error("degenerate null space: {0}")]
    DegenerateNullSpace(String),

    #[error("invalid certificate at step {step}: {msg}")]
    InvalidCertificate { step: usize, msg: String },

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    pub(crate) fn parse(line: usize, msg: impl Into<String>) -> Self {
        Error::Parse { line, msg: msg.into() }
    }

    pub(crate) fn param(msg: impl Into<String>) -> Self {
        Error::InvalidParameter(msg.into())
    }
}
