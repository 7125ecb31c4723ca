use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("non-strict order")]
    NonStrictOrder,
    #[error("adversary broke soundness: {0}")]
    AdversaryUnsound(String),
    #[error("self-question not allowed")]
    SelfQuestion,
    #[error("inconsistent balance")]
    InconsistentBalance,
    #[error("not bitonic")]
    NotBitonic,
    #[error("inconsistent oracle: {0}")]
    InconsistentOracle(String),
    #[error("out of range: {0}")]
    OutOfRange(String),
    #[error("Dijkstra requires non-negative weights")]
    NegativeWeight,
    #[error("graph not connected")]
    NotConnected,
    #[error("no path: {0}")]
    NoPath(String),
    #[error("instance too large for oracle: {0}")]
    TooLarge(String),
    #[error("invalid input: {0}")]
    Invalid(String),
    #[error("malformed witness: {0}")]
    MalformedWitness(String),
    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },
}

impl Error {
    pub fn invalid(msg: impl Into<String>) -> Self {
        Error::Invalid(msg.into())
    }

    pub fn parse(line: usize, msg: impl Into<String>) -> Self {
        Error::Parse { line, msg: msg.into() }
    }

    /// Size-limit failures are reported separately from bad input by the CLI.
    pub fn is_size_limit(&self) -> bool {
        matches!(self, Error::TooLarge(_))
    }
}
