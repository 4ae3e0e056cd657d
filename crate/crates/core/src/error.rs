use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("syntax error at {line}:{column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("token `{0}` is not in the alphabet")]
    UnknownToken(String),
    #[error("invalid alphabet: {0}")]
    InvalidAlphabet(String),
    #[error("invalid operator parameter: {0}")]
    InvalidParameter(String),
    #[error("length mismatch: expected {expected}, got {actual}")]
    LengthMismatch { expected: usize, actual: usize },
    #[error("unsupported operator `{0}` for this operation")]
    Unsupported(&'static str),
    #[error("alphabets differ")]
    AlphabetMismatch,
    #[error("invalid automaton: {0}")]
    InvalidDfa(String),
    #[error("slice of length {0} is empty")]
    EmptySlice(usize),
    #[error("semigroup exceeds the element budget of {0}")]
    ElementBudget(usize),
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("invalid number format: {0}")]
    Format(String),
    #[error("softmax margin check failed: {0}")]
    Margin(String),
    #[error("model width {needed} exceeds the channel budget {budget}")]
    ChannelBudget { needed: usize, budget: usize },
    #[error("unknown benchmark `{0}`")]
    UnknownBenchmark(String),
    #[error("line {line}: {message}")]
    Validation { line: usize, message: String },
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    /// Whether the failure came from a resource limit rather than bad input.
    pub fn is_resource(&self) -> bool {
        matches!(self, Error::ElementBudget(_) | Error::ChannelBudget { .. })
    }
}
