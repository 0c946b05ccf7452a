use thiserror::Error;

/// Errors raised anywhere in the synthesis and execution pipeline.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("syntax error at offset {position}: expected {}", .expected.join(" or "))]
    Syntax {
        position: usize,
        expected: Vec<String>,
    },

    #[error("unknown atom `{0}`")]
    UnknownAtom(String),

    #[error("unknown event `{name}` at position {position}")]
    UnknownEvent { name: String, position: usize },

    #[error("invalid alphabet: {0}")]
    Alphabet(String),

    #[error("invalid lasso word: {0}")]
    Lasso(String),

    #[error("line {line}: {reason}")]
    Format { line: usize, reason: String },

    #[error("invalid monitor: {0}")]
    Validation(String),
}

pub type Result<T> = std::result::Result<T, Error>;
