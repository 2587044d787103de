use thiserror::Error;

/// Errors raised while building alphabets or reading concrete syntax.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GkatError {
    #[error("invalid alphabet: {0}")]
    InvalidAlphabet(String),
    #[error("syntax error at offset {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("undeclared {kind} `{name}` at offset {pos}")]
    Undeclared {
        kind: &'static str,
        name: String,
        pos: usize,
    },
}
