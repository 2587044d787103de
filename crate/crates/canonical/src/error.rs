use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CanonError {
    #[error("regex syntax error at {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("letter `{0}` is not in the alphabet")]
    UnknownLetter(char),
    #[error("malformed automaton: {0}")]
    Malformed(String),
    #[error("resource cap exceeded: {0}")]
    Cap(String),
    #[error("{pair} applies to {expected} acceptors")]
    KindMismatch {
        pair: &'static str,
        expected: &'static str,
    },
    #[error("internal invariant violated: {0}")]
    Invariant(String),
}
