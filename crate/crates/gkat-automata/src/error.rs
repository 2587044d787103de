use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AutomataError {
    #[error("malformed automaton: {0}")]
    Malformed(String),
    #[error("automaton is not normal: state {0} steps into a state with empty language")]
    NotNormal(usize),
    #[error("automata are over different alphabets")]
    AlphabetMismatch,
    #[error("state {0} is out of range")]
    NoSuchState(usize),
}
