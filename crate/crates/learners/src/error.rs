use expr_deriv::DerivError;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LearnError {
    #[error("membership answers are not deterministic: {0}")]
    DeterminismViolation(String),
    #[error("an inferred zero was refuted by the teacher at {0}")]
    InferredZeroRefuted(String),
    #[error("observation table is not closed")]
    NotClosed,
    #[error("`{0}` is not a counterexample for the current hypothesis")]
    NotACounterexample(String),
    #[error(transparent)]
    Deriv(#[from] DerivError),
}
