//! Active learning of G-automata and Moore machines from a teacher that
//! answers membership and equivalence queries.
//!
//! * [`gl_star`] learns the minimal G-automaton of a deterministic
//!   guarded-string language from an observation table whose rows are
//!   guarded words and whose columns are guarded strings.
//! * [`l_star`] learns the minimal Moore machine of the same language seen
//!   as a map from words over `At·Σ` to sets of atoms, adding every suffix
//!   of a counterexample as a column.
//!
//! Query accounting: a membership query is charged once per table cell
//! that is filled by asking the teacher. A Moore membership query is
//! charged `|At|` guarded queries, one per atom in its output.

mod error;
mod gl;
mod lstar;
mod teacher;

pub use error::LearnError;
pub use gl::{gl_star, GlOptions, GlResult, GlTable};
pub use lstar::{l_star, LStarResult, LStarTable};
pub use teacher::{ExprTeacher, GuardedTeacher, MooreTeacher, QueryStats};

/// One step of a learning run, for transcripts.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TraceEvent {
    pub kind: TraceKind,
    pub payload: String,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TraceKind {
    Query,
    Close,
    Hypothesis,
    Cex,
}

impl TraceKind {
    pub fn as_str(self) -> &'static str {
        match self {
            TraceKind::Query => "query",
            TraceKind::Close => "close",
            TraceKind::Hypothesis => "hypothesis",
            TraceKind::Cex => "cex",
        }
    }
}
