//! G-automata (GKAT automata) and Moore machines.
//!
//! A [`GAutomaton`] assigns to every state and atom one of three outcomes:
//! accept, reject, or emit an action and move. The crate provides their
//! guarded-string semantics, normalisation, reachability, bisimulation,
//! simulation, minimisation and isomorphism, together with the embedding
//! into Moore machines ([`to_moore`]) and the Moore operations the learners
//! rely on: minimisation and shortest distinguishing words.

mod dot;
mod error;
mod gauto;
mod moore;
mod refine;

pub use dot::{g_from_dot, g_to_dot, moore_to_dot};
pub use error::AutomataError;
pub use gauto::{bisimilar, g_isomorphic, GAutomaton, Outcome};
pub use moore::{letter_of, split_letter, to_moore, AtomSet, MooreAutomaton};
