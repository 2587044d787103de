//! Guarded Kleene Algebra with Tests: alphabets, atoms, expressions,
//! guarded strings and a bounded brute-force language oracle.
//!
//! Everything downstream (automata, learners, benchmarks) inherits its
//! enumeration orders from this crate, so every ordering here is fixed:
//!
//! * tests and actions are ordered as declared;
//! * atoms are ordered lexicographically over the test order, with a
//!   satisfied test sorting before its negation (see [`Alphabet::atoms`]);
//! * guarded strings are ordered by their derived `Ord`.

mod alphabet;
mod error;
mod lang;
mod parse;
mod strings;
mod syntax;

pub use alphabet::{Alphabet, Atom};
pub use error::GkatError;
pub use lang::{enumerate_upto, fusion, guarded_sum, is_deterministic, lang_upto, FiniteGsLang};
pub use parse::{parse_bexpr, parse_expr};
pub use strings::{GuardedString, GuardedWord};
pub use syntax::{BExpr, Expr};
