//! Canonical succinct acceptors of regular languages.
//!
//! The pipeline starts from the minimal DFA of a language, closes its
//! states under the operations of an algebra (joins, Boolean operations,
//! lattice operations or `Z2` sums), identifies elements with equal
//! languages, picks a size-minimal set of generators of the quotient and
//! reads off an acceptor whose states are the generators:
//!
//! | construction  | closure            | generators          | acceptor |
//! |---------------|--------------------|---------------------|----------|
//! | `rfsa`        | unions             | join-irreducibles   | NFA      |
//! | `atomaton`    | Boolean algebra    | atoms               | NFA      |
//! | `distromaton` | distributive lattice | join-irreducibles | NFA      |
//! | `xor`         | `Z2` span          | basis               | xor      |
//! | `xorcaba`     | Boolean algebra    | `Z2` basis          | xor      |

mod algebra;
mod closed;
mod dfa;
mod error;
mod generators;
mod refine;
mod regex;
mod succinct;

pub use algebra::{
    free_bialgebra, minimise_bialgebra, ClosureAlgebra, FreeBialgebra, Monad, FAMILY_STATE_CAP,
    SUBSET_STATE_CAP,
};
pub use closed::{
    check_alpha_closed, closure_report, membership_vectors, ClosurePair, ClosureReport, VECTOR_CAP,
};
pub use dfa::{minimal_dfa, Dfa, DFA_STATE_CAP};
pub use error::CanonError;
pub use generators::{
    atoms, extract_generators, join_irreducibles, recompose, xor_basis, GeneratorSet, Target,
    GENERATOR_CAP,
};
pub use regex::Regex;
pub use succinct::{
    canonize, canonize_full, succinct_accepts, succinct_automaton, AcceptorKind, Canonized,
    Construction, SuccinctAutomaton,
};
