//! Closure comparisons of the state languages of a succinct acceptor.
//!
//! For a word `w` let `v(w)` be the set of states whose language contains
//! `w`, and let `V` be the set of all such vectors. A Boolean combination
//! of state languages is determined by the subset of `V` on which it
//! holds, so each state language is a subset of `V` and the Boolean
//! algebra generated by the state languages is the full powerset of `V`.

use std::collections::{HashSet, VecDeque};

use crate::error::CanonError;
use crate::succinct::{AcceptorKind, SuccinctAutomaton};

/// Bound on the number of membership vectors.
pub const VECTOR_CAP: usize = 20;

/// A pair of closures whose equality is tested.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ClosurePair {
    /// Unions against all Boolean combinations, for non-deterministic
    /// acceptors.
    CslCaba,
    /// Unions against unions and intersections, for non-deterministic
    /// acceptors.
    CslCdl,
    /// Symmetric differences against all Boolean combinations, for xor
    /// acceptors.
    Z2Caba,
}

impl ClosurePair {
    pub fn name(self) -> &'static str {
        match self {
            ClosurePair::CslCaba => "CSL-CABA",
            ClosurePair::CslCdl => "CSL-CDL",
            ClosurePair::Z2Caba => "Z2-CABA",
        }
    }
}

/// Sizes of the two closures compared by [`check_alpha_closed`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ClosureReport {
    pub pair: ClosurePair,
    /// Number of membership vectors.
    pub vectors: usize,
    pub left: usize,
    pub right: usize,
}

impl ClosureReport {
    pub fn closed(&self) -> bool {
        self.left == self.right
    }
}

/// The set of membership vectors, built backwards from the accepting
/// states: `v(ε)` is the accepting set and `q ∈ v(aw)` when the successors
/// of `q` under `a` meet `v(w)`, or meet it an odd number of times for
/// xor acceptors.
pub fn membership_vectors(aut: &SuccinctAutomaton) -> Result<Vec<u64>, CanonError> {
    let n = aut.num_states();
    let acc: u64 = (0..n)
        .filter(|&q| aut.is_accepting(q))
        .map(|q| 1u64 << q)
        .sum();
    let mut seen = HashSet::from([acc]);
    let mut order = vec![acc];
    let mut queue = VecDeque::from([acc]);
    while let Some(v) = queue.pop_front() {
        for l in 0..aut.alphabet().len() {
            let next: u64 = (0..n)
                .filter(|&q| {
                    let hit = aut
                        .successors(q, l)
                        .iter()
                        .filter(|&&p| v >> p & 1 == 1)
                        .count();
                    match aut.kind() {
                        AcceptorKind::Nfa => hit > 0,
                        AcceptorKind::Xor => hit % 2 == 1,
                    }
                })
                .map(|q| 1u64 << q)
                .sum();
            if seen.insert(next) {
                if seen.len() > VECTOR_CAP {
                    return Err(CanonError::Cap(format!(
                        "more than {VECTOR_CAP} membership vectors"
                    )));
                }
                order.push(next);
                queue.push_back(next);
            }
        }
    }
    Ok(order)
}

fn union_closure(seed: HashSet<u32>, gens: &[u32]) -> HashSet<u32> {
    let mut set = seed;
    for &g in gens {
        let added: Vec<u32> = set.iter().map(|&s| s | g).collect();
        set.extend(added);
    }
    set
}

fn meet_closure(seed: HashSet<u32>, gens: &[u32]) -> HashSet<u32> {
    let mut set = seed;
    for &g in gens {
        let added: Vec<u32> = set.iter().map(|&s| s & g).collect();
        set.extend(added);
    }
    set
}

fn rank(gens: &[u32]) -> usize {
    let mut rows: Vec<u32> = Vec::new();
    for &g in gens {
        let v = rows.iter().fold(g, |v, &r| v.min(v ^ r));
        if v != 0 {
            rows.push(v);
            rows.sort_unstable_by(|a, b| b.cmp(a));
        }
    }
    rows.len()
}

/// Compares the closures of `pair` over the state languages of `aut`.
pub fn closure_report(
    aut: &SuccinctAutomaton,
    pair: ClosurePair,
) -> Result<ClosureReport, CanonError> {
    let expected = match pair {
        ClosurePair::CslCaba | ClosurePair::CslCdl => AcceptorKind::Nfa,
        ClosurePair::Z2Caba => AcceptorKind::Xor,
    };
    if aut.kind() != expected {
        return Err(CanonError::KindMismatch {
            pair: pair.name(),
            expected: match expected {
                AcceptorKind::Nfa => "non-deterministic",
                AcceptorKind::Xor => "xor",
            },
        });
    }
    let vectors = membership_vectors(aut)?;
    let langs: Vec<u32> = (0..aut.num_states())
        .map(|q| {
            vectors
                .iter()
                .enumerate()
                .filter(|&(_, &v)| v >> q & 1 == 1)
                .map(|(i, _)| 1u32 << i)
                .sum()
        })
        .collect();
    let top = (1u32 << vectors.len()) - 1;
    let caba = 1usize << vectors.len();
    let csl = || union_closure(HashSet::from([0]), &langs).len();
    let (left, right) = match pair {
        ClosurePair::CslCaba => (csl(), caba),
        ClosurePair::CslCdl => {
            let meets: Vec<u32> = meet_closure(HashSet::from([top]), &langs)
                .into_iter()
                .collect();
            (csl(), union_closure(HashSet::from([0]), &meets).len())
        }
        ClosurePair::Z2Caba => (1usize << rank(&langs), caba),
    };
    Ok(ClosureReport {
        pair,
        vectors: vectors.len(),
        left,
        right,
    })
}

/// Whether the two closures of `pair` over the state languages coincide.
pub fn check_alpha_closed(aut: &SuccinctAutomaton, pair: ClosurePair) -> Result<bool, CanonError> {
    closure_report(aut, pair).map(|r| r.closed())
}
