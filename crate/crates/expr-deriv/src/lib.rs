//! Compilation of GKAT expressions to G-automata by syntactic derivatives.
//!
//! For an expression `e` and atom `α`, [`accept_atom`] decides whether the
//! bare atom `α` belongs to `⟦e⟧` and [`derive_step`] computes what `e` does
//! on `α`: accept, reject, or emit an action `p` and continue as an
//! expression `e'` whose language is `(αp)⁻¹⟦e⟧`. The states of
//! [`expr_to_automaton`] are the derivatives reachable from `e`, kept in the
//! normal form of [`canonical`].

use std::collections::{HashMap, VecDeque};

use gkat_automata::{GAutomaton, Outcome};
use gkat_core::{Alphabet, Atom, Expr};
use thiserror::Error;

/// Default bound on the number of derivative states.
pub const DEFAULT_STATE_CAP: usize = 1_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DerivError {
    #[error("derivative construction exceeded {0} states")]
    StateCap(usize),
}

/// What an expression does on an atom.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum DerivOutcome {
    Accept,
    Reject,
    Step(usize, Expr),
}

fn collect_factors(e: &Expr, out: &mut Vec<Expr>) {
    match e {
        Expr::Seq(a, b) => {
            collect_factors(a, out);
            collect_factors(b, out);
        }
        other => out.push(canonical_factor(other)),
    }
}

fn canonical_factor(e: &Expr) -> Expr {
    match e {
        Expr::Act(_) | Expr::Test(_) => e.clone(),
        Expr::If(b, x, y) => Expr::ite(b.clone(), canonical(x), canonical(y)),
        Expr::While(b, x) => Expr::while_do(b.clone(), canonical(x)),
        Expr::Seq(..) => canonical(e),
    }
}

/// Normal form under the unit and zero laws of sequencing: sequences are
/// right-associated, `1` factors are dropped and everything after a leading
/// `0` factor is dropped. The rewriting also applies inside branches and
/// loop bodies. The function is idempotent.
pub fn canonical(e: &Expr) -> Expr {
    let mut factors = Vec::new();
    collect_factors(e, &mut factors);
    let mut kept: Vec<Expr> = Vec::new();
    for f in factors {
        if f.is_one() {
            continue;
        }
        let zero = f.is_zero();
        kept.push(f);
        if zero {
            break;
        }
    }
    // `0;e` collapses to `0` only at the head of the sequence.
    if kept.first().is_some_and(Expr::is_zero) {
        return Expr::zero();
    }
    let mut it = kept.into_iter().rev();
    match it.next() {
        None => Expr::one(),
        Some(last) => it.fold(last, |acc, f| Expr::seq(f, acc)),
    }
}

/// Whether the bare atom `α` belongs to `⟦e⟧`.
pub fn accept_atom(alphabet: &Alphabet, e: &Expr, a: Atom) -> bool {
    match e {
        Expr::Test(b) => b.eval(alphabet, a),
        Expr::Act(_) => false,
        Expr::Seq(x, y) => accept_atom(alphabet, x, a) && accept_atom(alphabet, y, a),
        Expr::If(b, x, y) => {
            if b.eval(alphabet, a) {
                accept_atom(alphabet, x, a)
            } else {
                accept_atom(alphabet, y, a)
            }
        }
        Expr::While(b, _) => !b.eval(alphabet, a),
    }
}

/// The behaviour of `e` on `α`. A `Step(p, e')` result satisfies
/// `⟦e'⟧ = (αp)⁻¹⟦e⟧`, with `e'` in canonical form.
pub fn derive_step(alphabet: &Alphabet, e: &Expr, a: Atom) -> DerivOutcome {
    match e {
        Expr::Test(b) => {
            if b.eval(alphabet, a) {
                DerivOutcome::Accept
            } else {
                DerivOutcome::Reject
            }
        }
        Expr::Act(p) => DerivOutcome::Step(*p, Expr::one()),
        Expr::Seq(x, y) => {
            if accept_atom(alphabet, x, a) {
                derive_step(alphabet, y, a)
            } else {
                match derive_step(alphabet, x, a) {
                    DerivOutcome::Step(p, d) => {
                        DerivOutcome::Step(p, canonical(&Expr::Seq(Box::new(d), y.clone())))
                    }
                    _ => DerivOutcome::Reject,
                }
            }
        }
        Expr::If(b, x, y) => {
            if b.eval(alphabet, a) {
                derive_step(alphabet, x, a)
            } else {
                derive_step(alphabet, y, a)
            }
        }
        Expr::While(b, body) => {
            if !b.eval(alphabet, a) {
                return DerivOutcome::Accept;
            }
            match derive_step(alphabet, body, a) {
                DerivOutcome::Step(p, d) => {
                    DerivOutcome::Step(p, canonical(&Expr::seq(d, e.clone())))
                }
                // A body that halts without acting on a guard atom never
                // leaves the loop.
                DerivOutcome::Accept | DerivOutcome::Reject => DerivOutcome::Reject,
            }
        }
    }
}

/// The derivative automaton of `e`, normalised, with at most
/// [`DEFAULT_STATE_CAP`] states.
pub fn expr_to_automaton(alphabet: &Alphabet, e: &Expr) -> Result<GAutomaton, DerivError> {
    expr_to_automaton_capped(alphabet, e, DEFAULT_STATE_CAP)
}

/// The derivative automaton of `e`. States are the canonical derivatives
/// reachable from `canonical(e)`, numbered breadth-first with atoms in atom
/// order; state 0 is `canonical(e)`.
pub fn expr_to_automaton_capped(
    alphabet: &Alphabet,
    e: &Expr,
    cap: usize,
) -> Result<GAutomaton, DerivError> {
    let start = canonical(e);
    let mut index: HashMap<Expr, usize> = HashMap::new();
    let mut states: Vec<Expr> = Vec::new();
    let mut queue = VecDeque::new();
    index.insert(start.clone(), 0);
    states.push(start);
    queue.push_back(0usize);
    let mut delta: Vec<Vec<Outcome>> = Vec::new();
    while let Some(x) = queue.pop_front() {
        let mut row = Vec::with_capacity(alphabet.num_atoms());
        for a in alphabet.atoms() {
            let o = match derive_step(alphabet, &states[x], a) {
                DerivOutcome::Accept => Outcome::Accept,
                DerivOutcome::Reject => Outcome::Reject,
                DerivOutcome::Step(p, d) => {
                    let y = match index.get(&d) {
                        Some(&y) => y,
                        None => {
                            if states.len() >= cap {
                                return Err(DerivError::StateCap(cap));
                            }
                            let y = states.len();
                            index.insert(d.clone(), y);
                            states.push(d);
                            queue.push_back(y);
                            y
                        }
                    };
                    Outcome::Step(p, y)
                }
            };
            row.push(o);
        }
        if delta.len() <= x {
            delta.resize(x + 1, Vec::new());
        }
        delta[x] = row;
    }
    let aut = GAutomaton::new(alphabet.clone(), delta, 0).expect("derivative automaton is total");
    Ok(aut.normalise())
}
