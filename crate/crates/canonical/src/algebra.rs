//! Free algebras over the states of a minimal DFA, their Moore structure
//! and their quotient by language equivalence.
//!
//! Elements are `u32` codes:
//! * `P` and `R`: a subset `φ ⊆ Q` as a bitmask over states; in `P` it
//!   denotes the union of the state languages, in `R` their symmetric
//!   difference.
//! * `H`: a family `Φ ⊆ 2^Q` as a bitmask over subset codes. It denotes
//!   `{w | {q | w ∈ L_q} ∈ Φ}`.
//! * `A`: the up-closed families of `H`.
//!
//! In every carrier the code `0` is the bottom element.

use crate::dfa::Dfa;
use crate::error::CanonError;
use crate::refine::refine;

/// State bound for the `P` and `R` carriers.
pub const SUBSET_STATE_CAP: usize = 16;
/// State bound for the `H` and `A` carriers.
pub const FAMILY_STATE_CAP: usize = 4;

/// A binary operation on element codes.
type BinaryOp = fn(u32, u32) -> u32;

/// Bound on the number of pairs examined by the descent check. Below it
/// every pair of elements is checked; above it every element is checked
/// against the representatives of the first classes that fit the bound.
const ALL_PAIRS_CAP: usize = 1 << 22;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Monad {
    /// Powerset: complete join-semilattices.
    P,
    /// Neighbourhood: complete atomic Boolean algebras.
    H,
    /// Monotone neighbourhood: completely distributive lattices.
    A,
    /// Free `Z2` vector space.
    R,
}

/// A free algebra over the states of a DFA with its induced Moore
/// structure.
///
/// Invariants: `elements` is strictly increasing; `index[c]` is the
/// position of code `c` in `elements` or `u32::MAX`; `delta` and `out`
/// have one entry per element.
#[derive(Debug, Clone)]
pub struct FreeBialgebra {
    monad: Monad,
    dfa: Dfa,
    elements: Vec<u32>,
    index: Vec<u32>,
    delta: Vec<Vec<u32>>,
    out: Vec<bool>,
    initial: usize,
}

/// The free algebra quotiented by language equivalence.
///
/// Invariants: classes are numbered by their least code, so the class of
/// code `0` is class 0; `rep[c]` is the least code of class `c`; the Moore
/// structure and every algebra operation of the monad map equivalent
/// arguments to equivalent results.
#[derive(Debug, Clone)]
pub struct ClosureAlgebra {
    free: FreeBialgebra,
    class: Vec<u32>,
    rep: Vec<u32>,
    out: Vec<bool>,
    delta: Vec<Vec<usize>>,
    initial: usize,
}

fn is_up_closed(family: u32, n: usize) -> bool {
    let full = (1u32 << n) - 1;
    (0..1u32 << n)
        .filter(|&phi| family >> phi & 1 == 1)
        .all(|phi| {
            (0..n).all(|q| {
                let up = phi | 1 << q;
                up & full == up && family >> up & 1 == 1
            })
        })
}

/// Enumerates the carrier of `monad` over `dfa` and its Moore structure.
pub fn free_bialgebra(dfa: &Dfa, monad: Monad) -> Result<FreeBialgebra, CanonError> {
    let n = dfa.num_states();
    let letters = dfa.alphabet().len();
    let cap = match monad {
        Monad::P | Monad::R => SUBSET_STATE_CAP,
        Monad::H | Monad::A => FAMILY_STATE_CAP,
    };
    if n > cap {
        return Err(CanonError::Cap(format!(
            "{monad:?} carrier over {n} states exceeds the bound of {cap} states"
        )));
    }
    let subsets = 1usize << n;
    let image = |phi: u32, l: usize| -> (u32, u32) {
        let (mut or, mut xor) = (0u32, 0u32);
        for q in (0..n).filter(|&q| phi >> q & 1 == 1) {
            let bit = 1u32 << dfa.step(q, l);
            or |= bit;
            xor ^= bit;
        }
        (or, xor)
    };
    let finals: u32 = (0..n)
        .filter(|&q| dfa.is_accepting(q))
        .map(|q| 1u32 << q)
        .sum();
    let x0 = dfa.initial();
    let (elements, delta, out, initial_code): (Vec<u32>, Vec<Vec<u32>>, Vec<bool>, u32) =
        match monad {
            Monad::P | Monad::R => {
                let elements: Vec<u32> = (0..subsets as u32).collect();
                let delta = elements
                    .iter()
                    .map(|&phi| {
                        (0..letters)
                            .map(|l| {
                                let (or, xor) = image(phi, l);
                                if monad == Monad::P {
                                    or
                                } else {
                                    xor
                                }
                            })
                            .collect()
                    })
                    .collect();
                let out = elements
                    .iter()
                    .map(|&phi| {
                        if monad == Monad::P {
                            phi & finals != 0
                        } else {
                            (phi & finals).count_ones() % 2 == 1
                        }
                    })
                    .collect();
                (elements, delta, out, 1 << x0)
            }
            Monad::H | Monad::A => {
                let codes = 1u64 << subsets;
                // pre[l][φ] = {q | δ(q, l) ∈ φ}
                let pre: Vec<Vec<u32>> = (0..letters)
                    .map(|l| {
                        (0..subsets as u32)
                            .map(|phi| {
                                (0..n)
                                    .filter(|&q| phi >> dfa.step(q, l) & 1 == 1)
                                    .map(|q| 1u32 << q)
                                    .sum()
                            })
                            .collect()
                    })
                    .collect();
                let elements: Vec<u32> = (0..codes)
                    .map(|c| c as u32)
                    .filter(|&c| monad == Monad::H || is_up_closed(c, n))
                    .collect();
                let delta = elements
                    .iter()
                    .map(|&fam| {
                        (0..letters)
                            .map(|l| {
                                (0..subsets)
                                    .filter(|&phi| fam >> pre[l][phi] & 1 == 1)
                                    .map(|phi| 1u32 << phi)
                                    .sum()
                            })
                            .collect()
                    })
                    .collect();
                let out = elements.iter().map(|&fam| fam >> finals & 1 == 1).collect();
                let initial: u32 = (0..subsets)
                    .filter(|&phi| phi >> x0 & 1 == 1)
                    .map(|phi| 1u32 << phi)
                    .sum();
                (elements, delta, out, initial)
            }
        };
    let space = match monad {
        Monad::P | Monad::R => subsets,
        Monad::H | Monad::A => 1usize << subsets,
    };
    let mut index = vec![u32::MAX; space];
    for (i, &c) in elements.iter().enumerate() {
        index[c as usize] = i as u32;
    }
    let delta = delta
        .into_iter()
        .map(|row: Vec<u32>| row.into_iter().map(|c| index[c as usize]).collect())
        .collect();
    let initial = index[initial_code as usize] as usize;
    Ok(FreeBialgebra {
        monad,
        dfa: dfa.clone(),
        elements,
        index,
        delta,
        out,
        initial,
    })
}

impl FreeBialgebra {
    pub fn monad(&self) -> Monad {
        self.monad
    }

    pub fn dfa(&self) -> &Dfa {
        &self.dfa
    }

    pub fn num_elements(&self) -> usize {
        self.elements.len()
    }

    /// Codes of the carrier in increasing order.
    pub fn elements(&self) -> &[u32] {
        &self.elements
    }

    pub fn index_of(&self, code: u32) -> Option<usize> {
        match self.index.get(code as usize) {
            Some(&i) if i != u32::MAX => Some(i as usize),
            _ => None,
        }
    }

    /// The output of the element with code `code`.
    pub fn output(&self, code: u32) -> Option<bool> {
        self.index_of(code).map(|i| self.out[i])
    }

    /// The successor code under `letter`.
    pub fn step(&self, code: u32, letter: usize) -> Option<u32> {
        self.index_of(code)
            .map(|i| self.elements[self.delta[i][letter] as usize])
    }

    /// Code of the element that denotes the initial state.
    pub fn initial_code(&self) -> u32 {
        self.elements[self.initial]
    }

    fn family_mask(&self) -> u32 {
        let subsets = 1u32 << self.dfa.num_states();
        if subsets == 32 {
            u32::MAX
        } else {
            (1u32 << subsets) - 1
        }
    }

    /// The binary operations of the monad's algebra structure on codes,
    /// with names.
    fn binary_ops(&self) -> Vec<(&'static str, BinaryOp)> {
        match self.monad {
            Monad::P => vec![("join", |x, y| x | y)],
            Monad::R => vec![("xor", |x, y| x ^ y)],
            Monad::A => vec![("join", |x, y| x | y), ("meet", |x, y| x & y)],
            Monad::H => vec![
                ("join", |x, y| x | y),
                ("meet", |x, y| x & y),
                ("xor", |x, y| x ^ y),
            ],
        }
    }
}

/// Quotients the carrier by language equivalence and checks that the
/// Moore structure and the algebra operations descend to classes.
pub fn minimise_bialgebra(free: FreeBialgebra) -> Result<ClosureAlgebra, CanonError> {
    let n = free.num_elements();
    let labels: Vec<usize> = free.out.iter().map(|&b| usize::from(b)).collect();
    let class = refine(n, &labels, |x, out| {
        out.extend(free.delta[x].iter().map(|&y| y as usize))
    });
    let k = class.iter().copied().max().map_or(0, |m| m + 1);
    let mut rep_idx = vec![usize::MAX; k];
    for (x, &c) in class.iter().enumerate() {
        if rep_idx[c] == usize::MAX {
            rep_idx[c] = x;
        }
    }
    let alg = ClosureAlgebra {
        rep: rep_idx.iter().map(|&x| free.elements[x]).collect(),
        out: rep_idx.iter().map(|&x| free.out[x]).collect(),
        delta: rep_idx
            .iter()
            .map(|&x| free.delta[x].iter().map(|&y| class[y as usize]).collect())
            .collect(),
        initial: class[free.initial],
        class: class.iter().map(|&c| c as u32).collect(),
        free,
    };
    alg.check_descent()?;
    Ok(alg)
}

impl ClosureAlgebra {
    pub fn monad(&self) -> Monad {
        self.free.monad
    }

    pub fn free(&self) -> &FreeBialgebra {
        &self.free
    }

    pub fn num_classes(&self) -> usize {
        self.rep.len()
    }

    /// Class of the element with code `code`.
    pub fn class_of(&self, code: u32) -> Option<usize> {
        self.free.index_of(code).map(|i| self.class[i] as usize)
    }

    /// Least code of class `c`.
    pub fn representative(&self, c: usize) -> u32 {
        self.rep[c]
    }

    pub fn output(&self, c: usize) -> bool {
        self.out[c]
    }

    pub fn step(&self, c: usize, letter: usize) -> usize {
        self.delta[c][letter]
    }

    /// Class of the initial element.
    pub fn initial(&self) -> usize {
        self.initial
    }

    pub fn bottom(&self) -> usize {
        0
    }

    /// Whether the language of class `c` contains `word`.
    pub fn accepts(&self, c: usize, word: &[usize]) -> bool {
        self.out[word.iter().fold(c, |x, &l| self.delta[x][l])]
    }

    fn lift(&self, x: usize, y: usize, op: fn(u32, u32) -> u32) -> usize {
        self.class_of(op(self.rep[x], self.rep[y]))
            .expect("the carrier is closed under its operations")
    }

    /// Join of two classes in the `P`, `H` and `A` algebras.
    pub fn join(&self, x: usize, y: usize) -> Option<usize> {
        (self.monad() != Monad::R).then(|| self.lift(x, y, |a, b| a | b))
    }

    /// Meet of two classes in the `H` and `A` algebras.
    pub fn meet(&self, x: usize, y: usize) -> Option<usize> {
        matches!(self.monad(), Monad::H | Monad::A).then(|| self.lift(x, y, |a, b| a & b))
    }

    /// Symmetric difference of two classes in the `R` and `H` algebras.
    pub fn xor(&self, x: usize, y: usize) -> Option<usize> {
        matches!(self.monad(), Monad::R | Monad::H).then(|| self.lift(x, y, |a, b| a ^ b))
    }

    /// Complement of a class in the `H` algebra.
    pub fn complement(&self, x: usize) -> Option<usize> {
        (self.monad() == Monad::H).then(|| {
            self.class_of(!self.rep[x] & self.free.family_mask())
                .expect("families are closed under complement")
        })
    }

    /// `x ≤ y` in the join order.
    pub fn leq(&self, x: usize, y: usize) -> Option<bool> {
        self.join(x, y).map(|j| j == y)
    }

    fn check_descent(&self) -> Result<(), CanonError> {
        let n = self.free.num_elements();
        let all_pairs = n.saturating_mul(n) <= ALL_PAIRS_CAP;
        let budget = (ALL_PAIRS_CAP / n.max(1)).max(1);
        for (name, op) in self.free.binary_ops() {
            for x in 0..n {
                let cx = self.class[x] as usize;
                let partners: Box<dyn Iterator<Item = u32>> = if all_pairs {
                    Box::new(self.free.elements.iter().copied())
                } else {
                    Box::new(self.rep.iter().copied().take(budget))
                };
                for code in partners {
                    let cy = self.class_of(code).expect("partner is an element");
                    let got = self
                        .class_of(op(self.free.elements[x], code))
                        .ok_or_else(|| {
                            CanonError::Invariant(format!("{name} leaves the carrier"))
                        })?;
                    if got != self.lift(cx, cy, op) {
                        return Err(CanonError::Invariant(format!(
                            "{name} does not respect language equivalence"
                        )));
                    }
                }
            }
        }
        if self.monad() == Monad::H {
            let mask = self.free.family_mask();
            for x in 0..n {
                let got = self.class_of(!self.free.elements[x] & mask);
                if got != self.complement(self.class[x] as usize) {
                    return Err(CanonError::Invariant(
                        "complement does not respect language equivalence".into(),
                    ));
                }
            }
        }
        Ok(())
    }
}
