use std::collections::{HashMap, VecDeque};
use std::hash::Hash;

use fixedbitset::FixedBitSet;
use gkat_core::Atom;

use crate::gauto::{GAutomaton, Outcome};
use crate::refine::{refine, renumber};

/// A pair of states, one from each machine.
type Pair = (usize, usize);

/// A set of atoms, indexed by atom rank.
pub type AtomSet = FixedBitSet;

/// A Moore machine over input letters `0..num_letters` with outputs in `O`.
///
/// Invariants: `delta` and `out` have one entry per state, every row of
/// `delta` has `num_letters` entries naming existing states, and `initial`
/// is an existing state.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MooreAutomaton<O> {
    num_letters: usize,
    delta: Vec<Vec<usize>>,
    out: Vec<O>,
    initial: usize,
}

impl<O: Clone + Eq + Hash> MooreAutomaton<O> {
    pub fn new(
        num_letters: usize,
        delta: Vec<Vec<usize>>,
        out: Vec<O>,
        initial: usize,
    ) -> Result<Self, crate::AutomataError> {
        let n = delta.len();
        if out.len() != n {
            return Err(crate::AutomataError::Malformed(
                "one output per state is required".into(),
            ));
        }
        if initial >= n {
            return Err(crate::AutomataError::NoSuchState(initial));
        }
        for row in &delta {
            if row.len() != num_letters {
                return Err(crate::AutomataError::Malformed(
                    "every state needs one successor per letter".into(),
                ));
            }
            if let Some(&y) = row.iter().find(|&&y| y >= n) {
                return Err(crate::AutomataError::NoSuchState(y));
            }
        }
        Ok(MooreAutomaton {
            num_letters,
            delta,
            out,
            initial,
        })
    }

    pub fn num_states(&self) -> usize {
        self.delta.len()
    }

    pub fn num_letters(&self) -> usize {
        self.num_letters
    }

    pub fn initial(&self) -> usize {
        self.initial
    }

    #[inline]
    pub fn step(&self, x: usize, letter: usize) -> usize {
        self.delta[x][letter]
    }

    pub fn output(&self, x: usize) -> &O {
        &self.out[x]
    }

    /// The state reached from `x` by reading `word`.
    pub fn run_from(&self, x: usize, word: &[usize]) -> usize {
        word.iter().fold(x, |s, &l| self.delta[s][l])
    }

    /// The output after reading `word` from the initial state.
    pub fn accepts(&self, word: &[usize]) -> &O {
        &self.out[self.run_from(self.initial, word)]
    }

    /// States in breadth-first order from the initial state.
    pub fn bfs_order(&self) -> Vec<usize> {
        let mut seen = vec![false; self.num_states()];
        let mut order = vec![self.initial];
        seen[self.initial] = true;
        let mut i = 0;
        while i < order.len() {
            let x = order[i];
            i += 1;
            for &y in &self.delta[x] {
                if !seen[y] {
                    seen[y] = true;
                    order.push(y);
                }
            }
        }
        order
    }

    /// Restriction to reachable states, renumbered breadth-first.
    pub fn reachable(&self) -> MooreAutomaton<O> {
        let order = self.bfs_order();
        let mut index = vec![usize::MAX; self.num_states()];
        for (i, &x) in order.iter().enumerate() {
            index[x] = i;
        }
        MooreAutomaton {
            num_letters: self.num_letters,
            delta: order
                .iter()
                .map(|&x| self.delta[x].iter().map(|&y| index[y]).collect())
                .collect(),
            out: order.iter().map(|&x| self.out[x].clone()).collect(),
            initial: 0,
        }
    }

    /// The minimal machine: reachable part quotiented by output
    /// equivalence, renumbered breadth-first.
    pub fn minimise(&self) -> MooreAutomaton<O> {
        let r = self.reachable();
        let class = refine(r.num_states(), renumber(&r.out), |x| {
            r.delta[x].iter().map(|&y| Some(y)).collect()
        });
        let k = class.iter().copied().max().map_or(0, |m| m + 1);
        let mut rep = vec![usize::MAX; k];
        for (x, &c) in class.iter().enumerate() {
            if rep[c] == usize::MAX {
                rep[c] = x;
            }
        }
        MooreAutomaton {
            num_letters: r.num_letters,
            delta: rep
                .iter()
                .map(|&x| r.delta[x].iter().map(|&y| class[y]).collect())
                .collect(),
            out: rep.iter().map(|&x| r.out[x].clone()).collect(),
            initial: class[r.initial],
        }
        .reachable()
    }

    /// A shortest word on which the two machines produce different outputs,
    /// or `None` if they are equivalent. Among shortest words the result is
    /// the least in letter order.
    ///
    /// The search is breadth-first over pairs of states, expanding letters
    /// in increasing order and comparing outputs when a pair is first
    /// discovered.
    pub fn bisim_cex(&self, other: &MooreAutomaton<O>) -> Option<Vec<usize>> {
        assert_eq!(self.num_letters, other.num_letters, "shared input alphabet");
        let start = (self.initial, other.initial);
        if self.out[start.0] != other.out[start.1] {
            return Some(Vec::new());
        }
        let mut parent: HashMap<Pair, Option<(Pair, usize)>> = HashMap::new();
        parent.insert(start, None);
        let mut queue = VecDeque::from([start]);
        while let Some((s, t)) = queue.pop_front() {
            for l in 0..self.num_letters {
                let next = (self.delta[s][l], other.delta[t][l]);
                if parent.contains_key(&next) {
                    continue;
                }
                parent.insert(next, Some(((s, t), l)));
                if self.out[next.0] != other.out[next.1] {
                    let mut word = Vec::new();
                    let mut cur = next;
                    while let Some(Some((prev, l))) = parent.get(&cur) {
                        word.push(*l);
                        cur = *prev;
                    }
                    word.reverse();
                    return Some(word);
                }
                queue.push_back(next);
            }
        }
        None
    }

    /// Whether an initial-state-preserving bijection commuting with
    /// transitions and outputs exists.
    pub fn isomorphic(&self, other: &MooreAutomaton<O>) -> bool {
        if self.num_letters != other.num_letters || self.num_states() != other.num_states() {
            return false;
        }
        let n = self.num_states();
        let mut fwd = vec![usize::MAX; n];
        let mut bwd = vec![usize::MAX; n];
        fwd[self.initial] = other.initial;
        bwd[other.initial] = self.initial;
        let mut queue = VecDeque::from([(self.initial, other.initial)]);
        while let Some((s, t)) = queue.pop_front() {
            if self.out[s] != other.out[t] {
                return false;
            }
            for l in 0..self.num_letters {
                let (s2, t2) = (self.delta[s][l], other.delta[t][l]);
                match (fwd[s2], bwd[t2]) {
                    (usize::MAX, usize::MAX) => {
                        fwd[s2] = t2;
                        bwd[t2] = s2;
                        queue.push_back((s2, t2));
                    }
                    (f, b) if f == t2 && b == s2 => {}
                    _ => return false,
                }
            }
        }
        fwd.iter().all(|&t| t != usize::MAX)
    }
}

/// Letter index of the pair `(atom, action)` in the input alphabet
/// `At·Σ`, ordered atom-major.
#[inline]
pub fn letter_of(atom: Atom, action: usize, num_actions: usize) -> usize {
    atom.index() * num_actions + action
}

/// Inverse of [`letter_of`].
#[inline]
pub fn split_letter(letter: usize, num_actions: usize) -> (Atom, usize) {
    (Atom((letter / num_actions) as u32), letter % num_actions)
}

/// The Moore machine of a G-automaton: a sink state is added after the
/// original states, halting and undefined transitions lead to the sink,
/// and a state outputs the set of atoms it accepts. The sink outputs the
/// empty set.
pub fn to_moore(aut: &GAutomaton) -> MooreAutomaton<AtomSet> {
    let alphabet = aut.alphabet();
    let (na, nat) = (alphabet.num_actions(), alphabet.num_atoms());
    let n = aut.num_states();
    let sink = n;
    let letters = nat * na;
    let mut delta = Vec::with_capacity(n + 1);
    let mut out = Vec::with_capacity(n + 1);
    for x in 0..n {
        let mut row = vec![sink; letters];
        let mut acc = FixedBitSet::with_capacity(nat);
        for a in alphabet.atoms() {
            match aut.delta(x, a) {
                Outcome::Accept => acc.insert(a.index()),
                Outcome::Reject => {}
                Outcome::Step(p, y) => row[letter_of(a, p, na)] = y,
            }
        }
        delta.push(row);
        out.push(acc);
    }
    delta.push(vec![sink; letters]);
    out.push(FixedBitSet::with_capacity(nat));
    MooreAutomaton {
        num_letters: letters,
        delta,
        out,
        initial: aut.initial(),
    }
}
