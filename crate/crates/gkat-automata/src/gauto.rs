use std::collections::{BTreeSet, VecDeque};

use gkat_core::{Alphabet, Atom, FiniteGsLang, GuardedString};

use crate::error::AutomataError;
use crate::refine::refine;

/// What a state does on an atom.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Outcome {
    Accept,
    Reject,
    /// Emit the action and move to the state.
    Step(usize, usize),
}

/// A finite G-automaton with a distinguished initial state.
///
/// Invariants: `delta[x][α]` is defined for every state `x` and every atom
/// rank `α`, every `Step` names a declared action and an existing state,
/// and `initial` is an existing state.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GAutomaton {
    alphabet: Alphabet,
    delta: Vec<Vec<Outcome>>,
    initial: usize,
}

impl GAutomaton {
    pub fn new(
        alphabet: Alphabet,
        delta: Vec<Vec<Outcome>>,
        initial: usize,
    ) -> Result<Self, AutomataError> {
        let n = delta.len();
        if initial >= n {
            return Err(AutomataError::NoSuchState(initial));
        }
        for (x, row) in delta.iter().enumerate() {
            if row.len() != alphabet.num_atoms() {
                return Err(AutomataError::Malformed(format!(
                    "state {x} has {} outcomes for {} atoms",
                    row.len(),
                    alphabet.num_atoms()
                )));
            }
            for o in row {
                if let Outcome::Step(p, y) = *o {
                    if p >= alphabet.num_actions() {
                        return Err(AutomataError::Malformed(format!(
                            "state {x} emits undeclared action {p}"
                        )));
                    }
                    if y >= n {
                        return Err(AutomataError::NoSuchState(y));
                    }
                }
            }
        }
        Ok(GAutomaton {
            alphabet,
            delta,
            initial,
        })
    }

    /// Builds an automaton with `n` states from a transition function.
    pub fn from_fn<F>(
        alphabet: Alphabet,
        n: usize,
        initial: usize,
        f: F,
    ) -> Result<Self, AutomataError>
    where
        F: Fn(usize, Atom) -> Outcome,
    {
        let delta = (0..n)
            .map(|x| alphabet.atoms().map(|a| f(x, a)).collect())
            .collect();
        GAutomaton::new(alphabet, delta, initial)
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn num_states(&self) -> usize {
        self.delta.len()
    }

    pub fn initial(&self) -> usize {
        self.initial
    }

    #[inline]
    pub fn delta(&self, x: usize, a: Atom) -> Outcome {
        self.delta[x][a.index()]
    }

    pub fn rows(&self) -> &[Vec<Outcome>] {
        &self.delta
    }

    /// Whether `w` belongs to the language of state `x`.
    pub fn accepts_from(&self, x: usize, w: &GuardedString) -> bool {
        let mut state = x;
        for (a, &p) in w.atoms().iter().zip(w.actions()) {
            match self.delta(state, *a) {
                Outcome::Step(q, y) if q == p => state = y,
                _ => return false,
            }
        }
        self.delta(state, w.last_atom()) == Outcome::Accept
    }

    /// Whether `w` belongs to the language of the initial state.
    pub fn accepts(&self, w: &GuardedString) -> bool {
        self.accepts_from(self.initial, w)
    }

    /// The language of `x` restricted to at most `k` actions.
    pub fn language_upto(&self, x: usize, k: usize) -> FiniteGsLang {
        let mut strings = BTreeSet::new();
        // (state, prefix without its final atom)
        let mut stack: Vec<(usize, Vec<Atom>, Vec<usize>)> = vec![(x, Vec::new(), Vec::new())];
        while let Some((s, atoms, actions)) = stack.pop() {
            for a in self.alphabet.atoms() {
                match self.delta(s, a) {
                    Outcome::Accept => {
                        let mut full = atoms.clone();
                        full.push(a);
                        strings.insert(
                            GuardedString::new(full, actions.clone()).expect("alternating"),
                        );
                    }
                    Outcome::Reject => {}
                    Outcome::Step(p, y) => {
                        if actions.len() < k {
                            let mut atoms2 = atoms.clone();
                            atoms2.push(a);
                            let mut actions2 = actions.clone();
                            actions2.push(p);
                            stack.push((y, atoms2, actions2));
                        }
                    }
                }
            }
        }
        FiniteGsLang { strings, bound: k }
    }

    /// States whose language is non-empty: the least set containing every
    /// state with an accepting atom and closed under stepping backwards.
    pub fn live_states(&self) -> Vec<bool> {
        let n = self.num_states();
        let mut live = vec![false; n];
        let mut changed = true;
        while changed {
            changed = false;
            for x in 0..n {
                if live[x] {
                    continue;
                }
                let is_live = self.delta[x].iter().any(|o| match *o {
                    Outcome::Accept => true,
                    Outcome::Step(_, y) => live[y],
                    Outcome::Reject => false,
                });
                if is_live {
                    live[x] = true;
                    changed = true;
                }
            }
        }
        live
    }

    /// The first state (in index order) that steps into a dead state.
    fn first_abnormal(&self) -> Option<usize> {
        let live = self.live_states();
        (0..self.num_states()).find(|&x| {
            self.delta[x]
                .iter()
                .any(|o| matches!(*o, Outcome::Step(_, y) if !live[y]))
        })
    }

    /// Every `Step` targets a state with non-empty language.
    pub fn is_normal(&self) -> bool {
        self.first_abnormal().is_none()
    }

    fn require_normal(&self) -> Result<(), AutomataError> {
        match self.first_abnormal() {
            Some(x) => Err(AutomataError::NotNormal(x)),
            None => Ok(()),
        }
    }

    /// Replaces every step into a dead state by `Reject`. States and their
    /// languages are otherwise unchanged.
    pub fn normalise(&self) -> GAutomaton {
        let live = self.live_states();
        let delta = self
            .delta
            .iter()
            .map(|row| {
                row.iter()
                    .map(|o| match *o {
                        Outcome::Step(_, y) if !live[y] => Outcome::Reject,
                        other => other,
                    })
                    .collect()
            })
            .collect();
        GAutomaton {
            alphabet: self.alphabet.clone(),
            delta,
            initial: self.initial,
        }
    }

    /// States in breadth-first order from the initial state, exploring atoms
    /// in atom order.
    pub fn bfs_order(&self) -> Vec<usize> {
        let mut seen = vec![false; self.num_states()];
        let mut order = vec![self.initial];
        seen[self.initial] = true;
        let mut i = 0;
        while i < order.len() {
            let x = order[i];
            i += 1;
            for o in &self.delta[x] {
                if let Outcome::Step(_, y) = *o {
                    if !seen[y] {
                        seen[y] = true;
                        order.push(y);
                    }
                }
            }
        }
        order
    }

    /// Restriction to the states reachable from the initial state,
    /// renumbered in breadth-first order (the initial state becomes 0).
    pub fn reachable(&self) -> GAutomaton {
        let order = self.bfs_order();
        let mut index = vec![usize::MAX; self.num_states()];
        for (i, &x) in order.iter().enumerate() {
            index[x] = i;
        }
        let delta = order
            .iter()
            .map(|&x| {
                self.delta[x]
                    .iter()
                    .map(|o| match *o {
                        Outcome::Step(p, y) => Outcome::Step(p, index[y]),
                        other => other,
                    })
                    .collect()
            })
            .collect();
        GAutomaton {
            alphabet: self.alphabet.clone(),
            delta,
            initial: 0,
        }
    }

    /// Greatest simulation: `sim[x][y]` iff `y` simulates `x`.
    pub fn simulation(&self) -> Result<Vec<Vec<bool>>, AutomataError> {
        self.require_normal()?;
        let n = self.num_states();
        let mut rel = vec![vec![true; n]; n];
        let mut changed = true;
        while changed {
            changed = false;
            for x in 0..n {
                for y in 0..n {
                    if !rel[x][y] {
                        continue;
                    }
                    let ok =
                        self.delta[x]
                            .iter()
                            .zip(&self.delta[y])
                            .all(|(ox, oy)| match (*ox, *oy) {
                                (Outcome::Reject, _) => true,
                                (Outcome::Accept, Outcome::Accept) => true,
                                (Outcome::Step(p, x2), Outcome::Step(q, y2)) => {
                                    p == q && rel[x2][y2]
                                }
                                _ => false,
                            });
                    if !ok {
                        rel[x][y] = false;
                        changed = true;
                    }
                }
            }
        }
        Ok(rel)
    }

    /// Whether `y` simulates `x`; for normal automata this is inclusion of
    /// the language of `x` in that of `y`.
    pub fn similar(&self, x: usize, y: usize) -> Result<bool, AutomataError> {
        let n = self.num_states();
        for s in [x, y] {
            if s >= n {
                return Err(AutomataError::NoSuchState(s));
            }
        }
        Ok(self.simulation()?[x][y])
    }

    /// Bisimilarity classes of all states, numbered in order of their least
    /// member.
    fn bisimulation_classes(&self) -> Vec<usize> {
        let n = self.num_states();
        let labels: Vec<Vec<(u8, usize)>> = self
            .delta
            .iter()
            .map(|row| {
                row.iter()
                    .map(|o| match *o {
                        Outcome::Accept => (0, 0),
                        Outcome::Reject => (1, 0),
                        Outcome::Step(p, _) => (2, p),
                    })
                    .collect()
            })
            .collect();
        let initial = crate::refine::renumber(&labels);
        refine(n, initial, |x| {
            self.delta[x]
                .iter()
                .map(|o| match *o {
                    Outcome::Step(_, y) => Some(y),
                    _ => None,
                })
                .collect()
        })
    }

    /// The minimal automaton: normalise, restrict to reachable states,
    /// quotient by bisimilarity and renumber breadth-first.
    ///
    /// The quotient keeps, for each class, the transitions of its member
    /// with the least breadth-first index.
    pub fn minimise(&self) -> GAutomaton {
        let r = self.normalise().reachable();
        let class = r.bisimulation_classes();
        let k = class.iter().copied().max().map_or(0, |m| m + 1);
        let mut rep = vec![usize::MAX; k];
        for (x, &c) in class.iter().enumerate() {
            if rep[c] == usize::MAX {
                rep[c] = x;
            }
        }
        let delta = rep
            .iter()
            .map(|&x| {
                r.delta[x]
                    .iter()
                    .map(|o| match *o {
                        Outcome::Step(p, y) => Outcome::Step(p, class[y]),
                        other => other,
                    })
                    .collect()
            })
            .collect();
        GAutomaton {
            alphabet: r.alphabet.clone(),
            delta,
            initial: class[r.initial],
        }
        .reachable()
    }

    /// Disjoint union with `other`; states of `other` are shifted by
    /// `self.num_states()`.
    pub fn disjoint_union(&self, other: &GAutomaton) -> Result<GAutomaton, AutomataError> {
        if self.alphabet != other.alphabet {
            return Err(AutomataError::AlphabetMismatch);
        }
        let shift = self.num_states();
        let mut delta = self.delta.clone();
        delta.extend(other.delta.iter().map(|row| {
            row.iter()
                .map(|o| match *o {
                    Outcome::Step(p, y) => Outcome::Step(p, y + shift),
                    other => other,
                })
                .collect()
        }));
        Ok(GAutomaton {
            alphabet: self.alphabet.clone(),
            delta,
            initial: self.initial,
        })
    }
}

struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n).collect(),
        }
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    fn union(&mut self, x: usize, y: usize) -> bool {
        let (rx, ry) = (self.find(x), self.find(y));
        if rx == ry {
            return false;
        }
        self.parent[rx] = ry;
        true
    }
}

/// Whether state `x` of `a1` and state `y` of `a2` are bisimilar, decided
/// by a union-find closure over pairs. Both automata must be normal, so
/// that bisimilarity coincides with language equivalence.
pub fn bisimilar(
    a1: &GAutomaton,
    x: usize,
    a2: &GAutomaton,
    y: usize,
) -> Result<bool, AutomataError> {
    if x >= a1.num_states() {
        return Err(AutomataError::NoSuchState(x));
    }
    if y >= a2.num_states() {
        return Err(AutomataError::NoSuchState(y));
    }
    a1.require_normal()?;
    a2.require_normal()?;
    let u = a1.disjoint_union(a2)?;
    let shift = a1.num_states();
    let mut uf = UnionFind::new(u.num_states());
    let mut work = VecDeque::from([(x, y + shift)]);
    while let Some((s, t)) = work.pop_front() {
        if !uf.union(s, t) {
            continue;
        }
        for (os, ot) in u.delta[s].iter().zip(&u.delta[t]) {
            match (*os, *ot) {
                (Outcome::Accept, Outcome::Accept) | (Outcome::Reject, Outcome::Reject) => {}
                (Outcome::Step(p, s2), Outcome::Step(q, t2)) if p == q => {
                    work.push_back((s2, t2));
                }
                _ => return Ok(false),
            }
        }
    }
    Ok(true)
}

/// Whether an initial-state-preserving bijective homomorphism between the
/// two automata exists. Transitions are deterministic per atom, so the
/// candidate bijection is forced by a synchronous breadth-first walk.
pub fn g_isomorphic(a1: &GAutomaton, a2: &GAutomaton) -> bool {
    if a1.alphabet != a2.alphabet || a1.num_states() != a2.num_states() {
        return false;
    }
    let n = a1.num_states();
    let mut fwd = vec![usize::MAX; n];
    let mut bwd = vec![usize::MAX; n];
    let mut queue = VecDeque::from([(a1.initial, a2.initial)]);
    fwd[a1.initial] = a2.initial;
    bwd[a2.initial] = a1.initial;
    while let Some((s, t)) = queue.pop_front() {
        for (os, ot) in a1.delta[s].iter().zip(&a2.delta[t]) {
            match (*os, *ot) {
                (Outcome::Accept, Outcome::Accept) | (Outcome::Reject, Outcome::Reject) => {}
                (Outcome::Step(p, s2), Outcome::Step(q, t2)) if p == q => {
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
                _ => return false,
            }
        }
    }
    // States not reached from the initial state leave the map partial.
    fwd.iter().all(|&t| t != usize::MAX)
}
