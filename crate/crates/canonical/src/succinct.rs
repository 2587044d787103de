//! Non-deterministic and `Z2`-weighted acceptors and the canonical
//! constructions that produce them.

use std::collections::{HashMap, VecDeque};
use std::fmt::Write;
use std::str::FromStr;

use crate::algebra::{free_bialgebra, minimise_bialgebra, ClosureAlgebra, Monad};
use crate::dfa::{word_over, Dfa, DFA_STATE_CAP};
use crate::error::CanonError;
use crate::generators::{extract_generators, mask_members, GeneratorSet, Target};

/// How a configuration of states accepts and steps.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum AcceptorKind {
    /// Configurations are sets: successors are unions and a set accepts
    /// when it meets the accepting states.
    Nfa,
    /// Configurations are `Z2` vectors: successors are symmetric
    /// differences and a vector accepts when it has an odd number of
    /// accepting states.
    Xor,
}

/// A succinct acceptor with at most 64 states; sets of states are `u64`
/// bitmasks.
///
/// Invariants: `delta` has one row per state and one mask per letter; all
/// masks only mention existing states.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SuccinctAutomaton {
    kind: AcceptorKind,
    alphabet: Vec<char>,
    delta: Vec<Vec<u64>>,
    accepting: u64,
    initial: u64,
}

fn to_mask(states: &[usize], n: usize) -> Result<u64, CanonError> {
    states.iter().try_fold(0u64, |m, &q| {
        if q < n {
            Ok(m | 1 << q)
        } else {
            Err(CanonError::Malformed(format!("no state {q}")))
        }
    })
}

impl SuccinctAutomaton {
    /// Builds an acceptor from successor lists. `delta[q][l]` lists the
    /// successors of `q` under letter `l`; for xor acceptors a state listed
    /// twice cancels.
    pub fn new(
        kind: AcceptorKind,
        alphabet: Vec<char>,
        delta: Vec<Vec<Vec<usize>>>,
        accepting: &[usize],
        initial: &[usize],
    ) -> Result<Self, CanonError> {
        let n = delta.len();
        if n > 64 {
            return Err(CanonError::Cap(format!("{n} states exceeds 64")));
        }
        let combine = |states: &[usize]| -> Result<u64, CanonError> {
            match kind {
                AcceptorKind::Nfa => to_mask(states, n),
                AcceptorKind::Xor => states
                    .iter()
                    .try_fold(0u64, |m, &q| Ok(m ^ to_mask(&[q], n)?)),
            }
        };
        let mut rows = Vec::with_capacity(n);
        for row in &delta {
            if row.len() != alphabet.len() {
                return Err(CanonError::Malformed(
                    "one successor list per letter".into(),
                ));
            }
            rows.push(
                row.iter()
                    .map(|s| combine(s))
                    .collect::<Result<Vec<_>, _>>()?,
            );
        }
        Ok(SuccinctAutomaton {
            kind,
            alphabet,
            delta: rows,
            accepting: to_mask(accepting, n)?,
            initial: combine(initial)?,
        })
    }

    pub fn kind(&self) -> AcceptorKind {
        self.kind
    }

    pub fn alphabet(&self) -> &[char] {
        &self.alphabet
    }

    pub fn num_states(&self) -> usize {
        self.delta.len()
    }

    pub fn successors(&self, q: usize, letter: usize) -> Vec<usize> {
        mask_members(self.delta[q][letter])
    }

    pub fn is_accepting(&self, q: usize) -> bool {
        self.accepting >> q & 1 == 1
    }

    pub fn initial_states(&self) -> Vec<usize> {
        mask_members(self.initial)
    }

    /// The configuration reached from `config` by `letter`.
    pub fn step_config(&self, config: u64, letter: usize) -> u64 {
        mask_members(config)
            .into_iter()
            .fold(0, |acc, q| match self.kind {
                AcceptorKind::Nfa => acc | self.delta[q][letter],
                AcceptorKind::Xor => acc ^ self.delta[q][letter],
            })
    }

    pub fn config_accepts(&self, config: u64) -> bool {
        let hit = config & self.accepting;
        match self.kind {
            AcceptorKind::Nfa => hit != 0,
            AcceptorKind::Xor => hit.count_ones() % 2 == 1,
        }
    }

    /// Runs the configuration semantics from `config`.
    pub fn accepts_from(&self, config: u64, word: &[usize]) -> bool {
        self.config_accepts(word.iter().fold(config, |c, &l| self.step_config(c, l)))
    }

    pub fn accepts(&self, word: &[usize]) -> bool {
        self.accepts_from(self.initial, word)
    }

    /// Letter indices of `text`.
    pub fn word(&self, text: &str) -> Result<Vec<usize>, CanonError> {
        word_over(&self.alphabet, text)
    }

    /// The determinisation over reachable configurations.
    pub fn determinise(&self) -> Result<Dfa, CanonError> {
        let mut index = HashMap::from([(self.initial, 0usize)]);
        let mut configs = vec![self.initial];
        let mut delta: Vec<Vec<usize>> = Vec::new();
        let mut queue = VecDeque::from([0usize]);
        while let Some(x) = queue.pop_front() {
            let mut row = Vec::with_capacity(self.alphabet.len());
            for l in 0..self.alphabet.len() {
                let c = self.step_config(configs[x], l);
                let y = match index.get(&c) {
                    Some(&y) => y,
                    None => {
                        if configs.len() >= DFA_STATE_CAP {
                            return Err(CanonError::Cap(format!(
                                "more than {DFA_STATE_CAP} configurations"
                            )));
                        }
                        index.insert(c, configs.len());
                        configs.push(c);
                        queue.push_back(configs.len() - 1);
                        configs.len() - 1
                    }
                };
                row.push(y);
            }
            if delta.len() <= x {
                delta.resize(x + 1, Vec::new());
            }
            delta[x] = row;
        }
        let accepting = configs.iter().map(|&c| self.config_accepts(c)).collect();
        Dfa::new(self.alphabet.clone(), delta, accepting, 0)
    }

    /// Whether a bijection of states maps initial states, accepting states
    /// and transitions of `self` exactly onto those of `other`. The search
    /// backtracks over candidate images and is exponential in the worst
    /// case.
    pub fn isomorphic(&self, other: &SuccinctAutomaton) -> bool {
        if self.kind != other.kind
            || self.alphabet != other.alphabet
            || self.num_states() != other.num_states()
        {
            return false;
        }
        let sig = |a: &SuccinctAutomaton, q: usize| {
            let outdeg: Vec<u32> = a.delta[q].iter().map(|m| m.count_ones()).collect();
            let indeg: Vec<usize> = (0..a.alphabet.len())
                .map(|l| {
                    (0..a.num_states())
                        .filter(|&p| a.delta[p][l] >> q & 1 == 1)
                        .count()
                })
                .collect();
            (a.is_accepting(q), a.initial >> q & 1 == 1, outdeg, indeg)
        };
        let n = self.num_states();
        let sa: Vec<_> = (0..n).map(|q| sig(self, q)).collect();
        let sb: Vec<_> = (0..n).map(|q| sig(other, q)).collect();
        let mut perm = vec![usize::MAX; n];
        let mut used = vec![false; n];
        self.extend_iso(other, &sa, &sb, 0, &mut perm, &mut used)
    }

    fn extend_iso<S: PartialEq>(
        &self,
        other: &SuccinctAutomaton,
        sa: &[S],
        sb: &[S],
        q: usize,
        perm: &mut [usize],
        used: &mut [bool],
    ) -> bool {
        let n = self.num_states();
        if q == n {
            let image = |m: u64| {
                mask_members(m)
                    .into_iter()
                    .fold(0u64, |acc, p| acc | 1 << perm[p])
            };
            return (0..n).all(|p| {
                (0..self.alphabet.len()).all(|l| image(self.delta[p][l]) == other.delta[perm[p]][l])
            });
        }
        for t in 0..n {
            if used[t] || sa[q] != sb[t] {
                continue;
            }
            perm[q] = t;
            used[t] = true;
            if self.extend_iso(other, sa, sb, q + 1, perm, used) {
                return true;
            }
            used[t] = false;
        }
        perm[q] = usize::MAX;
        false
    }

    /// Graphviz rendering. Accepting states are double circles, each
    /// initial state has an incoming edge from a point node, and parallel
    /// edges are merged with their letters separated by `,`. Edges of xor
    /// acceptors are prefixed with `+`.
    pub fn to_dot(&self) -> String {
        let mut s = String::new();
        writeln!(
            s,
            "digraph {} {{",
            if self.kind == AcceptorKind::Nfa {
                "N"
            } else {
                "X"
            }
        )
        .unwrap();
        writeln!(s, "  rankdir=LR;").unwrap();
        for q in 0..self.num_states() {
            let shape = if self.is_accepting(q) {
                "doublecircle"
            } else {
                "circle"
            };
            writeln!(s, "  q{q} [shape={shape}];").unwrap();
        }
        for q in self.initial_states() {
            writeln!(s, "  init{q} [shape=point];").unwrap();
            writeln!(s, "  init{q} -> q{q};").unwrap();
        }
        let prefix = if self.kind == AcceptorKind::Xor {
            "+"
        } else {
            ""
        };
        for q in 0..self.num_states() {
            for t in 0..self.num_states() {
                let letters: Vec<String> = (0..self.alphabet.len())
                    .filter(|&l| self.delta[q][l] >> t & 1 == 1)
                    .map(|l| self.alphabet[l].to_string())
                    .collect();
                if !letters.is_empty() {
                    writeln!(
                        s,
                        "  q{q} -> q{t} [label=\"{prefix}{}\"];",
                        letters.join(",")
                    )
                    .unwrap();
                }
            }
        }
        writeln!(s, "}}").unwrap();
        s
    }
}

/// The succinct acceptor whose states are the generators: a generator
/// accepts when its class does, its successor under a letter is the
/// decomposition of the successor class, and the initial configuration is
/// the decomposition of the initial class.
pub fn succinct_automaton(alg: &ClosureAlgebra, gens: &GeneratorSet) -> SuccinctAutomaton {
    let letters = alg.free().dfa().alphabet().to_vec();
    let delta = gens
        .elements()
        .iter()
        .map(|&g| {
            (0..letters.len())
                .map(|l| gens.decompose_mask(alg.step(g, l)))
                .collect()
        })
        .collect();
    let accepting = gens
        .elements()
        .iter()
        .enumerate()
        .filter(|&(_, &g)| alg.output(g))
        .map(|(i, _)| 1u64 << i)
        .sum();
    SuccinctAutomaton {
        kind: match gens.target() {
            Target::P => AcceptorKind::Nfa,
            Target::R => AcceptorKind::Xor,
        },
        alphabet: letters,
        delta,
        accepting,
        initial: gens.decompose_mask(alg.initial()),
    }
}

/// The five canonical acceptors.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Construction {
    Rfsa,
    Atomaton,
    Distromaton,
    Xor,
    XorCaba,
}

impl Construction {
    pub const ALL: [Construction; 5] = [
        Construction::Rfsa,
        Construction::Atomaton,
        Construction::Distromaton,
        Construction::Xor,
        Construction::XorCaba,
    ];

    /// The algebra closed over and the algebra generated into.
    pub fn monads(self) -> (Monad, Target) {
        match self {
            Construction::Rfsa => (Monad::P, Target::P),
            Construction::Atomaton => (Monad::H, Target::P),
            Construction::Distromaton => (Monad::A, Target::P),
            Construction::Xor => (Monad::R, Target::R),
            Construction::XorCaba => (Monad::H, Target::R),
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Construction::Rfsa => "rfsa",
            Construction::Atomaton => "atomaton",
            Construction::Distromaton => "distromaton",
            Construction::Xor => "xor",
            Construction::XorCaba => "xorcaba",
        }
    }
}

impl FromStr for Construction {
    type Err = CanonError;

    fn from_str(s: &str) -> Result<Self, CanonError> {
        Construction::ALL
            .into_iter()
            .find(|c| c.name() == s)
            .ok_or_else(|| CanonError::Malformed(format!("unknown construction `{s}`")))
    }
}

/// A canonical acceptor together with the algebra it was built from.
#[derive(Debug, Clone)]
pub struct Canonized {
    pub dfa: Dfa,
    pub algebra: ClosureAlgebra,
    pub generators: GeneratorSet,
    pub automaton: SuccinctAutomaton,
}

/// Runs the pipeline minimal DFA, free algebra, quotient, generators,
/// succinct acceptor.
pub fn canonize_full(dfa: &Dfa, construction: Construction) -> Result<Canonized, CanonError> {
    let dfa = dfa.minimise();
    let (monad, target) = construction.monads();
    let algebra = minimise_bialgebra(free_bialgebra(&dfa, monad)?)?;
    let generators = extract_generators(&algebra, target)?;
    let automaton = succinct_automaton(&algebra, &generators);
    Ok(Canonized {
        dfa,
        algebra,
        generators,
        automaton,
    })
}

/// The canonical acceptor of the language of `dfa`.
pub fn canonize(dfa: &Dfa, construction: Construction) -> Result<SuccinctAutomaton, CanonError> {
    canonize_full(dfa, construction).map(|c| c.automaton)
}

/// Whether the acceptor accepts `word`.
pub fn succinct_accepts(aut: &SuccinctAutomaton, word: &[usize]) -> bool {
    aut.accepts(word)
}
