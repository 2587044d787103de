use std::collections::{HashMap, VecDeque};

use crate::error::CanonError;
use crate::refine::refine;
use crate::regex::Regex;

/// A pair of states, one from each automaton.
type Pair = (usize, usize);

/// Bound on the number of derivative states built from a regex.
pub const DFA_STATE_CAP: usize = 100_000;

/// A complete deterministic automaton over single-character letters.
///
/// Invariants: every row of `delta` has one successor per letter, all
/// successors and `initial` name existing states, and `accepting` has one
/// entry per state.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Dfa {
    alphabet: Vec<char>,
    delta: Vec<Vec<usize>>,
    accepting: Vec<bool>,
    initial: usize,
}

impl Dfa {
    pub fn new(
        alphabet: Vec<char>,
        delta: Vec<Vec<usize>>,
        accepting: Vec<bool>,
        initial: usize,
    ) -> Result<Self, CanonError> {
        let n = delta.len();
        if accepting.len() != n || initial >= n {
            return Err(CanonError::Malformed("state count mismatch".into()));
        }
        if delta
            .iter()
            .any(|row| row.len() != alphabet.len() || row.iter().any(|&y| y >= n))
        {
            return Err(CanonError::Malformed(
                "transition table is not total".into(),
            ));
        }
        Ok(Dfa {
            alphabet,
            delta,
            accepting,
            initial,
        })
    }

    /// The derivative automaton of `re`: states are the distinct
    /// derivatives reachable from `re`, numbered breadth-first.
    pub fn from_regex(re: &Regex, alphabet: Vec<char>) -> Result<Self, CanonError> {
        let mut index = HashMap::from([(re.clone(), 0usize)]);
        let mut states = vec![re.clone()];
        let mut queue = VecDeque::from([0usize]);
        let mut delta = vec![Vec::new()];
        while let Some(x) = queue.pop_front() {
            let mut row = Vec::with_capacity(alphabet.len());
            for l in 0..alphabet.len() {
                let d = states[x].derive(l);
                let y = match index.get(&d) {
                    Some(&y) => y,
                    None => {
                        if states.len() >= DFA_STATE_CAP {
                            return Err(CanonError::Cap(format!(
                                "more than {DFA_STATE_CAP} derivative states"
                            )));
                        }
                        let y = states.len();
                        index.insert(d.clone(), y);
                        states.push(d);
                        delta.push(Vec::new());
                        queue.push_back(y);
                        y
                    }
                };
                row.push(y);
            }
            delta[x] = row;
        }
        let accepting = states.iter().map(Regex::nullable).collect();
        Dfa::new(alphabet, delta, accepting, 0)
    }

    pub fn alphabet(&self) -> &[char] {
        &self.alphabet
    }

    pub fn num_states(&self) -> usize {
        self.delta.len()
    }

    pub fn initial(&self) -> usize {
        self.initial
    }

    pub fn step(&self, x: usize, letter: usize) -> usize {
        self.delta[x][letter]
    }

    pub fn is_accepting(&self, x: usize) -> bool {
        self.accepting[x]
    }

    /// Letter indices of `text`.
    pub fn word(&self, text: &str) -> Result<Vec<usize>, CanonError> {
        word_over(&self.alphabet, text)
    }

    pub fn accepts(&self, word: &[usize]) -> bool {
        self.accepting[word.iter().fold(self.initial, |x, &l| self.delta[x][l])]
    }

    /// Restriction to reachable states, renumbered breadth-first with
    /// letters in alphabet order.
    pub fn reachable(&self) -> Dfa {
        let mut index = vec![usize::MAX; self.num_states()];
        let mut order = vec![self.initial];
        index[self.initial] = 0;
        let mut i = 0;
        while i < order.len() {
            let x = order[i];
            i += 1;
            for &y in &self.delta[x] {
                if index[y] == usize::MAX {
                    index[y] = order.len();
                    order.push(y);
                }
            }
        }
        Dfa {
            alphabet: self.alphabet.clone(),
            delta: order
                .iter()
                .map(|&x| self.delta[x].iter().map(|&y| index[y]).collect())
                .collect(),
            accepting: order.iter().map(|&x| self.accepting[x]).collect(),
            initial: 0,
        }
    }

    /// The minimal automaton: reachable part quotiented by language
    /// equivalence, renumbered breadth-first.
    pub fn minimise(&self) -> Dfa {
        let r = self.reachable();
        let labels: Vec<usize> = r.accepting.iter().map(|&b| usize::from(b)).collect();
        let class = refine(r.num_states(), &labels, |x, out| out.extend(&r.delta[x]));
        let k = class.iter().copied().max().map_or(0, |m| m + 1);
        let mut rep = vec![usize::MAX; k];
        for (x, &c) in class.iter().enumerate() {
            if rep[c] == usize::MAX {
                rep[c] = x;
            }
        }
        Dfa {
            alphabet: r.alphabet.clone(),
            delta: rep
                .iter()
                .map(|&x| r.delta[x].iter().map(|&y| class[y]).collect())
                .collect(),
            accepting: rep.iter().map(|&x| r.accepting[x]).collect(),
            initial: class[r.initial],
        }
        .reachable()
    }

    /// A shortest word accepted by exactly one of the two automata, least
    /// in letter order, or `None` if their languages coincide.
    pub fn difference_witness(&self, other: &Dfa) -> Option<Vec<usize>> {
        assert_eq!(self.alphabet, other.alphabet, "shared alphabet");
        let start = (self.initial, other.initial);
        let mut parent: HashMap<Pair, Option<(Pair, usize)>> = HashMap::from([(start, None)]);
        let mut queue = VecDeque::from([start]);
        while let Some(pair @ (s, t)) = queue.pop_front() {
            if self.accepting[s] != other.accepting[t] {
                let mut word = Vec::new();
                let mut cur = pair;
                while let Some(Some((prev, l))) = parent.get(&cur) {
                    word.push(*l);
                    cur = *prev;
                }
                word.reverse();
                return Some(word);
            }
            for l in 0..self.alphabet.len() {
                let next = (self.delta[s][l], other.delta[t][l]);
                if let std::collections::hash_map::Entry::Vacant(e) = parent.entry(next) {
                    e.insert(Some((pair, l)));
                    queue.push_back(next);
                }
            }
        }
        None
    }
}

pub(crate) fn word_over(alphabet: &[char], text: &str) -> Result<Vec<usize>, CanonError> {
    text.chars()
        .filter(|c| !c.is_whitespace())
        .map(|c| {
            alphabet
                .iter()
                .position(|&a| a == c)
                .ok_or(CanonError::UnknownLetter(c))
        })
        .collect()
}

/// The minimal DFA of a regex. The alphabet defaults to the letters
/// occurring in the regex, sorted.
pub fn minimal_dfa(text: &str, alphabet: Option<&[char]>) -> Result<Dfa, CanonError> {
    let alphabet = match alphabet {
        Some(a) => {
            let mut sorted = a.to_vec();
            sorted.sort_unstable();
            sorted.dedup();
            if sorted.len() != a.len() {
                return Err(CanonError::Malformed("alphabet repeats a letter".into()));
            }
            a.to_vec()
        }
        None => Regex::letters_of(text)?,
    };
    let re = Regex::parse(text, &alphabet)?;
    Ok(Dfa::from_regex(&re, alphabet)?.minimise())
}
