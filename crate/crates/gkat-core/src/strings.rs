use crate::alphabet::{Alphabet, Atom};
use crate::error::GkatError;

/// An element of `At·(Σ·At)*`: atoms and actions strictly alternating,
/// starting and ending with an atom.
///
/// Invariant: `atoms.len() == actions.len() + 1`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct GuardedString {
    atoms: Vec<Atom>,
    actions: Vec<usize>,
}

impl GuardedString {
    /// The guarded string consisting of a single atom.
    pub fn atom(a: Atom) -> Self {
        GuardedString {
            atoms: vec![a],
            actions: Vec::new(),
        }
    }

    /// Returns `None` unless `atoms.len() == actions.len() + 1`.
    pub fn new(atoms: Vec<Atom>, actions: Vec<usize>) -> Option<Self> {
        (atoms.len() == actions.len() + 1).then_some(GuardedString { atoms, actions })
    }

    pub fn atoms(&self) -> &[Atom] {
        &self.atoms
    }

    pub fn actions(&self) -> &[usize] {
        &self.actions
    }

    /// Number of actions.
    pub fn action_len(&self) -> usize {
        self.actions.len()
    }

    pub fn first_atom(&self) -> Atom {
        self.atoms[0]
    }

    pub fn last_atom(&self) -> Atom {
        *self.atoms.last().expect("a guarded string has an atom")
    }

    /// Appends `p·a`.
    pub fn push(&mut self, p: usize, a: Atom) {
        self.actions.push(p);
        self.atoms.push(a);
    }

    /// The fusion `self ⋄ other`, defined when the last atom of `self`
    /// equals the first atom of `other`.
    pub fn fuse(&self, other: &GuardedString) -> Option<GuardedString> {
        if self.last_atom() != other.first_atom() {
            return None;
        }
        let mut atoms = self.atoms.clone();
        atoms.extend_from_slice(&other.atoms[1..]);
        let mut actions = self.actions.clone();
        actions.extend_from_slice(&other.actions);
        Some(GuardedString { atoms, actions })
    }

    /// The `(atom, action)` prefix obtained by dropping the final atom.
    pub fn word(&self) -> GuardedWord {
        GuardedWord {
            pairs: self
                .atoms
                .iter()
                .copied()
                .zip(self.actions.iter().copied())
                .collect(),
        }
    }

    /// The suffix starting at the `i`-th atom.
    pub fn suffix_from(&self, i: usize) -> GuardedString {
        GuardedString {
            atoms: self.atoms[i..].to_vec(),
            actions: self.actions[i..].to_vec(),
        }
    }

    /// All suffixes ending in the final atom, longest first. There is one
    /// per atom occurrence, from `self` down to the bare final atom.
    pub fn suffixes(&self) -> Vec<GuardedString> {
        (0..self.atoms.len()).map(|i| self.suffix_from(i)).collect()
    }

    /// Space-separated rendering, e.g. `b p !b q b`.
    pub fn render(&self, alphabet: &Alphabet) -> String {
        let mut parts = vec![alphabet.render_atom(self.atoms[0])];
        for (p, a) in self.actions.iter().zip(&self.atoms[1..]) {
            parts.push(alphabet.actions()[*p].clone());
            parts.push(alphabet.render_atom(*a));
        }
        parts.join(" ")
    }

    /// Parses the rendering produced by [`GuardedString::render`].
    pub fn parse(text: &str, alphabet: &Alphabet) -> Result<Self, GkatError> {
        let toks: Vec<&str> = text.split_whitespace().collect();
        if toks.len() % 2 == 0 {
            return Err(GkatError::Syntax {
                pos: 0,
                msg: format!("`{text}` does not alternate atoms and actions"),
            });
        }
        let mut atoms = Vec::new();
        let mut actions = Vec::new();
        for (i, tok) in toks.iter().enumerate() {
            if i % 2 == 0 {
                atoms.push(alphabet.parse_atom(tok)?);
            } else {
                actions.push(
                    alphabet
                        .action_index(tok)
                        .ok_or_else(|| GkatError::Undeclared {
                            kind: "action",
                            name: tok.to_string(),
                            pos: 0,
                        })?,
                );
            }
        }
        Ok(GuardedString { atoms, actions })
    }
}

/// An element of `(At·Σ)*`: a guarded string without its final atom.
#[derive(Debug, Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct GuardedWord {
    pairs: Vec<(Atom, usize)>,
}

impl GuardedWord {
    pub fn empty() -> Self {
        GuardedWord { pairs: Vec::new() }
    }

    pub fn from_pairs(pairs: Vec<(Atom, usize)>) -> Self {
        GuardedWord { pairs }
    }

    pub fn pairs(&self) -> &[(Atom, usize)] {
        &self.pairs
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    /// `self·a·p`.
    pub fn extend(&self, a: Atom, p: usize) -> GuardedWord {
        let mut pairs = Vec::with_capacity(self.pairs.len() + 1);
        pairs.extend_from_slice(&self.pairs);
        pairs.push((a, p));
        GuardedWord { pairs }
    }

    /// The guarded string `self·e`.
    pub fn then(&self, e: &GuardedString) -> GuardedString {
        let mut atoms = Vec::with_capacity(self.pairs.len() + e.atoms.len());
        let mut actions = Vec::with_capacity(self.pairs.len() + e.actions.len());
        for &(a, p) in &self.pairs {
            atoms.push(a);
            actions.push(p);
        }
        atoms.extend_from_slice(&e.atoms);
        actions.extend_from_slice(&e.actions);
        GuardedString { atoms, actions }
    }

    /// Space-separated rendering; the empty word renders as `ε`.
    pub fn render(&self, alphabet: &Alphabet) -> String {
        if self.pairs.is_empty() {
            return "ε".to_string();
        }
        self.pairs
            .iter()
            .map(|&(a, p)| format!("{} {}", alphabet.render_atom(a), alphabet.actions()[p]))
            .collect::<Vec<_>>()
            .join(" ")
    }
}
