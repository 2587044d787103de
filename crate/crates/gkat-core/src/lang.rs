//! Finite windows onto guarded-string languages and a brute-force oracle
//! computing them directly from the compositional semantics.

use std::collections::{BTreeSet, HashMap};

use crate::alphabet::{Alphabet, Atom};
use crate::strings::GuardedString;
use crate::syntax::Expr;

/// A finite set of guarded strings, each of action-length at most `bound`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteGsLang {
    pub strings: BTreeSet<GuardedString>,
    pub bound: usize,
}

impl FiniteGsLang {
    pub fn empty(bound: usize) -> Self {
        FiniteGsLang {
            strings: BTreeSet::new(),
            bound,
        }
    }

    /// The bare atoms of `mask` (indexed by atom rank).
    pub fn atoms(mask: &[bool], bound: usize) -> Self {
        FiniteGsLang {
            strings: mask
                .iter()
                .enumerate()
                .filter(|&(_, &m)| m)
                .map(|(i, _)| GuardedString::atom(Atom(i as u32)))
                .collect(),
            bound,
        }
    }

    pub fn len(&self) -> usize {
        self.strings.len()
    }

    pub fn is_empty(&self) -> bool {
        self.strings.is_empty()
    }

    pub fn contains(&self, w: &GuardedString) -> bool {
        self.strings.contains(w)
    }

    /// The members of action-length at most `k`.
    pub fn truncate(&self, k: usize) -> FiniteGsLang {
        FiniteGsLang {
            strings: self
                .strings
                .iter()
                .filter(|w| w.action_len() <= k)
                .cloned()
                .collect(),
            bound: k.min(self.bound),
        }
    }

    /// Members starting with an atom of `mask`.
    pub fn restrict_first(&self, mask: &[bool]) -> FiniteGsLang {
        FiniteGsLang {
            strings: self
                .strings
                .iter()
                .filter(|w| mask[w.first_atom().index()])
                .cloned()
                .collect(),
            bound: self.bound,
        }
    }
}

fn fuse_bounded(l: &FiniteGsLang, k: &FiniteGsLang, bound: usize) -> BTreeSet<GuardedString> {
    let mut by_first: HashMap<Atom, Vec<&GuardedString>> = HashMap::new();
    for w in &k.strings {
        by_first.entry(w.first_atom()).or_default().push(w);
    }
    let mut out = BTreeSet::new();
    for v in &l.strings {
        if let Some(ws) = by_first.get(&v.last_atom()) {
            for w in ws {
                if v.action_len() + w.action_len() <= bound {
                    out.insert(v.fuse(w).expect("atoms agree"));
                }
            }
        }
    }
    out
}

/// The fusion product `{ v ⋄ w | v ∈ L, w ∈ K }` of two finite languages.
/// The result is exact up to the smaller of the two bounds.
pub fn fusion(l: &FiniteGsLang, k: &FiniteGsLang) -> FiniteGsLang {
    let bound = l.bound.min(k.bound);
    FiniteGsLang {
        strings: fuse_bounded(l, k, bound),
        bound,
    }
}

/// The guarded sum `(B ⋄ L) ∪ (B̄ ⋄ K)` where `b_mask` is the
/// characteristic vector of `B` over atom ranks.
pub fn guarded_sum(l: &FiniteGsLang, k: &FiniteGsLang, b_mask: &[bool]) -> FiniteGsLang {
    let not_b: Vec<bool> = b_mask.iter().map(|&m| !m).collect();
    let mut strings = l.restrict_first(b_mask).strings;
    strings.extend(k.restrict_first(&not_b).strings);
    FiniteGsLang {
        strings,
        bound: l.bound.min(k.bound),
    }
}

/// `⟦e⟧` restricted to guarded strings with at most `k` actions, computed
/// from the compositional semantics.
///
/// Guarded iteration `L^(B) = ⋃_n (B ⋄ L)^n ⋄ B̄` is evaluated as the least
/// fixpoint of `W = B̄ ∪ (B ⋄ L) ⋄ W` within the window, which is reached
/// after finitely many rounds because the window is finite.
pub fn lang_upto(alphabet: &Alphabet, e: &Expr, k: usize) -> FiniteGsLang {
    match e {
        Expr::Test(b) => FiniteGsLang::atoms(&b.atoms_mask(alphabet), k),
        Expr::Act(p) => {
            let mut strings = BTreeSet::new();
            if k >= 1 {
                for a in alphabet.atoms() {
                    for c in alphabet.atoms() {
                        strings
                            .insert(GuardedString::new(vec![a, c], vec![*p]).expect("well formed"));
                    }
                }
            }
            FiniteGsLang { strings, bound: k }
        }
        Expr::Seq(e, f) => {
            let l = lang_upto(alphabet, e, k);
            let r = lang_upto(alphabet, f, k);
            fusion(&l, &r)
        }
        Expr::If(b, e, f) => {
            let l = lang_upto(alphabet, e, k);
            let r = lang_upto(alphabet, f, k);
            guarded_sum(&l, &r, &b.atoms_mask(alphabet))
        }
        Expr::While(b, e) => {
            let mask = b.atoms_mask(alphabet);
            let not_b: Vec<bool> = mask.iter().map(|&m| !m).collect();
            let body = lang_upto(alphabet, e, k).restrict_first(&mask);
            let mut w = FiniteGsLang::atoms(&not_b, k);
            loop {
                let mut next = w.strings.clone();
                next.extend(fuse_bounded(&body, &w, k));
                if next.len() == w.strings.len() {
                    return w;
                }
                w.strings = next;
            }
        }
    }
}

/// Every guarded string over `alphabet` with at most `k` actions, in
/// `(action-length, lexicographic)` order.
pub fn enumerate_upto(alphabet: &Alphabet, k: usize) -> Vec<GuardedString> {
    let mut layer: Vec<GuardedString> = alphabet.atoms().map(GuardedString::atom).collect();
    let mut out = layer.clone();
    for _ in 0..k {
        let mut next = Vec::new();
        for w in &layer {
            for p in 0..alphabet.num_actions() {
                for a in alphabet.atoms() {
                    let mut v = w.clone();
                    v.push(p, a);
                    next.push(v);
                }
            }
        }
        out.extend(next.iter().cloned());
        layer = next;
    }
    out
}

/// Whether any two members that agree on their first `n` atoms also agree
/// on their first `n` actions, or terminate together.
pub fn is_deterministic(l: &FiniteGsLang) -> bool {
    // Maps an atom-terminated prefix to its continuation: the next action,
    // or `None` when the string ends there.
    let mut next: HashMap<(&[Atom], &[usize]), Option<usize>> = HashMap::new();
    for w in &l.strings {
        for i in 0..w.atoms().len() {
            let key = (&w.atoms()[..=i], &w.actions()[..i]);
            let cont = w.actions().get(i).copied();
            match next.get(&key) {
                Some(&c) if c != cont => return false,
                Some(_) => {}
                None => {
                    next.insert(key, cont);
                }
            }
        }
    }
    true
}
