use std::collections::HashSet;

use expr_deriv::{expr_to_automaton_capped, DerivError, DEFAULT_STATE_CAP};
use gkat_automata::{split_letter, to_moore, AtomSet, GAutomaton, MooreAutomaton};
use gkat_core::{Alphabet, Expr, GuardedString, GuardedWord};

/// Query counters of a teacher.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct QueryStats {
    /// Guarded-string membership queries charged to the learner.
    pub membership: u64,
    /// Equivalence queries, including the final successful one.
    pub equivalence: u64,
    /// Equivalence queries answered with a counterexample.
    pub failed_equivalence: u64,
    /// Distinct guarded strings asked, when tracking is enabled.
    pub distinct_membership: Option<u64>,
    /// Uncharged queries made to check inferred table entries.
    pub verification: u64,
}

/// A teacher for a deterministic guarded-string language.
pub trait GuardedTeacher {
    fn alphabet(&self) -> &Alphabet;
    /// Charged membership query.
    fn member(&mut self, w: &GuardedString) -> bool;
    /// Uncharged membership query used only to audit inferred answers.
    fn verify(&mut self, w: &GuardedString) -> bool;
    /// `None` if `h` recognises the target language, otherwise a guarded
    /// string in the symmetric difference.
    fn equiv(&mut self, h: &GAutomaton) -> Option<GuardedString>;
    fn stats(&self) -> QueryStats;
}

/// A teacher for the Moore-machine view of a guarded-string language:
/// a word over `At·Σ` is mapped to the set of atoms that complete it to an
/// accepted guarded string.
pub trait MooreTeacher {
    fn alphabet(&self) -> &Alphabet;
    /// Charged as `|At|` membership queries.
    fn member_moore(&mut self, w: &[usize]) -> AtomSet;
    /// `None` if `h` computes the target function, otherwise a word on
    /// which the outputs differ.
    fn equiv_moore(&mut self, h: &MooreAutomaton<AtomSet>) -> Option<Vec<usize>>;
    fn stats(&self) -> QueryStats;
}

/// A teacher that answers from the minimal automaton of an expression.
/// Equivalence counterexamples are shortest and least in letter order.
#[derive(Debug, Clone)]
pub struct ExprTeacher {
    alphabet: Alphabet,
    target: GAutomaton,
    target_moore: MooreAutomaton<AtomSet>,
    stats: QueryStats,
    asked: Option<HashSet<GuardedString>>,
}

impl ExprTeacher {
    pub fn new(alphabet: &Alphabet, e: &Expr) -> Result<Self, DerivError> {
        Self::with_cap(alphabet, e, DEFAULT_STATE_CAP)
    }

    pub fn with_cap(alphabet: &Alphabet, e: &Expr, cap: usize) -> Result<Self, DerivError> {
        let target = expr_to_automaton_capped(alphabet, e, cap)?.minimise();
        Ok(Self::from_automaton(target))
    }

    pub fn from_automaton(target: GAutomaton) -> Self {
        let target = target.minimise();
        let target_moore = to_moore(&target);
        ExprTeacher {
            alphabet: target.alphabet().clone(),
            target,
            target_moore,
            stats: QueryStats::default(),
            asked: None,
        }
    }

    /// Also count distinct guarded strings asked by charged membership
    /// queries.
    pub fn track_distinct(mut self) -> Self {
        self.asked = Some(HashSet::new());
        self.stats.distinct_membership = Some(0);
        self
    }

    /// The minimal automaton being taught.
    pub fn target(&self) -> &GAutomaton {
        &self.target
    }

    fn word_of_letters(&self, letters: &[usize]) -> GuardedWord {
        let na = self.alphabet.num_actions();
        GuardedWord::from_pairs(letters.iter().map(|&l| split_letter(l, na)).collect())
    }
}

impl GuardedTeacher for ExprTeacher {
    fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    fn member(&mut self, w: &GuardedString) -> bool {
        self.stats.membership += 1;
        if let Some(asked) = &mut self.asked {
            if asked.insert(w.clone()) {
                self.stats.distinct_membership = Some(asked.len() as u64);
            }
        }
        self.target.accepts(w)
    }

    fn verify(&mut self, w: &GuardedString) -> bool {
        self.stats.verification += 1;
        self.target.accepts(w)
    }

    fn equiv(&mut self, h: &GAutomaton) -> Option<GuardedString> {
        self.stats.equivalence += 1;
        let hm = to_moore(h);
        let letters = hm.bisim_cex(&self.target_moore)?;
        self.stats.failed_equivalence += 1;
        let (x, y) = (
            hm.run_from(hm.initial(), &letters),
            self.target_moore
                .run_from(self.target_moore.initial(), &letters),
        );
        let (ox, oy) = (hm.output(x), self.target_moore.output(y));
        let atom = self
            .alphabet
            .atoms()
            .find(|a| ox.contains(a.index()) != oy.contains(a.index()))
            .expect("differing outputs differ on some atom");
        Some(
            self.word_of_letters(&letters)
                .then(&GuardedString::atom(atom)),
        )
    }

    fn stats(&self) -> QueryStats {
        self.stats
    }
}

impl MooreTeacher for ExprTeacher {
    fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    fn member_moore(&mut self, w: &[usize]) -> AtomSet {
        self.stats.membership += self.alphabet.num_atoms() as u64;
        self.target_moore.accepts(w).clone()
    }

    fn equiv_moore(&mut self, h: &MooreAutomaton<AtomSet>) -> Option<Vec<usize>> {
        self.stats.equivalence += 1;
        let cex = h.bisim_cex(&self.target_moore)?;
        self.stats.failed_equivalence += 1;
        Some(cex)
    }

    fn stats(&self) -> QueryStats {
        self.stats
    }
}
