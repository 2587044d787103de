//! The GL* observation table and learning loop.

use std::collections::{HashMap, HashSet};

use fixedbitset::FixedBitSet;
use gkat_automata::{GAutomaton, Outcome};
use gkat_core::{Alphabet, Atom, GuardedString, GuardedWord};

use crate::error::LearnError;
use crate::teacher::{GuardedTeacher, QueryStats};
use crate::{TraceEvent, TraceKind};

/// Options of a GL* run.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct GlOptions {
    /// Add only the suffixes of the shortest distinguishing suffix of a
    /// counterexample instead of all its suffixes.
    pub optimize_cex: bool,
    /// Fill cells that determinism forces to 0 without asking.
    pub infer_zeros: bool,
    /// Audit every inferred 0 with an uncharged query.
    pub verify_inferred: bool,
    /// Record a transcript of queries, closing steps and hypotheses.
    pub trace: bool,
}

/// An observation table `(S, E, T)` for GL*.
///
/// Rows are guarded words: the prefix set `S` and its one-letter
/// extensions `S·At·Σ`, each stored once. Columns are guarded strings and
/// the first `|At|` columns are the bare atoms in atom order.
///
/// Invariants: every row has one cell per column; each row of `S·At·Σ`
/// that is not in `S` has its parent in `S`; rows of `S` are pairwise
/// distinct; a parent row has a smaller id than its children.
#[derive(Debug, Clone)]
pub struct GlTable {
    alphabet: Alphabet,
    s: Vec<usize>,
    in_s: Vec<bool>,
    e: Vec<GuardedString>,
    e_set: HashSet<GuardedString>,
    keys: Vec<GuardedWord>,
    index: HashMap<GuardedWord, usize>,
    parent: Vec<Option<(usize, Atom, usize)>>,
    children: Vec<Option<Vec<usize>>>,
    cells: Vec<FixedBitSet>,
    inferred: Vec<FixedBitSet>,
    infer_zeros: bool,
    verify_inferred: bool,
    trace: Option<Vec<TraceEvent>>,
}

impl GlTable {
    /// The initial table: `S = {ε}`, `E = At`, with every cell filled.
    pub fn new<T: GuardedTeacher>(teacher: &mut T, options: GlOptions) -> Result<Self, LearnError> {
        let alphabet = teacher.alphabet().clone();
        let e: Vec<GuardedString> = alphabet.atoms().map(GuardedString::atom).collect();
        let mut t = GlTable {
            alphabet,
            s: Vec::new(),
            in_s: Vec::new(),
            e_set: e.iter().cloned().collect(),
            e,
            keys: Vec::new(),
            index: HashMap::new(),
            parent: Vec::new(),
            children: Vec::new(),
            cells: Vec::new(),
            inferred: Vec::new(),
            infer_zeros: options.infer_zeros,
            verify_inferred: options.verify_inferred,
            trace: options.trace.then(Vec::new),
        };
        let root = t.add_row(GuardedWord::empty(), None, teacher)?;
        t.add_to_s(root, teacher)?;
        Ok(t)
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    /// Words of `S` in insertion order.
    pub fn s_words(&self) -> impl Iterator<Item = &GuardedWord> + '_ {
        self.s.iter().map(|&r| &self.keys[r])
    }

    /// Columns in insertion order.
    pub fn columns(&self) -> &[GuardedString] {
        &self.e
    }

    /// Number of stored rows, counting a row in both `S` and `S·At·Σ`
    /// once.
    pub fn num_rows(&self) -> usize {
        self.keys.len()
    }

    /// The row of `w`, if it is stored.
    pub fn row(&self, w: &GuardedWord) -> Option<&FixedBitSet> {
        self.index.get(w).map(|&r| &self.cells[r])
    }

    /// Number of cells filled by inference.
    pub fn num_inferred(&self) -> usize {
        self.inferred.iter().map(|b| b.count_ones(..)).sum()
    }

    pub fn take_trace(&mut self) -> Vec<TraceEvent> {
        self.trace.as_mut().map(std::mem::take).unwrap_or_default()
    }

    fn log(&mut self, kind: TraceKind, payload: impl FnOnce(&Self) -> String) {
        if self.trace.is_some() {
            let payload = payload(self);
            if let Some(t) = &mut self.trace {
                t.push(TraceEvent { kind, payload });
            }
        }
    }

    fn child_slot(&self, a: Atom, p: usize) -> usize {
        a.index() * self.alphabet.num_actions() + p
    }

    /// Whether determinism forces `T(r, c) = 0`: either the parent row
    /// accepts the atom that leads to `r`, or a sibling row reached by the
    /// same atom and another action already holds a 1.
    fn forced_zero(&self, r: usize) -> bool {
        let Some((pr, a, p)) = self.parent[r] else {
            return false;
        };
        if self.cells[pr].contains(a.index()) {
            return true;
        }
        let siblings = self.children[pr]
            .as_ref()
            .expect("a parent row has children");
        (0..self.alphabet.num_actions()).any(|q| {
            q != p && {
                let sib = siblings[self.child_slot(a, q)];
                sib != usize::MAX && self.cells[sib].count_ones(..) > 0
            }
        })
    }

    fn fill<T: GuardedTeacher>(
        &mut self,
        r: usize,
        c: usize,
        teacher: &mut T,
    ) -> Result<(), LearnError> {
        let w = self.keys[r].then(&self.e[c]);
        if self.infer_zeros && self.forced_zero(r) {
            self.inferred[r].insert(c);
            if self.verify_inferred && teacher.verify(&w) {
                return Err(LearnError::InferredZeroRefuted(w.render(&self.alphabet)));
            }
            return Ok(());
        }
        let v = teacher.member(&w);
        self.log(TraceKind::Query, |t| {
            format!("{} = {}", w.render(&t.alphabet), u8::from(v))
        });
        if v {
            self.cells[r].insert(c);
        }
        Ok(())
    }

    fn add_row<T: GuardedTeacher>(
        &mut self,
        w: GuardedWord,
        parent: Option<(usize, Atom, usize)>,
        teacher: &mut T,
    ) -> Result<usize, LearnError> {
        if let Some(&r) = self.index.get(&w) {
            return Ok(r);
        }
        let r = self.keys.len();
        self.index.insert(w.clone(), r);
        self.keys.push(w);
        self.in_s.push(false);
        self.parent.push(parent);
        self.children.push(None);
        self.cells.push(FixedBitSet::with_capacity(self.e.len()));
        self.inferred.push(FixedBitSet::with_capacity(self.e.len()));
        for c in 0..self.e.len() {
            self.fill(r, c, teacher)?;
        }
        Ok(r)
    }

    fn add_to_s<T: GuardedTeacher>(&mut self, r: usize, teacher: &mut T) -> Result<(), LearnError> {
        if self.in_s[r] {
            return Ok(());
        }
        self.in_s[r] = true;
        self.s.push(r);
        let na = self.alphabet.num_actions();
        self.children[r] = Some(vec![usize::MAX; self.alphabet.num_atoms() * na]);
        let atoms: Vec<Atom> = self.alphabet.atoms().collect();
        for a in atoms {
            for p in 0..na {
                let w = self.keys[r].extend(a, p);
                let k = self.add_row(w, Some((r, a, p)), teacher)?;
                self.children[r].as_mut().expect("just set")[a.index() * na + p] = k;
            }
        }
        Ok(())
    }

    /// Adds a column and fills it for every stored row.
    pub fn add_column<T: GuardedTeacher>(
        &mut self,
        e: GuardedString,
        teacher: &mut T,
    ) -> Result<bool, LearnError> {
        if !self.e_set.insert(e.clone()) {
            return Ok(false);
        }
        self.e.push(e);
        let c = self.e.len() - 1;
        for r in 0..self.keys.len() {
            self.cells[r].grow(c + 1);
            self.inferred[r].grow(c + 1);
        }
        for r in 0..self.keys.len() {
            self.fill(r, c, teacher)?;
        }
        Ok(true)
    }

    /// The first row of `S·At·Σ` that is non-zero and differs from every
    /// row of `S`, scanning `S` in insertion order and extensions in
    /// `(atom, action)` order.
    pub fn closedness_defect(&self) -> Option<GuardedWord> {
        let s_rows: HashSet<&FixedBitSet> = self.s.iter().map(|&r| &self.cells[r]).collect();
        for &r in &self.s {
            for &k in self.children[r].as_ref().expect("rows of S have children") {
                if self.cells[k].count_ones(..) > 0 && !s_rows.contains(&self.cells[k]) {
                    return Some(self.keys[k].clone());
                }
            }
        }
        None
    }

    /// Moves a stored row into `S` and adds its extensions.
    pub fn close_with<T: GuardedTeacher>(
        &mut self,
        w: &GuardedWord,
        teacher: &mut T,
    ) -> Result<(), LearnError> {
        let r = *self.index.get(w).ok_or(LearnError::NotClosed)?;
        self.log(TraceKind::Close, |t| w.render(&t.alphabet));
        self.add_to_s(r, teacher)
    }

    /// The hypothesis of a closed table. State `i` is the `i`-th row of
    /// `S`; a state accepts `α` when its `α` column holds 1 and steps on
    /// `α` with the unique action `p` whose extension row is non-zero.
    pub fn hypothesis(&self) -> Result<GAutomaton, LearnError> {
        let state: HashMap<&FixedBitSet, usize> = self
            .s
            .iter()
            .enumerate()
            .map(|(i, &r)| (&self.cells[r], i))
            .collect();
        let na = self.alphabet.num_actions();
        let mut delta = Vec::with_capacity(self.s.len());
        for &r in &self.s {
            let kids = self.children[r].as_ref().expect("rows of S have children");
            let mut row = Vec::with_capacity(self.alphabet.num_atoms());
            for a in self.alphabet.atoms() {
                let live: Vec<usize> = (0..na)
                    .filter(|&p| self.cells[kids[a.index() * na + p]].count_ones(..) > 0)
                    .collect();
                let o = match live.as_slice() {
                    [] if self.cells[r].contains(a.index()) => Outcome::Accept,
                    [] => Outcome::Reject,
                    [p] => {
                        let k = kids[a.index() * na + p];
                        let y = *state.get(&self.cells[k]).ok_or(LearnError::NotClosed)?;
                        Outcome::Step(*p, y)
                    }
                    _ => {
                        return Err(LearnError::DeterminismViolation(format!(
                            "row {} continues on atom {} with several actions",
                            self.keys[r].render(&self.alphabet),
                            self.alphabet.render_atom(a)
                        )))
                    }
                };
                row.push(o);
            }
            delta.push(row);
        }
        GAutomaton::new(self.alphabet.clone(), delta, 0)
            .map_err(|e| LearnError::DeterminismViolation(e.to_string()))
    }

    /// Processes a counterexample by adding columns. Plain handling adds
    /// every suffix of `z`. Optimised handling finds the shortest suffix
    /// `z''` of a decomposition `z = v·αp·z''` such that the hypothesis
    /// state reached by `v` and its access word disagree on `αp·z''`, and
    /// adds the suffixes of `z''`. Columns are added shortest first.
    pub fn handle_counterexample<T: GuardedTeacher>(
        &mut self,
        z: &GuardedString,
        h: &GAutomaton,
        optimize: bool,
        teacher: &mut T,
    ) -> Result<(), LearnError> {
        self.log(TraceKind::Cex, |t| z.render(&t.alphabet));
        let target = if optimize {
            self.distinguishing_suffix(z, h, teacher)?
        } else {
            z.clone()
        };
        let mut added = false;
        for suffix in target.suffixes().into_iter().rev() {
            added |= self.add_column(suffix, teacher)?;
        }
        if added {
            Ok(())
        } else {
            Err(LearnError::NotACounterexample(z.render(&self.alphabet)))
        }
    }

    fn distinguishing_suffix<T: GuardedTeacher>(
        &mut self,
        z: &GuardedString,
        h: &GAutomaton,
        teacher: &mut T,
    ) -> Result<GuardedString, LearnError> {
        let n = z.action_len();
        if n == 0 {
            return Ok(z.clone());
        }
        let pairs = z.word();
        for i in (0..n).rev() {
            let Some(x) = run(h, &pairs.pairs()[..i]) else {
                continue;
            };
            let rest = z.suffix_from(i);
            let expected = self.answer(self.s[x], &rest, z, h, teacher);
            if h.accepts_from(x, &rest) != expected {
                return Ok(z.suffix_from(i + 1));
            }
        }
        Err(LearnError::NotACounterexample(z.render(&self.alphabet)))
    }

    /// Membership of `row·rest`, taken from the table when `rest` is a
    /// column, from the counterexample `z` when the two coincide, and
    /// from the teacher otherwise.
    fn answer<T: GuardedTeacher>(
        &mut self,
        r: usize,
        rest: &GuardedString,
        z: &GuardedString,
        h: &GAutomaton,
        teacher: &mut T,
    ) -> bool {
        if let Some(c) = self.e.iter().position(|e| e == rest) {
            return self.cells[r].contains(c);
        }
        let w = self.keys[r].then(rest);
        if &w == z {
            return !h.accepts(z);
        }
        let v = teacher.member(&w);
        self.log(TraceKind::Query, |t| {
            format!("{} = {}", w.render(&t.alphabet), u8::from(v))
        });
        v
    }

    /// The table as CSV: one line per row, `S` first and then the other
    /// rows in creation order. Cells are `1`, `0` or `0*` for an inferred
    /// zero.
    pub fn to_csv(&self) -> String {
        let mut w = csv::Writer::from_writer(Vec::new());
        let mut header = vec!["part".to_string(), "row".to_string()];
        header.extend(self.e.iter().map(|e| e.render(&self.alphabet)));
        w.write_record(&header).expect("writing to memory");
        let rest = (0..self.keys.len()).filter(|&r| !self.in_s[r]);
        for r in self.s.iter().copied().chain(rest) {
            let mut rec = vec![
                if self.in_s[r] { "S" } else { "SAS" }.to_string(),
                self.keys[r].render(&self.alphabet),
            ];
            rec.extend((0..self.e.len()).map(|c| {
                if self.cells[r].contains(c) {
                    "1"
                } else if self.inferred[r].contains(c) {
                    "0*"
                } else {
                    "0"
                }
                .to_string()
            }));
            w.write_record(&rec).expect("writing to memory");
        }
        String::from_utf8(w.into_inner().expect("writing to memory")).expect("utf-8 output")
    }
}

/// The state reached by reading `pairs` from the initial state, if every
/// step is defined with the given action.
fn run(h: &GAutomaton, pairs: &[(Atom, usize)]) -> Option<usize> {
    pairs
        .iter()
        .try_fold(h.initial(), |x, &(a, p)| match h.delta(x, a) {
            Outcome::Step(q, y) if q == p => Some(y),
            _ => None,
        })
}

/// The outcome of a GL* run.
#[derive(Debug, Clone)]
pub struct GlResult {
    /// The final hypothesis, isomorphic to the minimal target automaton.
    pub automaton: GAutomaton,
    pub stats: QueryStats,
    pub table: GlTable,
    /// Counterexamples in the order they were received.
    pub counterexamples: Vec<GuardedString>,
    /// Number of rows moved into `S` to close the table.
    pub closing_steps: usize,
    pub trace: Vec<TraceEvent>,
}

/// Learns the minimal G-automaton of the teacher's language.
pub fn gl_star<T: GuardedTeacher>(
    teacher: &mut T,
    options: GlOptions,
) -> Result<GlResult, LearnError> {
    let mut table = GlTable::new(teacher, options)?;
    let mut counterexamples = Vec::new();
    let mut closing_steps = 0;
    loop {
        while let Some(w) = table.closedness_defect() {
            table.close_with(&w, teacher)?;
            closing_steps += 1;
        }
        let h = table.hypothesis()?;
        table.log(TraceKind::Hypothesis, |_| {
            format!("{} states", h.num_states())
        });
        match teacher.equiv(&h) {
            None => {
                let trace = table.take_trace();
                return Ok(GlResult {
                    automaton: h,
                    stats: teacher.stats(),
                    table,
                    counterexamples,
                    closing_steps,
                    trace,
                });
            }
            Some(z) => {
                table.handle_counterexample(&z, &h, options.optimize_cex, teacher)?;
                counterexamples.push(z);
            }
        }
    }
}
