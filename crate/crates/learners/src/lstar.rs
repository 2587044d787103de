//! Classical L* over the Moore-machine view of a guarded-string language.

use std::collections::{HashMap, HashSet};

use gkat_automata::{split_letter, AtomSet, MooreAutomaton};
use gkat_core::{Alphabet, GuardedWord};

use crate::error::LearnError;
use crate::teacher::{MooreTeacher, QueryStats};
use crate::{TraceEvent, TraceKind};

/// An observation table over letters `At·Σ`, numbered atom-major, with
/// cells holding sets of atoms.
///
/// Invariants: every row has one cell per column; the first column is the
/// empty word; rows of `S` are pairwise distinct.
#[derive(Debug, Clone)]
pub struct LStarTable {
    alphabet: Alphabet,
    num_letters: usize,
    s: Vec<usize>,
    in_s: Vec<bool>,
    e: Vec<Vec<usize>>,
    e_set: HashSet<Vec<usize>>,
    keys: Vec<Vec<usize>>,
    index: HashMap<Vec<usize>, usize>,
    children: Vec<Option<Vec<usize>>>,
    cells: Vec<Vec<AtomSet>>,
    trace: Option<Vec<TraceEvent>>,
}

impl LStarTable {
    /// The initial table `S = E = {ε}`.
    pub fn new<T: MooreTeacher>(teacher: &mut T, trace: bool) -> Self {
        let alphabet = teacher.alphabet().clone();
        let num_letters = alphabet.num_atoms() * alphabet.num_actions();
        let mut t = LStarTable {
            alphabet,
            num_letters,
            s: Vec::new(),
            in_s: Vec::new(),
            e: vec![Vec::new()],
            e_set: HashSet::from([Vec::new()]),
            keys: Vec::new(),
            index: HashMap::new(),
            children: Vec::new(),
            cells: Vec::new(),
            trace: trace.then(Vec::new),
        };
        let root = t.add_row(Vec::new(), teacher);
        t.add_to_s(root, teacher);
        t
    }

    pub fn num_rows(&self) -> usize {
        self.keys.len()
    }

    /// Columns in insertion order.
    pub fn columns(&self) -> &[Vec<usize>] {
        &self.e
    }

    /// Renders a word over `At·Σ` as a guarded word.
    pub fn render_word(&self, w: &[usize]) -> String {
        let na = self.alphabet.num_actions();
        GuardedWord::from_pairs(w.iter().map(|&l| split_letter(l, na)).collect())
            .render(&self.alphabet)
    }

    fn render_cell(&self, c: &AtomSet) -> String {
        let atoms: Vec<String> = c
            .ones()
            .map(|i| self.alphabet.render_atom(gkat_core::Atom(i as u32)))
            .collect();
        format!("{{{}}}", atoms.join(","))
    }

    fn log(&mut self, kind: TraceKind, payload: impl FnOnce(&Self) -> String) {
        if self.trace.is_some() {
            let payload = payload(self);
            if let Some(t) = &mut self.trace {
                t.push(TraceEvent { kind, payload });
            }
        }
    }

    fn fill<T: MooreTeacher>(&mut self, r: usize, c: usize, teacher: &mut T) {
        let mut w = self.keys[r].clone();
        w.extend_from_slice(&self.e[c]);
        let v = teacher.member_moore(&w);
        self.log(TraceKind::Query, |t| {
            format!("{} = {}", t.render_word(&w), t.render_cell(&v))
        });
        self.cells[r].push(v);
    }

    fn add_row<T: MooreTeacher>(&mut self, w: Vec<usize>, teacher: &mut T) -> usize {
        if let Some(&r) = self.index.get(&w) {
            return r;
        }
        let r = self.keys.len();
        self.index.insert(w.clone(), r);
        self.keys.push(w);
        self.in_s.push(false);
        self.children.push(None);
        self.cells.push(Vec::with_capacity(self.e.len()));
        for c in 0..self.e.len() {
            self.fill(r, c, teacher);
        }
        r
    }

    fn add_to_s<T: MooreTeacher>(&mut self, r: usize, teacher: &mut T) {
        if self.in_s[r] {
            return;
        }
        self.in_s[r] = true;
        self.s.push(r);
        let mut kids = Vec::with_capacity(self.num_letters);
        for l in 0..self.num_letters {
            let mut w = self.keys[r].clone();
            w.push(l);
            kids.push(self.add_row(w, teacher));
        }
        self.children[r] = Some(kids);
    }

    fn add_column<T: MooreTeacher>(&mut self, e: Vec<usize>, teacher: &mut T) -> bool {
        if !self.e_set.insert(e.clone()) {
            return false;
        }
        self.e.push(e);
        let c = self.e.len() - 1;
        for r in 0..self.keys.len() {
            self.fill(r, c, teacher);
        }
        true
    }

    /// The first one-letter extension of `S`, in `S` order and then
    /// letter order, whose row differs from every row of `S`.
    pub fn closedness_defect(&self) -> Option<Vec<usize>> {
        let s_rows: HashSet<&Vec<AtomSet>> = self.s.iter().map(|&r| &self.cells[r]).collect();
        self.s.iter().find_map(|&r| {
            self.children[r]
                .as_ref()
                .expect("rows of S have children")
                .iter()
                .find(|&&k| !s_rows.contains(&self.cells[k]))
                .map(|&k| self.keys[k].clone())
        })
    }

    /// The hypothesis of a closed table: state `i` is the `i`-th row of
    /// `S` and outputs its `ε` cell.
    pub fn hypothesis(&self) -> Result<MooreAutomaton<AtomSet>, LearnError> {
        let state: HashMap<&Vec<AtomSet>, usize> = self
            .s
            .iter()
            .enumerate()
            .map(|(i, &r)| (&self.cells[r], i))
            .collect();
        let mut delta = Vec::with_capacity(self.s.len());
        for &r in &self.s {
            let kids = self.children[r].as_ref().expect("rows of S have children");
            delta.push(
                kids.iter()
                    .map(|k| {
                        state
                            .get(&self.cells[*k])
                            .copied()
                            .ok_or(LearnError::NotClosed)
                    })
                    .collect::<Result<Vec<_>, _>>()?,
            );
        }
        let out = self.s.iter().map(|&r| self.cells[r][0].clone()).collect();
        MooreAutomaton::new(self.num_letters, delta, out, 0)
            .map_err(|e| LearnError::DeterminismViolation(e.to_string()))
    }

    /// Adds every suffix of the counterexample as a column, shortest
    /// first.
    pub fn handle_counterexample<T: MooreTeacher>(
        &mut self,
        z: &[usize],
        teacher: &mut T,
    ) -> Result<(), LearnError> {
        self.log(TraceKind::Cex, |t| t.render_word(z));
        let mut added = false;
        for i in (0..z.len()).rev() {
            added |= self.add_column(z[i..].to_vec(), teacher);
        }
        if added {
            Ok(())
        } else {
            Err(LearnError::NotACounterexample(self.render_word(z)))
        }
    }

    /// The table as CSV, `S` first and then the other rows in creation
    /// order. Cells list the atoms of the output set.
    pub fn to_csv(&self) -> String {
        let mut w = csv::Writer::from_writer(Vec::new());
        let mut header = vec!["part".to_string(), "row".to_string()];
        header.extend(self.e.iter().map(|e| self.render_word(e)));
        w.write_record(&header).expect("writing to memory");
        let rest = (0..self.keys.len()).filter(|&r| !self.in_s[r]);
        for r in self.s.iter().copied().chain(rest) {
            let mut rec = vec![
                if self.in_s[r] { "S" } else { "SA" }.to_string(),
                self.render_word(&self.keys[r]),
            ];
            rec.extend(self.cells[r].iter().map(|c| self.render_cell(c)));
            w.write_record(&rec).expect("writing to memory");
        }
        String::from_utf8(w.into_inner().expect("writing to memory")).expect("utf-8 output")
    }
}

/// The outcome of an L* run.
#[derive(Debug, Clone)]
pub struct LStarResult {
    /// The final hypothesis, isomorphic to the minimal target machine.
    pub automaton: MooreAutomaton<AtomSet>,
    pub stats: QueryStats,
    pub table: LStarTable,
    pub counterexamples: Vec<Vec<usize>>,
    pub closing_steps: usize,
    pub trace: Vec<TraceEvent>,
}

/// Learns the minimal Moore machine of the teacher's function.
pub fn l_star<T: MooreTeacher>(teacher: &mut T, trace: bool) -> Result<LStarResult, LearnError> {
    let mut table = LStarTable::new(teacher, trace);
    let mut counterexamples = Vec::new();
    let mut closing_steps = 0;
    loop {
        while let Some(w) = table.closedness_defect() {
            table.log(TraceKind::Close, |t| t.render_word(&w));
            let r = table.index[&w];
            table.add_to_s(r, teacher);
            closing_steps += 1;
        }
        let h = table.hypothesis()?;
        table.log(TraceKind::Hypothesis, |_| {
            format!("{} states", h.num_states())
        });
        match teacher.equiv_moore(&h) {
            None => {
                let trace = table.trace.as_mut().map(std::mem::take).unwrap_or_default();
                return Ok(LStarResult {
                    automaton: h,
                    stats: teacher.stats(),
                    table,
                    counterexamples,
                    closing_steps,
                    trace,
                });
            }
            Some(z) => {
                table.handle_counterexample(&z, teacher)?;
                counterexamples.push(z);
            }
        }
    }
}
