use std::fmt;

use crate::error::GkatError;

/// Largest number of primitive tests an alphabet may declare.
pub const MAX_TESTS: usize = 20;

/// A truth assignment to every primitive test, identified by its rank in
/// the fixed atom order.
///
/// For an alphabet with tests `t_0 .. t_{n-1}`, test `t_j` holds in the atom
/// of rank `r` iff bit `n - 1 - j` of `r` is clear. Rank 0 is therefore the
/// atom satisfying every test and rank `2^n - 1` the atom satisfying none.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Atom(pub u32);

impl Atom {
    #[inline]
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

/// Ordered, disjoint, non-empty sets of primitive tests and actions.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Alphabet {
    tests: Vec<String>,
    actions: Vec<String>,
}

fn valid_ident(s: &str) -> bool {
    let mut chars = s.chars();
    match chars.next() {
        Some(c) if c.is_ascii_alphabetic() || c == '_' => {}
        _ => return false,
    }
    chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

const KEYWORDS: &[&str] = &[
    "if", "then", "else", "while", "do", "assert", "true", "false", "and", "or",
];

impl Alphabet {
    pub fn new<S: AsRef<str>, A: AsRef<str>>(
        tests: &[S],
        actions: &[A],
    ) -> Result<Self, GkatError> {
        let tests: Vec<String> = tests.iter().map(|s| s.as_ref().to_string()).collect();
        let actions: Vec<String> = actions.iter().map(|s| s.as_ref().to_string()).collect();
        if tests.is_empty() {
            return Err(GkatError::InvalidAlphabet("no tests declared".into()));
        }
        if actions.is_empty() {
            return Err(GkatError::InvalidAlphabet("no actions declared".into()));
        }
        if tests.len() > MAX_TESTS {
            return Err(GkatError::InvalidAlphabet(format!(
                "at most {MAX_TESTS} tests are supported, got {}",
                tests.len()
            )));
        }
        let mut seen = std::collections::HashSet::new();
        for name in tests.iter().chain(actions.iter()) {
            if !valid_ident(name) || KEYWORDS.contains(&name.as_str()) {
                return Err(GkatError::InvalidAlphabet(format!(
                    "`{name}` is not a valid identifier"
                )));
            }
            if !seen.insert(name.as_str()) {
                return Err(GkatError::InvalidAlphabet(format!(
                    "`{name}` is declared twice"
                )));
            }
        }
        Ok(Alphabet { tests, actions })
    }

    pub fn tests(&self) -> &[String] {
        &self.tests
    }

    pub fn actions(&self) -> &[String] {
        &self.actions
    }

    pub fn num_tests(&self) -> usize {
        self.tests.len()
    }

    pub fn num_actions(&self) -> usize {
        self.actions.len()
    }

    pub fn num_atoms(&self) -> usize {
        1usize << self.tests.len()
    }

    pub fn test_index(&self, name: &str) -> Option<usize> {
        self.tests.iter().position(|t| t == name)
    }

    pub fn action_index(&self, name: &str) -> Option<usize> {
        self.actions.iter().position(|a| a == name)
    }

    /// All atoms in the fixed enumeration order.
    pub fn atoms(&self) -> impl ExactSizeIterator<Item = Atom> + Clone {
        (0..self.num_atoms() as u32).map(Atom)
    }

    /// Whether test `j` holds in `atom`.
    #[inline]
    pub fn holds(&self, atom: Atom, j: usize) -> bool {
        let n = self.tests.len();
        atom.0 & (1 << (n - 1 - j)) == 0
    }

    /// The atom with the given truth value for every test, in test order.
    pub fn atom_from_values(&self, values: &[bool]) -> Atom {
        assert_eq!(values.len(), self.tests.len(), "one value per test");
        let n = values.len();
        let mut rank = 0u32;
        for (j, &v) in values.iter().enumerate() {
            if !v {
                rank |= 1 << (n - 1 - j);
            }
        }
        Atom(rank)
    }

    /// Truth values of every test under `atom`, in test order.
    pub fn atom_values(&self, atom: Atom) -> Vec<bool> {
        (0..self.tests.len()).map(|j| self.holds(atom, j)).collect()
    }

    /// Renders an atom as its literals joined by `·`, e.g. `b·!c`.
    pub fn render_atom(&self, atom: Atom) -> String {
        let mut out = String::new();
        for (j, name) in self.tests.iter().enumerate() {
            if j > 0 {
                out.push('·');
            }
            if !self.holds(atom, j) {
                out.push('!');
            }
            out.push_str(name);
        }
        out
    }

    /// Parses the rendering produced by [`Alphabet::render_atom`]. The
    /// literals may also be separated by `.` and may appear in any order,
    /// but every test must occur exactly once.
    pub fn parse_atom(&self, text: &str) -> Result<Atom, GkatError> {
        let mut values: Vec<Option<bool>> = vec![None; self.tests.len()];
        for lit in text.split(['·', '.']) {
            let lit = lit.trim();
            let (neg, name) = match lit.strip_prefix('!') {
                Some(rest) => (true, rest.trim()),
                None => (false, lit),
            };
            let j = self.test_index(name).ok_or_else(|| GkatError::Undeclared {
                kind: "test",
                name: name.to_string(),
                pos: 0,
            })?;
            if values[j].replace(!neg).is_some() {
                return Err(GkatError::Syntax {
                    pos: 0,
                    msg: format!("test `{name}` occurs twice in atom `{text}`"),
                });
            }
        }
        let values: Option<Vec<bool>> = values.into_iter().collect();
        match values {
            Some(v) => Ok(self.atom_from_values(&v)),
            None => Err(GkatError::Syntax {
                pos: 0,
                msg: format!("atom `{text}` does not assign every test"),
            }),
        }
    }
}

impl fmt::Display for Alphabet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "tests {{{}}}, actions {{{}}}",
            self.tests.join(","),
            self.actions.join(",")
        )
    }
}
