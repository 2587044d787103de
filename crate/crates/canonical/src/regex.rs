//! Regular expressions over single-character letters and their
//! Brzozowski derivatives.
//!
//! Grammar, loosest first: `r ::= r + r | r r | r* | (r) | letter | ε | ∅`,
//! where `eps` and `empty` are ASCII spellings of `ε` and `∅`. A letter is
//! any alphanumeric character; the keywords take precedence over letters.

use crate::error::CanonError;

/// A regular expression with letters given as indices into an alphabet.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Regex {
    Empty,
    Eps,
    Lit(usize),
    Cat(Box<Regex>, Box<Regex>),
    /// Invariant when built by [`Regex::alt`]: at least two members,
    /// sorted, without duplicates, nested sums or `Empty`.
    Alt(Vec<Regex>),
    Star(Box<Regex>),
}

impl Regex {
    /// Sum with associativity, commutativity and idempotence applied.
    pub fn alt(items: Vec<Regex>) -> Regex {
        let mut flat = Vec::new();
        for r in items {
            match r {
                Regex::Alt(xs) => flat.extend(xs),
                Regex::Empty => {}
                other => flat.push(other),
            }
        }
        flat.sort();
        flat.dedup();
        match flat.len() {
            0 => Regex::Empty,
            1 => flat.pop().expect("one element"),
            _ => Regex::Alt(flat),
        }
    }

    /// Concatenation with units, zeros and right association applied.
    pub fn cat(a: Regex, b: Regex) -> Regex {
        match (a, b) {
            (Regex::Empty, _) | (_, Regex::Empty) => Regex::Empty,
            (Regex::Eps, r) | (r, Regex::Eps) => r,
            (Regex::Cat(x, y), r) => Regex::cat(*x, Regex::cat(*y, r)),
            (l, r) => Regex::Cat(Box::new(l), Box::new(r)),
        }
    }

    pub fn star(a: Regex) -> Regex {
        match a {
            Regex::Empty | Regex::Eps => Regex::Eps,
            s @ Regex::Star(_) => s,
            other => Regex::Star(Box::new(other)),
        }
    }

    pub fn nullable(&self) -> bool {
        match self {
            Regex::Empty | Regex::Lit(_) => false,
            Regex::Eps | Regex::Star(_) => true,
            Regex::Cat(a, b) => a.nullable() && b.nullable(),
            Regex::Alt(xs) => xs.iter().any(Regex::nullable),
        }
    }

    /// The Brzozowski derivative with respect to letter `l`.
    pub fn derive(&self, l: usize) -> Regex {
        match self {
            Regex::Empty | Regex::Eps => Regex::Empty,
            Regex::Lit(c) => {
                if *c == l {
                    Regex::Eps
                } else {
                    Regex::Empty
                }
            }
            Regex::Cat(a, b) => {
                let left = Regex::cat(a.derive(l), (**b).clone());
                if a.nullable() {
                    Regex::alt(vec![left, b.derive(l)])
                } else {
                    left
                }
            }
            Regex::Alt(xs) => Regex::alt(xs.iter().map(|x| x.derive(l)).collect()),
            Regex::Star(a) => Regex::cat(a.derive(l), self.clone()),
        }
    }

    /// Letters occurring in `text`, sorted and deduplicated.
    pub fn letters_of(text: &str) -> Result<Vec<char>, CanonError> {
        let mut letters: Vec<char> = tokens(text)?
            .into_iter()
            .filter_map(|(_, t)| match t {
                Tok::Letter(c) => Some(c),
                _ => None,
            })
            .collect();
        letters.sort_unstable();
        letters.dedup();
        Ok(letters)
    }

    /// Parses `text` over the given alphabet.
    pub fn parse(text: &str, alphabet: &[char]) -> Result<Regex, CanonError> {
        let toks = tokens(text)?;
        let mut p = Parser {
            toks,
            i: 0,
            alphabet,
            end: text.chars().count(),
        };
        let r = p.sum()?;
        if let Some(&(pos, _)) = p.toks.get(p.i) {
            return Err(CanonError::Syntax {
                pos,
                msg: "unexpected token".into(),
            });
        }
        Ok(r)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Tok {
    Letter(char),
    Eps,
    Empty,
    Plus,
    Star,
    LParen,
    RParen,
}

fn tokens(text: &str) -> Result<Vec<(usize, Tok)>, CanonError> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    let starts_with = |i: usize, kw: &str| {
        let kw: Vec<char> = kw.chars().collect();
        chars.len() >= i + kw.len() && chars[i..i + kw.len()] == kw[..]
    };
    while i < chars.len() {
        let c = chars[i];
        let (tok, len) = match c {
            _ if c.is_whitespace() => {
                i += 1;
                continue;
            }
            '+' => (Tok::Plus, 1),
            '*' => (Tok::Star, 1),
            '(' => (Tok::LParen, 1),
            ')' => (Tok::RParen, 1),
            'ε' => (Tok::Eps, 1),
            '∅' => (Tok::Empty, 1),
            _ if starts_with(i, "eps") => (Tok::Eps, 3),
            _ if starts_with(i, "empty") => (Tok::Empty, 5),
            _ if c.is_alphanumeric() => (Tok::Letter(c), 1),
            _ => {
                return Err(CanonError::Syntax {
                    pos: i,
                    msg: format!("unexpected character `{c}`"),
                })
            }
        };
        out.push((i, tok));
        i += len;
    }
    Ok(out)
}

struct Parser<'a> {
    toks: Vec<(usize, Tok)>,
    i: usize,
    alphabet: &'a [char],
    end: usize,
}

impl Parser<'_> {
    fn peek(&self) -> Option<Tok> {
        self.toks.get(self.i).map(|&(_, t)| t)
    }

    fn pos(&self) -> usize {
        self.toks.get(self.i).map_or(self.end, |&(p, _)| p)
    }

    fn sum(&mut self) -> Result<Regex, CanonError> {
        let mut items = vec![self.product()?];
        while self.peek() == Some(Tok::Plus) {
            self.i += 1;
            items.push(self.product()?);
        }
        Ok(Regex::alt(items))
    }

    fn product(&mut self) -> Result<Regex, CanonError> {
        let mut r = self.starred()?;
        while matches!(
            self.peek(),
            Some(Tok::Letter(_) | Tok::Eps | Tok::Empty | Tok::LParen)
        ) {
            r = Regex::cat(r, self.starred()?);
        }
        Ok(r)
    }

    fn starred(&mut self) -> Result<Regex, CanonError> {
        let mut r = self.atom()?;
        while self.peek() == Some(Tok::Star) {
            self.i += 1;
            r = Regex::star(r);
        }
        Ok(r)
    }

    fn atom(&mut self) -> Result<Regex, CanonError> {
        let pos = self.pos();
        let tok = self.peek().ok_or(CanonError::Syntax {
            pos,
            msg: "unexpected end of input".into(),
        })?;
        self.i += 1;
        match tok {
            Tok::Letter(c) => self
                .alphabet
                .iter()
                .position(|&a| a == c)
                .map(Regex::Lit)
                .ok_or(CanonError::UnknownLetter(c)),
            Tok::Eps => Ok(Regex::Eps),
            Tok::Empty => Ok(Regex::Empty),
            Tok::LParen => {
                let r = self.sum()?;
                if self.peek() != Some(Tok::RParen) {
                    return Err(CanonError::Syntax {
                        pos: self.pos(),
                        msg: "expected `)`".into(),
                    });
                }
                self.i += 1;
                Ok(r)
            }
            _ => Err(CanonError::Syntax {
                pos,
                msg: "expected a letter, `ε`, `∅` or `(`".into(),
            }),
        }
    }
}
