//! Recursive-descent parser for the concrete expression syntax:
//!
//! ```text
//! expr  := term (';' term)*
//! term  := 'if' bexp 'then' term 'else' term | 'while' bexp 'do' term
//!        | 'do' IDENT | IDENT | 'assert' bexp | '0' | '1' | '(' expr ')'
//! bexp  := bfac (('or' | '+') bfac)*
//! bfac  := batom (('and' | '.') batom)*
//! batom := '!' batom | 'true' | 'false' | '1' | '0' | IDENT | '(' bexp ')'
//! ```
//!
//! A bare identifier in term position names an action. Sequencing and the
//! binary Boolean connectives associate to the left.

use crate::alphabet::Alphabet;
use crate::error::GkatError;
use crate::syntax::{BExpr, Expr};

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Ident(String),
    Semi,
    LParen,
    RParen,
    Bang,
    Plus,
    Dot,
    Zero,
    One,
    End,
}

struct Lexer {
    toks: Vec<(Tok, usize)>,
}

fn lex(text: &str) -> Result<Lexer, GkatError> {
    let mut toks = Vec::new();
    let bytes: Vec<(usize, char)> = text.char_indices().collect();
    let mut i = 0;
    while i < bytes.len() {
        let (pos, c) = bytes[i];
        if c.is_whitespace() {
            i += 1;
            continue;
        }
        let single = match c {
            ';' => Some(Tok::Semi),
            '(' => Some(Tok::LParen),
            ')' => Some(Tok::RParen),
            '!' => Some(Tok::Bang),
            '+' => Some(Tok::Plus),
            '.' | '·' => Some(Tok::Dot),
            '0' => Some(Tok::Zero),
            '1' => Some(Tok::One),
            _ => None,
        };
        if let Some(t) = single {
            toks.push((t, pos));
            i += 1;
            continue;
        }
        if c.is_ascii_alphabetic() || c == '_' {
            let start = i;
            while i < bytes.len() && (bytes[i].1.is_ascii_alphanumeric() || bytes[i].1 == '_') {
                i += 1;
            }
            let word: String = bytes[start..i].iter().map(|&(_, c)| c).collect();
            toks.push((Tok::Ident(word), pos));
            continue;
        }
        return Err(GkatError::Syntax {
            pos,
            msg: format!("unexpected character `{c}`"),
        });
    }
    toks.push((Tok::End, text.len()));
    Ok(Lexer { toks })
}

struct Parser<'a> {
    toks: Vec<(Tok, usize)>,
    at: usize,
    alphabet: &'a Alphabet,
}

impl<'a> Parser<'a> {
    fn peek(&self) -> &Tok {
        &self.toks[self.at].0
    }

    fn pos(&self) -> usize {
        self.toks[self.at].1
    }

    fn bump(&mut self) -> Tok {
        let t = self.toks[self.at].0.clone();
        if t != Tok::End {
            self.at += 1;
        }
        t
    }

    fn err<T>(&self, msg: impl Into<String>) -> Result<T, GkatError> {
        Err(GkatError::Syntax {
            pos: self.pos(),
            msg: msg.into(),
        })
    }

    fn is_kw(&self, kw: &str) -> bool {
        matches!(self.peek(), Tok::Ident(w) if w == kw)
    }

    fn expect_kw(&mut self, kw: &str) -> Result<(), GkatError> {
        if self.is_kw(kw) {
            self.bump();
            Ok(())
        } else {
            self.err(format!("expected `{kw}`"))
        }
    }

    fn expect(&mut self, tok: Tok, what: &str) -> Result<(), GkatError> {
        if *self.peek() == tok {
            self.bump();
            Ok(())
        } else {
            self.err(format!("expected {what}"))
        }
    }

    fn expr(&mut self) -> Result<Expr, GkatError> {
        let mut e = self.term()?;
        while *self.peek() == Tok::Semi {
            self.bump();
            let f = self.term()?;
            e = Expr::seq(e, f);
        }
        Ok(e)
    }

    fn action(&mut self) -> Result<Expr, GkatError> {
        let pos = self.pos();
        match self.bump() {
            Tok::Ident(name) if !is_keyword(&name) => match self.alphabet.action_index(&name) {
                Some(p) => Ok(Expr::Act(p)),
                None => Err(GkatError::Undeclared {
                    kind: "action",
                    name,
                    pos,
                }),
            },
            _ => Err(GkatError::Syntax {
                pos,
                msg: "expected an action name".into(),
            }),
        }
    }

    fn term(&mut self) -> Result<Expr, GkatError> {
        match self.peek().clone() {
            Tok::Ident(w) => match w.as_str() {
                "if" => {
                    self.bump();
                    let b = self.bexp()?;
                    self.expect_kw("then")?;
                    let e = self.term()?;
                    self.expect_kw("else")?;
                    let f = self.term()?;
                    Ok(Expr::ite(b, e, f))
                }
                "while" => {
                    self.bump();
                    let b = self.bexp()?;
                    self.expect_kw("do")?;
                    let e = self.term()?;
                    Ok(Expr::while_do(b, e))
                }
                "do" => {
                    self.bump();
                    self.action()
                }
                "assert" => {
                    self.bump();
                    Ok(Expr::Test(self.bexp()?))
                }
                _ => self.action(),
            },
            Tok::Zero => {
                self.bump();
                Ok(Expr::zero())
            }
            Tok::One => {
                self.bump();
                Ok(Expr::one())
            }
            Tok::LParen => {
                self.bump();
                let e = self.expr()?;
                self.expect(Tok::RParen, "`)`")?;
                Ok(e)
            }
            _ => self.err("expected a program term"),
        }
    }

    fn bexp(&mut self) -> Result<BExpr, GkatError> {
        let mut b = self.bfac()?;
        while *self.peek() == Tok::Plus || self.is_kw("or") {
            self.bump();
            let c = self.bfac()?;
            b = BExpr::or(b, c);
        }
        Ok(b)
    }

    fn bfac(&mut self) -> Result<BExpr, GkatError> {
        let mut b = self.batom()?;
        while *self.peek() == Tok::Dot || self.is_kw("and") {
            self.bump();
            let c = self.batom()?;
            b = BExpr::and(b, c);
        }
        Ok(b)
    }

    fn batom(&mut self) -> Result<BExpr, GkatError> {
        let pos = self.pos();
        match self.bump() {
            Tok::Bang => Ok(BExpr::not(self.batom()?)),
            Tok::LParen => {
                let b = self.bexp()?;
                self.expect(Tok::RParen, "`)`")?;
                Ok(b)
            }
            Tok::One => Ok(BExpr::One),
            Tok::Zero => Ok(BExpr::Zero),
            Tok::Ident(w) if w == "true" => Ok(BExpr::One),
            Tok::Ident(w) if w == "false" => Ok(BExpr::Zero),
            Tok::Ident(w) if !is_keyword(&w) => match self.alphabet.test_index(&w) {
                Some(j) => Ok(BExpr::Test(j)),
                None => Err(GkatError::Undeclared {
                    kind: "test",
                    name: w,
                    pos,
                }),
            },
            _ => Err(GkatError::Syntax {
                pos,
                msg: "expected a test".into(),
            }),
        }
    }
}

fn is_keyword(w: &str) -> bool {
    matches!(
        w,
        "if" | "then" | "else" | "while" | "do" | "assert" | "true" | "false" | "and" | "or"
    )
}

/// Parses a program over `alphabet`.
pub fn parse_expr(text: &str, alphabet: &Alphabet) -> Result<Expr, GkatError> {
    let lexer = lex(text)?;
    let mut p = Parser {
        toks: lexer.toks,
        at: 0,
        alphabet,
    };
    let e = p.expr()?;
    if *p.peek() != Tok::End {
        return p.err("unexpected trailing input");
    }
    Ok(e)
}

/// Parses a Boolean expression over the tests of `alphabet`.
pub fn parse_bexpr(text: &str, alphabet: &Alphabet) -> Result<BExpr, GkatError> {
    let lexer = lex(text)?;
    let mut p = Parser {
        toks: lexer.toks,
        at: 0,
        alphabet,
    };
    let b = p.bexp()?;
    if *p.peek() != Tok::End {
        return p.err("unexpected trailing input");
    }
    Ok(b)
}
