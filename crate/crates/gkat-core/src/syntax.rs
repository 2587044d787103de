use std::fmt;

use crate::alphabet::{Alphabet, Atom};

/// Boolean expressions over the primitive tests, referenced by index.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum BExpr {
    Zero,
    One,
    Test(usize),
    And(Box<BExpr>, Box<BExpr>),
    Or(Box<BExpr>, Box<BExpr>),
    Not(Box<BExpr>),
}

impl BExpr {
    pub fn and(a: BExpr, b: BExpr) -> BExpr {
        BExpr::And(Box::new(a), Box::new(b))
    }

    pub fn or(a: BExpr, b: BExpr) -> BExpr {
        BExpr::Or(Box::new(a), Box::new(b))
    }

    #[allow(clippy::should_implement_trait)]
    pub fn not(a: BExpr) -> BExpr {
        BExpr::Not(Box::new(a))
    }

    /// Whether `atom` satisfies the expression.
    pub fn eval(&self, alphabet: &Alphabet, atom: Atom) -> bool {
        match self {
            BExpr::Zero => false,
            BExpr::One => true,
            BExpr::Test(j) => alphabet.holds(atom, *j),
            BExpr::And(a, b) => a.eval(alphabet, atom) && b.eval(alphabet, atom),
            BExpr::Or(a, b) => a.eval(alphabet, atom) || b.eval(alphabet, atom),
            BExpr::Not(a) => !a.eval(alphabet, atom),
        }
    }

    /// Characteristic vector of the atoms satisfying the expression,
    /// indexed by atom rank.
    pub fn atoms_mask(&self, alphabet: &Alphabet) -> Vec<bool> {
        alphabet.atoms().map(|a| self.eval(alphabet, a)).collect()
    }

    pub fn display<'a>(&'a self, alphabet: &'a Alphabet) -> impl fmt::Display + 'a {
        BDisplay {
            b: self,
            alphabet,
            level: BLevel::Or,
        }
    }
}

/// GKAT programs. `If(b, e, f)` is the guarded union `e +_b f` and
/// `While(b, e)` the guarded iteration `e^(b)`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Expr {
    Act(usize),
    Test(BExpr),
    Seq(Box<Expr>, Box<Expr>),
    If(BExpr, Box<Expr>, Box<Expr>),
    While(BExpr, Box<Expr>),
}

impl Expr {
    pub fn zero() -> Expr {
        Expr::Test(BExpr::Zero)
    }

    pub fn one() -> Expr {
        Expr::Test(BExpr::One)
    }

    pub fn seq(e: Expr, f: Expr) -> Expr {
        Expr::Seq(Box::new(e), Box::new(f))
    }

    pub fn ite(b: BExpr, e: Expr, f: Expr) -> Expr {
        Expr::If(b, Box::new(e), Box::new(f))
    }

    pub fn while_do(b: BExpr, e: Expr) -> Expr {
        Expr::While(b, Box::new(e))
    }

    pub fn is_one(&self) -> bool {
        matches!(self, Expr::Test(BExpr::One))
    }

    pub fn is_zero(&self) -> bool {
        matches!(self, Expr::Test(BExpr::Zero))
    }

    /// Number of syntax nodes, counting Boolean subterms.
    pub fn size(&self) -> usize {
        fn bsize(b: &BExpr) -> usize {
            match b {
                BExpr::Zero | BExpr::One | BExpr::Test(_) => 1,
                BExpr::And(x, y) | BExpr::Or(x, y) => 1 + bsize(x) + bsize(y),
                BExpr::Not(x) => 1 + bsize(x),
            }
        }
        match self {
            Expr::Act(_) => 1,
            Expr::Test(b) => bsize(b),
            Expr::Seq(e, f) => 1 + e.size() + f.size(),
            Expr::If(b, e, f) => 1 + bsize(b) + e.size() + f.size(),
            Expr::While(b, e) => 1 + bsize(b) + e.size(),
        }
    }

    /// Concrete syntax accepted back by [`crate::parse_expr`], producing an
    /// identical tree.
    pub fn display<'a>(&'a self, alphabet: &'a Alphabet) -> impl fmt::Display + 'a {
        EDisplay {
            e: self,
            alphabet,
            level: ELevel::Seq,
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
enum BLevel {
    Or,
    And,
    Atom,
}

struct BDisplay<'a> {
    b: &'a BExpr,
    alphabet: &'a Alphabet,
    level: BLevel,
}

impl BDisplay<'_> {
    fn sub<'b>(&'b self, b: &'b BExpr, level: BLevel) -> BDisplay<'b> {
        BDisplay {
            b,
            alphabet: self.alphabet,
            level,
        }
    }
}

impl fmt::Display for BDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let own = match self.b {
            BExpr::Or(..) => BLevel::Or,
            BExpr::And(..) => BLevel::And,
            _ => BLevel::Atom,
        };
        let paren = own < self.level;
        if paren {
            f.write_str("(")?;
        }
        match self.b {
            BExpr::Zero => f.write_str("false")?,
            BExpr::One => f.write_str("true")?,
            BExpr::Test(j) => f.write_str(&self.alphabet.tests()[*j])?,
            BExpr::Or(a, b) => write!(
                f,
                "{} or {}",
                self.sub(a, BLevel::Or),
                self.sub(b, BLevel::And)
            )?,
            BExpr::And(a, b) => write!(
                f,
                "{} and {}",
                self.sub(a, BLevel::And),
                self.sub(b, BLevel::Atom)
            )?,
            BExpr::Not(a) => write!(f, "!{}", self.sub(a, BLevel::Atom))?,
        }
        if paren {
            f.write_str(")")?;
        }
        Ok(())
    }
}

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
enum ELevel {
    Seq,
    Term,
}

struct EDisplay<'a> {
    e: &'a Expr,
    alphabet: &'a Alphabet,
    level: ELevel,
}

impl EDisplay<'_> {
    fn sub<'b>(&'b self, e: &'b Expr, level: ELevel) -> EDisplay<'b> {
        EDisplay {
            e,
            alphabet: self.alphabet,
            level,
        }
    }
}

impl fmt::Display for EDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let paren = matches!(self.e, Expr::Seq(..)) && self.level == ELevel::Term;
        if paren {
            f.write_str("(")?;
        }
        match self.e {
            Expr::Act(p) => f.write_str(&self.alphabet.actions()[*p])?,
            Expr::Test(BExpr::Zero) => f.write_str("0")?,
            Expr::Test(BExpr::One) => f.write_str("1")?,
            Expr::Test(b) => write!(f, "assert {}", b.display(self.alphabet))?,
            Expr::Seq(a, b) => write!(
                f,
                "{}; {}",
                self.sub(a, ELevel::Seq),
                self.sub(b, ELevel::Term)
            )?,
            Expr::If(b, x, y) => write!(
                f,
                "if {} then {} else {}",
                b.display(self.alphabet),
                self.sub(x, ELevel::Term),
                self.sub(y, ELevel::Term)
            )?,
            Expr::While(b, x) => write!(
                f,
                "while {} do {}",
                b.display(self.alphabet),
                self.sub(x, ELevel::Term)
            )?,
        }
        if paren {
            f.write_str(")")?;
        }
        Ok(())
    }
}
