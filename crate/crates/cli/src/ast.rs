//! Session scripts and their canonical printed form.

use std::fmt;

/// A source position. Positions never affect equality, so a printed and
/// re-parsed script compares equal to the original.
#[derive(Clone, Copy, Debug, Default)]
pub struct Pos {
    pub line: usize,
    pub col: usize,
}

impl PartialEq for Pos {
    fn eq(&self, _: &Pos) -> bool {
        true
    }
}

impl Eq for Pos {}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Script {
    pub statements: Vec<Statement>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Statement {
    Curve { name: String, spec: CurveSpec, pos: Pos },
    Divisor { name: String, modulus: bool, terms: Vec<DivTerm>, pos: Pos },
    Function { name: String, expr: Expr, pos: Pos },
    Command(Command),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CurveSpec {
    /// None for P1, the Weierstrass coefficients a1, a2, a3, a4, a6 otherwise.
    pub elliptic: Option<Vec<ElemLit>>,
    pub p: u64,
    pub n: u64,
}

/// An integer, or a coordinate vector for extension-field elements.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ElemLit {
    Int(i64),
    Vec(Vec<ElemLit>),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PlaceLit {
    Inf,
    Poly(Expr),
    Point(ElemLit, ElemLit),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DivTerm {
    pub coeff: i64,
    pub item: DivItem,
    pub pos: Pos,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum DivItem {
    Place(PlaceLit),
    Name(String),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Expr {
    Int(u64),
    Elem(ElemLit),
    X,
    Y,
    Name(String, Pos),
    Neg(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Div(Box<Expr>, Box<Expr>),
    Pow(Box<Expr>, i64),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Command {
    pub name: String,
    pub args: Vec<Arg>,
    pub pos: Pos,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Arg {
    Name(String, Pos),
    Place(PlaceLit, Pos),
    /// `chi(1,0)`
    Call(String, Vec<i64>, Pos),
}

pub const COMMANDS: [&str; 11] =
    ["rr", "rrm", "meq", "class", "classgroup", "map", "conductor", "symbol", "trace", "reciprocity", "verify"];

impl Script {
    pub fn command(&self) -> Option<&Command> {
        self.statements.iter().find_map(|s| match s {
            Statement::Command(c) => Some(c),
            _ => None,
        })
    }
}

impl fmt::Display for Script {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for s in &self.statements {
            writeln!(f, "{s}")?;
        }
        Ok(())
    }
}

impl fmt::Display for Statement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Statement::Curve { name, spec, .. } => write!(f, "curve {name} = {spec}"),
            Statement::Divisor { name, modulus, terms, .. } => {
                write!(f, "{} {name} = ", if *modulus { "modulus" } else { "divisor" })?;
                write_terms(f, terms)
            }
            Statement::Function { name, expr, .. } => write!(f, "fn {name} = {expr}"),
            Statement::Command(c) => write!(f, "{c}"),
        }
    }
}

impl fmt::Display for CurveSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.elliptic {
            None => write!(f, "P1")?,
            Some(a) => {
                let parts: Vec<String> = a.iter().map(|e| e.to_string()).collect();
                write!(f, "elliptic({})", parts.join(","))?;
            }
        }
        if self.n == 1 {
            write!(f, " over GF({})", self.p)
        } else {
            write!(f, " over GF({}^{})", self.p, self.n)
        }
    }
}

impl fmt::Display for ElemLit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ElemLit::Int(k) => write!(f, "{k}"),
            ElemLit::Vec(v) => {
                let parts: Vec<String> = v.iter().map(|e| e.to_string()).collect();
                write!(f, "[{}]", parts.join(","))
            }
        }
    }
}

impl fmt::Display for PlaceLit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PlaceLit::Inf => write!(f, "[inf]"),
            PlaceLit::Poly(e) => write!(f, "[{e}]"),
            PlaceLit::Point(x, y) => write!(f, "[({x},{y})]"),
        }
    }
}

impl fmt::Display for DivItem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DivItem::Place(p) => write!(f, "{p}"),
            DivItem::Name(n) => write!(f, "{n}"),
        }
    }
}

fn write_terms(f: &mut fmt::Formatter<'_>, terms: &[DivTerm]) -> fmt::Result {
    if terms.is_empty() {
        return write!(f, "0");
    }
    for (i, t) in terms.iter().enumerate() {
        let k = t.coeff.unsigned_abs();
        match (i, t.coeff < 0) {
            (0, true) => write!(f, "-")?,
            (0, false) => {}
            (_, true) => write!(f, " - ")?,
            (_, false) => write!(f, " + ")?,
        }
        if k == 1 {
            write!(f, "{}", t.item)?;
        } else {
            write!(f, "{k}*{}", t.item)?;
        }
    }
    Ok(())
}

impl Expr {
    fn prec(&self) -> u8 {
        match self {
            Expr::Add(..) | Expr::Sub(..) => 1,
            Expr::Mul(..) | Expr::Div(..) => 2,
            Expr::Neg(_) => 3,
            Expr::Pow(..) => 4,
            _ => 5,
        }
    }
}

fn wrap(f: &mut fmt::Formatter<'_>, e: &Expr, min: u8) -> fmt::Result {
    if e.prec() < min {
        write!(f, "({e})")
    } else {
        write!(f, "{e}")
    }
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Expr::Int(k) => write!(f, "{k}"),
            Expr::Elem(e) => write!(f, "{e}"),
            Expr::X => write!(f, "x"),
            Expr::Y => write!(f, "y"),
            Expr::Name(n, _) => write!(f, "{n}"),
            Expr::Neg(a) => {
                write!(f, "-")?;
                wrap(f, a, 4)
            }
            Expr::Add(a, b) | Expr::Sub(a, b) => {
                wrap(f, a, 1)?;
                write!(f, "{}", if matches!(self, Expr::Add(..)) { "+" } else { "-" })?;
                wrap(f, b, 2)
            }
            Expr::Mul(a, b) | Expr::Div(a, b) => {
                wrap(f, a, 2)?;
                write!(f, "{}", if matches!(self, Expr::Mul(..)) { "*" } else { "/" })?;
                wrap(f, b, 3)
            }
            Expr::Pow(a, k) => {
                wrap(f, a, 5)?;
                write!(f, "^{k}")
            }
        }
    }
}

impl fmt::Display for Command {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.name)?;
        for a in &self.args {
            match a {
                Arg::Name(n, _) => write!(f, " {n}")?,
                Arg::Place(p, _) => write!(f, " {p}")?,
                Arg::Call(n, v, _) => {
                    let parts: Vec<String> = v.iter().map(|k| k.to_string()).collect();
                    write!(f, " {n}({})", parts.join(","))?;
                }
            }
        }
        Ok(())
    }
}
