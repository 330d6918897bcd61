//! Recursive-descent parser for session scripts; see grammar.ebnf.

use crate::ast::*;
use crate::error::ScriptError;
use crate::lexer::{lex, Tok, Token};

pub fn parse_script(src: &str) -> Result<Script, ScriptError> {
    let toks = lex(src)?;
    let mut p = Parser { toks, i: 0 };
    let mut statements = Vec::new();
    loop {
        while p.peek() == &Tok::End && p.i + 1 < p.toks.len() {
            p.i += 1;
        }
        if p.i + 1 >= p.toks.len() {
            break;
        }
        statements.push(p.statement()?);
        if p.peek() != &Tok::End {
            return Err(p.unexpected("end of statement"));
        }
    }
    let commands: Vec<&Command> = statements
        .iter()
        .filter_map(|s| if let Statement::Command(c) = s { Some(c) } else { None })
        .collect();
    match commands.as_slice() {
        [] => Err(ScriptError::syntax(p.pos(), "script has no command")),
        [_] => Ok(Script { statements }),
        [_, second, ..] => Err(ScriptError::syntax(second.pos, "a script holds exactly one command")),
    }
}

struct Parser {
    toks: Vec<Token>,
    i: usize,
}

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.i].tok
    }

    fn peek_at(&self, k: usize) -> &Tok {
        &self.toks[(self.i + k).min(self.toks.len() - 1)].tok
    }

    fn pos(&self) -> Pos {
        self.toks[self.i].pos
    }

    fn bump(&mut self) -> Token {
        let t = self.toks[self.i].clone();
        if self.i + 1 < self.toks.len() {
            self.i += 1;
        }
        t
    }

    fn unexpected(&self, want: &str) -> ScriptError {
        let found = match self.peek() {
            Tok::Ident(s) => format!("'{s}'"),
            Tok::Int(k) => format!("{k}"),
            Tok::Sym(c) => format!("'{c}'"),
            Tok::End if self.i + 1 >= self.toks.len() => "end of input".to_string(),
            Tok::End => "end of statement".to_string(),
        };
        ScriptError::syntax(self.pos(), format!("expected {want}, found {found}"))
    }

    fn sym(&mut self, c: char) -> Result<Pos, ScriptError> {
        if self.peek() == &Tok::Sym(c) {
            Ok(self.bump().pos)
        } else {
            Err(self.unexpected(&format!("'{c}'")))
        }
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == &Tok::Sym(c) {
            self.bump();
            true
        } else {
            false
        }
    }

    fn keyword(&mut self, k: &str) -> Result<(), ScriptError> {
        match self.peek() {
            Tok::Ident(s) if s == k => {
                self.bump();
                Ok(())
            }
            _ => Err(self.unexpected(&format!("'{k}'"))),
        }
    }

    fn ident(&mut self) -> Result<(String, Pos), ScriptError> {
        match self.peek().clone() {
            Tok::Ident(s) => Ok((s, self.bump().pos)),
            _ => Err(self.unexpected("a name")),
        }
    }

    fn int(&mut self) -> Result<u64, ScriptError> {
        match self.peek().clone() {
            Tok::Int(k) => {
                self.bump();
                Ok(k)
            }
            _ => Err(self.unexpected("an integer")),
        }
    }

    fn signed_int(&mut self) -> Result<i64, ScriptError> {
        let neg = self.eat('-');
        let pos = self.pos();
        let k = i64::try_from(self.int()?).map_err(|_| ScriptError::syntax(pos, "integer is too large"))?;
        Ok(if neg { -k } else { k })
    }

    fn statement(&mut self) -> Result<Statement, ScriptError> {
        let pos = self.pos();
        let (head, _) = self.ident()?;
        match head.as_str() {
            "curve" => {
                let (name, _) = self.ident()?;
                self.sym('=')?;
                let spec = self.curve_spec()?;
                Ok(Statement::Curve { name, spec, pos })
            }
            "divisor" | "modulus" => {
                let (name, _) = self.ident()?;
                self.sym('=')?;
                let terms = self.div_terms()?;
                Ok(Statement::Divisor { name, modulus: head == "modulus", terms, pos })
            }
            "fn" => {
                let (name, _) = self.ident()?;
                self.sym('=')?;
                let expr = self.expr()?;
                Ok(Statement::Function { name, expr, pos })
            }
            c if COMMANDS.contains(&c) => {
                let mut args = Vec::new();
                while self.peek() != &Tok::End {
                    args.push(self.arg()?);
                }
                Ok(Statement::Command(Command { name: head, args, pos }))
            }
            _ => Err(ScriptError::syntax(pos, format!("unknown statement '{head}'"))),
        }
    }

    fn curve_spec(&mut self) -> Result<CurveSpec, ScriptError> {
        let (model, pos) = self.ident()?;
        let elliptic = match model.as_str() {
            "P1" => None,
            "elliptic" => {
                self.sym('(')?;
                let mut a = vec![self.elem()?];
                while self.eat(',') {
                    a.push(self.elem()?);
                }
                self.sym(')')?;
                if a.len() != 5 {
                    return Err(ScriptError::syntax(pos, "elliptic(...) takes five coefficients a1,a2,a3,a4,a6"));
                }
                Some(a)
            }
            _ => return Err(ScriptError::syntax(pos, format!("expected P1 or elliptic, found '{model}'"))),
        };
        self.keyword("over")?;
        self.keyword("GF")?;
        self.sym('(')?;
        let p = self.int()?;
        let n = if self.eat('^') { self.int()? } else { 1 };
        self.sym(')')?;
        Ok(CurveSpec { elliptic, p, n })
    }

    fn elem(&mut self) -> Result<ElemLit, ScriptError> {
        if self.eat('[') {
            let mut v = vec![self.elem()?];
            while self.eat(',') {
                v.push(self.elem()?);
            }
            self.sym(']')?;
            Ok(ElemLit::Vec(v))
        } else {
            Ok(ElemLit::Int(self.signed_int()?))
        }
    }

    fn div_terms(&mut self) -> Result<Vec<DivTerm>, ScriptError> {
        if self.peek() == &Tok::Int(0) && self.peek_at(1) == &Tok::End {
            self.bump();
            return Ok(Vec::new());
        }
        let mut terms = Vec::new();
        let mut sign = if self.eat('-') { -1 } else { 1 };
        loop {
            let pos = self.pos();
            let mut coeff = 1i64;
            if let Tok::Int(_) = self.peek() {
                coeff = i64::try_from(self.int()?).map_err(|_| ScriptError::syntax(pos, "coefficient is too large"))?;
                self.sym('*')?;
            }
            let item = match self.peek() {
                Tok::Sym('[') => DivItem::Place(self.place()?),
                Tok::Ident(_) => DivItem::Name(self.ident()?.0),
                _ => return Err(self.unexpected("a place or a divisor name")),
            };
            terms.push(DivTerm { coeff: sign * coeff, item, pos });
            sign = if self.eat('+') {
                1
            } else if self.eat('-') {
                -1
            } else {
                break;
            };
        }
        Ok(terms)
    }

    fn place(&mut self) -> Result<PlaceLit, ScriptError> {
        self.sym('[')?;
        if let Tok::Ident(s) = self.peek() {
            if s == "inf" && self.peek_at(1) == &Tok::Sym(']') {
                self.bump();
                self.bump();
                return Ok(PlaceLit::Inf);
            }
        }
        if self.peek() == &Tok::Sym('(') {
            let save = self.i;
            self.bump();
            if let Ok(x) = self.elem() {
                if self.eat(',') {
                    let y = self.elem()?;
                    self.sym(')')?;
                    self.sym(']')?;
                    return Ok(PlaceLit::Point(x, y));
                }
            }
            self.i = save;
        }
        let e = self.expr()?;
        self.sym(']')?;
        Ok(PlaceLit::Poly(e))
    }

    fn arg(&mut self) -> Result<Arg, ScriptError> {
        let pos = self.pos();
        match self.peek() {
            Tok::Sym('[') => Ok(Arg::Place(self.place()?, pos)),
            Tok::Ident(_) => {
                let (name, pos) = self.ident()?;
                if self.eat('(') {
                    let mut v = Vec::new();
                    if !self.eat(')') {
                        v.push(self.signed_int()?);
                        while self.eat(',') {
                            v.push(self.signed_int()?);
                        }
                        self.sym(')')?;
                    }
                    Ok(Arg::Call(name, v, pos))
                } else {
                    Ok(Arg::Name(name, pos))
                }
            }
            _ => Err(self.unexpected("an argument")),
        }
    }

    fn expr(&mut self) -> Result<Expr, ScriptError> {
        let mut e = self.term()?;
        loop {
            if self.eat('+') {
                e = Expr::Add(Box::new(e), Box::new(self.term()?));
            } else if self.eat('-') {
                e = Expr::Sub(Box::new(e), Box::new(self.term()?));
            } else {
                return Ok(e);
            }
        }
    }

    fn term(&mut self) -> Result<Expr, ScriptError> {
        let mut e = self.unary()?;
        loop {
            if self.eat('*') {
                e = Expr::Mul(Box::new(e), Box::new(self.unary()?));
            } else if self.eat('/') {
                e = Expr::Div(Box::new(e), Box::new(self.unary()?));
            } else {
                return Ok(e);
            }
        }
    }

    fn unary(&mut self) -> Result<Expr, ScriptError> {
        if self.eat('-') {
            return Ok(Expr::Neg(Box::new(self.unary()?)));
        }
        let base = self.atom()?;
        if self.eat('^') {
            let k = self.signed_int()?;
            return Ok(Expr::Pow(Box::new(base), k));
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Expr, ScriptError> {
        match self.peek().clone() {
            Tok::Int(k) => {
                self.bump();
                Ok(Expr::Int(k))
            }
            Tok::Sym('(') => {
                self.bump();
                let e = self.expr()?;
                self.sym(')')?;
                Ok(e)
            }
            Tok::Sym('[') => Ok(Expr::Elem(self.elem()?)),
            Tok::Ident(s) => {
                let pos = self.bump().pos;
                Ok(match s.as_str() {
                    "x" => Expr::X,
                    "y" => Expr::Y,
                    _ => Expr::Name(s, pos),
                })
            }
            _ => Err(self.unexpected("an expression")),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn one(src: &str) -> Statement {
        parse_script(&format!("{src}\nverify rr")).unwrap().statements.remove(0)
    }

    #[test]
    fn spec_script() {
        let s = parse_script("curve C = P1 over GF(3); modulus m = 2*[x]; divisor D = 2*[inf]; rrm C D m").unwrap();
        assert_eq!(s.statements.len(), 4);
        assert_eq!(s.command().unwrap().name, "rrm");
        assert_eq!(s.to_string(), "curve C = P1 over GF(3)\nmodulus m = 2*[x]\ndivisor D = 2*[inf]\nrrm C D m\n");
    }

    #[test]
    fn expressions_keep_precedence() {
        let Statement::Function { expr, .. } = one("fn f = (x^2+1)/(x-1)") else { panic!() };
        assert_eq!(expr.to_string(), "(x^2+1)/(x-1)");
        let Statement::Function { expr, .. } = one("fn f = -x^2*y - 2/x^-1") else { panic!() };
        assert_eq!(expr.to_string(), "-x^2*y-2/x^-1");
        assert!(matches!(expr, Expr::Sub(..)));
    }

    #[test]
    fn places_and_divisors() {
        let Statement::Divisor { terms, .. } = one("divisor D = -[(1,[2,3])] + 3*[x^2+1] - E + [inf]") else {
            panic!()
        };
        assert_eq!(terms.iter().map(|t| t.coeff).collect::<Vec<_>>(), [-1, 3, -1, 1]);
        assert!(matches!(&terms[0].item, DivItem::Place(PlaceLit::Point(..))));
        assert!(matches!(&terms[1].item, DivItem::Place(PlaceLit::Poly(_))));
        assert_eq!(terms[2].item, DivItem::Name("E".into()));
        let Statement::Divisor { terms, .. } = one("modulus m = 0") else { panic!() };
        assert!(terms.is_empty());
        // A parenthesised polynomial inside a place is not a point.
        let Statement::Divisor { terms, .. } = one("divisor D = [(x+1)]") else { panic!() };
        assert!(matches!(&terms[0].item, DivItem::Place(PlaceLit::Poly(_))));
    }

    #[test]
    fn multiline_brackets() {
        let s = parse_script("curve E = elliptic(0,0,\n 0,1,0) over GF(5)\n\n# note\nclassgroup E m\n").unwrap();
        assert_eq!(s.statements.len(), 2);
    }

    #[test]
    fn errors_carry_positions() {
        let e = parse_script("curve C = P1 over GF(3)\ndivisor D = 2*\nrr C D").unwrap_err();
        assert_eq!(e.kind, "SyntaxError");
        let p = e.pos.unwrap();
        assert_eq!((p.line, p.col), (2, 15));
        let e = parse_script("curve C = P2 over GF(3); rr C D").unwrap_err();
        assert_eq!((e.pos.unwrap().line, e.pos.unwrap().col), (1, 11));
        assert!(parse_script("curve C = P1 over GF(3)").is_err());
        assert!(parse_script("rr C D; rr C D").is_err());
        assert!(parse_script("frobnicate C").is_err());
    }
}
