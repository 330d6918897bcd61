//! Elaboration: turning a parsed script into curves, divisors and functions.

use std::collections::HashMap;

use raygroup::curve::{Curve, Place};
use raygroup::divisor::{Divisor, Modulus};
use raygroup::field::{ExtElem, Field, Fq};
use raygroup::function::Function;
use raygroup::Error;

use crate::ast::*;
use crate::error::ScriptError;

#[derive(Clone, Debug)]
pub enum Value {
    Curve(Curve),
    Divisor(Divisor),
    Modulus(Modulus),
    Function(Function),
}

impl Value {
    fn noun(&self) -> &'static str {
        match self {
            Value::Curve(_) => "a curve",
            Value::Divisor(_) => "a divisor",
            Value::Modulus(_) => "a modulus",
            Value::Function(_) => "a function",
        }
    }
}

/// Declarations in scope plus the command to run.
#[derive(Debug)]
pub struct Session {
    names: HashMap<String, Value>,
    pub command: Command,
}

pub fn elaborate(script: &Script) -> Result<Session, ScriptError> {
    let mut names: HashMap<String, Value> = HashMap::new();
    let mut current: Option<Curve> = None;
    let mut command = None;
    for st in &script.statements {
        let (name, pos) = match st {
            Statement::Command(c) => {
                command = Some(c.clone());
                continue;
            }
            Statement::Curve { name, pos, .. }
            | Statement::Divisor { name, pos, .. }
            | Statement::Function { name, pos, .. } => (name, *pos),
        };
        if names.contains_key(name) {
            return Err(ScriptError::syntax(pos, format!("{name} is already declared")));
        }
        let value = match st {
            Statement::Curve { spec, .. } => {
                let c = build_curve(spec).map_err(|e| ScriptError::domain(&e, Some(pos)))?;
                current = Some(c.clone());
                Value::Curve(c)
            }
            Statement::Divisor { modulus, terms, .. } => {
                let curve = current.as_ref().ok_or_else(|| no_curve(pos))?;
                let d = divisor(curve, &names, terms, *modulus)?;
                if *modulus {
                    Value::Modulus(Modulus::new(d).map_err(|e| ScriptError::domain(&e, Some(pos)))?)
                } else {
                    Value::Divisor(d)
                }
            }
            Statement::Function { expr, .. } => {
                let curve = current.as_ref().ok_or_else(|| no_curve(pos))?;
                Value::Function(eval(curve, &names, expr, pos)?)
            }
            Statement::Command(_) => unreachable!(),
        };
        names.insert(name.clone(), value);
    }
    let command = command.ok_or_else(|| ScriptError::syntax(Pos::default(), "script has no command"))?;
    Ok(Session { names, command })
}

fn no_curve(pos: Pos) -> ScriptError {
    ScriptError::syntax(pos, "declare a curve first")
}

fn build_curve(spec: &CurveSpec) -> Result<Curve, Error> {
    let (p, n) = match (u32::try_from(spec.p), u32::try_from(spec.n)) {
        (Ok(p), Ok(n)) => (p, n),
        _ => return Err(Error::InvalidField(format!("GF({}^{}) is too large", spec.p, spec.n))),
    };
    let field = Fq::new(p, n)?;
    match &spec.elliptic {
        None => Ok(Curve::projective_line(field)),
        Some(a) => {
            let mut coeffs = [0u32; 5];
            for (c, e) in coeffs.iter_mut().zip(a) {
                *c = element(&field, e)?;
            }
            Curve::elliptic(field, coeffs)
        }
    }
}

/// An element of the ground field: an integer mod p, or a digit vector.
pub fn element(field: &Fq, e: &ElemLit) -> Result<u32, Error> {
    match e {
        ElemLit::Int(k) => Ok(field.from_int(*k)),
        ElemLit::Vec(v) => {
            let mut digits = Vec::with_capacity(v.len());
            for d in v {
                match d {
                    ElemLit::Int(k) => digits.push(Fq::new(field.p(), 1)?.from_int(*k)),
                    ElemLit::Vec(_) => return Err(Error::InvalidField(format!("{e} is not an element of {field}"))),
                }
            }
            field.from_digits(&digits)
        }
    }
}

/// A point coordinate: a ground-field element, or a vector of ground-field
/// elements giving coordinates in an extension. Over GF(p^n) with n > 1 a flat
/// integer vector is a ground-field element.
fn coordinate(field: &Fq, e: &ElemLit) -> Result<Vec<u32>, Error> {
    match e {
        ElemLit::Vec(v) if field.n() == 1 || v.iter().any(|d| matches!(d, ElemLit::Vec(_))) => {
            v.iter().map(|d| element(field, d)).collect()
        }
        _ => Ok(vec![element(field, e)?]),
    }
}

fn embed(field: &Fq, v: Vec<u32>, d: usize) -> Result<ExtElem, Error> {
    if v.len() == d {
        return Ok(v.into_iter().collect());
    }
    if v.len() == 1 {
        return Ok(field.ext(d).embed(v[0]));
    }
    Err(Error::IllFormedDivisor("point coordinates have different degrees".into()))
}

pub fn place(curve: &Curve, names: &HashMap<String, Value>, lit: &PlaceLit, pos: Pos) -> Result<Place, ScriptError> {
    let dom = |e: Error| ScriptError::domain(&e, Some(pos));
    let field = curve.field();
    match lit {
        PlaceLit::Inf => Ok(curve.infinity()),
        PlaceLit::Poly(e) => {
            let f = eval(curve, names, e, pos)?;
            if !f.b().is_zero() || !f.c().is_constant() {
                return Err(dom(Error::IllFormedDivisor(format!("{f} is not a polynomial in x"))));
            }
            if !curve.is_elliptic() {
                return curve.place_from_poly(f.a()).map_err(dom);
            }
            if !f.a().is_monic(field) || !f.a().is_irreducible(field) {
                return Err(dom(Error::IllFormedDivisor(format!("{f} is not monic irreducible"))));
            }
            match curve.places_above(f.a()).as_slice() {
                [p] => Ok(p.clone()),
                [] => Err(dom(Error::IllFormedDivisor(format!("no place of {curve} lies over {f}")))),
                _ => Err(dom(Error::IllFormedDivisor(format!("{f} has several places above it; give a point")))),
            }
        }
        PlaceLit::Point(x, y) => {
            let xs = coordinate(field, x).map_err(dom)?;
            let ys = coordinate(field, y).map_err(dom)?;
            let d = xs.len().max(ys.len());
            let ext = field.ext(d);
            let x0 = embed(field, xs, d).map_err(dom)?;
            let y0 = embed(field, ys, d).map_err(dom)?;
            curve.place_from_point(&ext, &x0, &y0).map_err(dom)
        }
    }
}

fn divisor(
    curve: &Curve,
    names: &HashMap<String, Value>,
    terms: &[DivTerm],
    modulus: bool,
) -> Result<Divisor, ScriptError> {
    let mut d = Divisor::zero(curve);
    for t in terms {
        if modulus && t.coeff < 1 {
            return Err(ScriptError::domain(
                &Error::IllFormedDivisor(format!("modulus coefficients must be at least 1, found {}", t.coeff)),
                Some(t.pos),
            ));
        }
        match &t.item {
            DivItem::Place(lit) => {
                let p = place(curve, names, lit, t.pos)?;
                d.add_at(&p, t.coeff);
            }
            DivItem::Name(n) => {
                let other = match names.get(n) {
                    Some(Value::Divisor(e)) => e.clone(),
                    Some(Value::Modulus(m)) => m.divisor().clone(),
                    Some(v) => {
                        return Err(ScriptError::syntax(t.pos, format!("{n} is {}, not a divisor", v.noun())))
                    }
                    None => return Err(ScriptError::unknown(t.pos, n)),
                };
                d = d.add(&other.scale(t.coeff)).map_err(|e| ScriptError::domain(&e, Some(t.pos)))?;
            }
        }
    }
    Ok(d)
}

pub fn eval(curve: &Curve, names: &HashMap<String, Value>, e: &Expr, pos: Pos) -> Result<Function, ScriptError> {
    let dom = |err: Error| ScriptError::domain(&err, Some(pos));
    let field = curve.field();
    let bin = |a: &Expr, b: &Expr| -> Result<(Function, Function), ScriptError> {
        Ok((eval(curve, names, a, pos)?, eval(curve, names, b, pos)?))
    };
    match e {
        Expr::Int(k) => Ok(Function::constant(curve, field.from_int((*k % field.p() as u64) as i64))),
        Expr::Elem(l) => Ok(Function::constant(curve, element(field, l).map_err(dom)?)),
        Expr::X => Ok(Function::x(curve)),
        Expr::Y => Function::y(curve).map_err(dom),
        Expr::Name(n, npos) => match names.get(n) {
            Some(Value::Function(f)) if f.curve() == curve => Ok(f.clone()),
            Some(Value::Function(_)) => Err(ScriptError::domain(&Error::CurveMismatch, Some(*npos))),
            Some(v) => Err(ScriptError::syntax(*npos, format!("{n} is {}, not a function", v.noun()))),
            None => Err(ScriptError::unknown(*npos, n)),
        },
        Expr::Neg(a) => Ok(eval(curve, names, a, pos)?.neg()),
        Expr::Add(a, b) => {
            let (a, b) = bin(a, b)?;
            a.add(&b).map_err(dom)
        }
        Expr::Sub(a, b) => {
            let (a, b) = bin(a, b)?;
            a.sub(&b).map_err(dom)
        }
        Expr::Mul(a, b) => {
            let (a, b) = bin(a, b)?;
            a.mul(&b).map_err(dom)
        }
        Expr::Div(a, b) => {
            let (a, b) = bin(a, b)?;
            a.div(&b).map_err(dom)
        }
        Expr::Pow(a, k) => eval(curve, names, a, pos)?.pow(*k).map_err(dom),
    }
}

impl Session {
    pub fn get(&self, name: &str) -> Option<&Value> {
        self.names.get(name)
    }

    pub fn names(&self) -> &HashMap<String, Value> {
        &self.names
    }
}
