//! Evaluating a function on the divisor of another function without
//! splitting that divisor into places.
//!
//! Away from a small set of x-polynomials, the zero cycle of a polynomial
//! d(x) is Spec of (k[x]/d)[y]/F and the zero cycle of a + b y (gcd 1) is
//! Spec of k[x]/N(a + b y) with y = -a/b. The norm (trace) of f from these
//! algebras to k is the product (sum) of N(f(Q))^v_Q (v_Q Tr f(Q)).

use crate::curve::Place;
use crate::error::{Error, Result};
use crate::field::{Field, Fq};
use crate::function::Function;
use crate::poly::FqPoly;
use crate::symbols::SymbolKind;

/// Res(a, b) = lc(a)^deg(b) * prod over roots of a of b.
pub fn resultant(a: &FqPoly, b: &FqPoly, field: &Fq) -> u32 {
    let (mut a, mut b) = (a.clone(), b.clone());
    let mut acc = 1u32;
    loop {
        if a.is_zero() || b.is_zero() {
            return 0;
        }
        let (da, db) = (a.deg(), b.deg());
        if da == 0 {
            return field.mul(&acc, &field.pow(a.lead().unwrap(), db as u128));
        }
        if db == 0 {
            return field.mul(&acc, &field.pow(b.lead().unwrap(), da as u128));
        }
        let r = a.rem(&b, field);
        if r.is_zero() {
            return 0;
        }
        let dr = r.deg();
        let mut k = field.pow(b.lead().unwrap(), (da - dr) as u128);
        if (da * db) % 2 == 1 {
            k = field.neg(&k);
        }
        acc = field.mul(&acc, &k);
        a = b;
        b = r;
    }
}

/// Trace of r from k[x]/(n) to k, for monic n.
pub fn trace_mod(n: &FqPoly, r: &FqPoly, field: &Fq) -> u32 {
    let d = n.deg().max(0) as usize;
    if d == 0 {
        return 0;
    }
    let r = r.rem(n, field);
    // Newton: power sums p_k of the roots of n
    let c = |i: usize| n.coeff(field, i);
    let mut p = vec![field.from_int(d as i64)];
    for k in 1..d {
        let mut s = field.mul(&field.from_int(k as i64), &c(d - k));
        for i in 1..k {
            s = field.add(&s, &field.mul(&c(d - i), &p[k - i]));
        }
        p.push(field.neg(&s));
    }
    r.coeffs().iter().zip(&p).fold(0, |acc, (a, b)| field.add(&acc, &field.mul(a, b)))
}

/// r^-1 mod n, if it exists.
pub fn inv_mod(r: &FqPoly, n: &FqPoly, field: &Fq) -> Option<FqPoly> {
    let (g, s, _) = r.ext_gcd(n, field);
    if g.deg() != 0 {
        return None;
    }
    Some(s.rem(n, field))
}

/// sum over Q outside `excluded` of v_Q(g) * f(Q), normed or traced into GF(q).
pub fn value_on_divisor(kind: SymbolKind, f: &Function, g: &Function, excluded: &[Place]) -> Result<u32> {
    if g.is_zero() {
        return Err(Error::ZeroFunction);
    }
    let curve = g.curve();
    let field = curve.field();
    // x-polynomials whose fibres are handled place by place
    let mut special: Vec<FqPoly> = excluded.iter().filter(|p| !p.is_infinite()).map(|p| p.poly().clone()).collect();
    for p in f.divisor()?.support() {
        if !p.is_infinite() {
            special.push(p.poly().clone());
        }
    }
    special.sort_by(crate::poly::canonical_cmp);
    special.dedup();
    let strip = |mut q: FqPoly| -> FqPoly {
        for s in &special {
            q = q.split_off(s, field).1;
        }
        q.monic(field)
    };

    let mut acc = kind.identity();
    let mut push = |v: u32| acc = kind.combine(field, acc, v);

    let (a, b, c) = (g.a(), g.b(), g.c());
    let d = if b.is_zero() { a.monic(field) } else { a.gcd(b, field) };
    push(fibre_value(kind, f, &strip(d.clone()))?);
    let c0 = strip(c.clone());
    push(kind.power(field, fibre_value(kind, f, &c0)?, -1));
    if !b.is_zero() {
        let a1 = a.div_exact(&d, field).unwrap();
        let b1 = b.div_exact(&d, field).unwrap();
        let (s, r) = (curve.s_poly(), curve.r_poly());
        let n = a1.mul(&a1, field).sub(&a1.mul(&b1, field).mul(&s, field), field).sub(&b1.mul(&b1, field).mul(&r, field), field);
        let n0 = strip(n);
        if n0.deg() > 0 {
            let ib = inv_mod(&b1, &n0, field).ok_or_else(|| Error::NotInDomain("cycle section".into()))?;
            let y = a1.mul(&ib, field).rem(&n0, field).neg(field);
            push(section_value(kind, f, &n0, &y)?);
        }
    }
    for s in &special {
        for q in curve.places_above(s) {
            if excluded.contains(&q) {
                continue;
            }
            let v = g.valuation(&q)?;
            if v != 0 {
                push(point_value(kind, f, &q, v)?);
            }
        }
    }
    let inf = curve.infinity();
    if !excluded.contains(&inf) {
        let v = g.valuation(&inf)?;
        if v != 0 {
            push(point_value(kind, f, &inf, v)?);
        }
    }
    Ok(acc)
}

fn point_value(kind: SymbolKind, f: &Function, q: &Place, k: i64) -> Result<u32> {
    let v = kind.descend(q.residue_field(), &f.evaluate(q)?);
    if kind == SymbolKind::Multiplicative && v == 0 {
        return Err(Error::NotInDomain(q.to_string()));
    }
    Ok(kind.power(f.curve().field(), v, k))
}

/// f on the full fibre over the roots of a monic d coprime to the special set.
fn fibre_value(kind: SymbolKind, f: &Function, d: &FqPoly) -> Result<u32> {
    if d.deg() <= 0 {
        return Ok(kind.identity());
    }
    let curve = f.curve();
    let field = curve.field();
    let ic = inv_mod(f.c(), d, field).ok_or_else(|| Error::NotInDomain("fibre".into()))?;
    let (fa, fb) = (f.a(), f.b());
    match kind {
        SymbolKind::Multiplicative => {
            let (num, den_pow) = if curve.is_elliptic() {
                let (s, r) = (curve.s_poly(), curve.r_poly());
                let n = fa.mul(fa, field).sub(&fa.mul(fb, field).mul(&s, field), field).sub(&fb.mul(fb, field).mul(&r, field), field);
                (n, 2)
            } else {
                (fa.clone(), 1)
            };
            let nv = resultant(d, &num, field);
            if nv == 0 {
                return Err(Error::NotInDomain("fibre".into()));
            }
            let cv = resultant(d, f.c(), field);
            Ok(field.mul(&nv, &field.inv(&field.pow(&cv, den_pow)).unwrap()))
        }
        SymbolKind::Additive => {
            let t = if curve.is_elliptic() {
                fa.add(fa, field).sub(&fb.mul(&curve.s_poly(), field), field)
            } else {
                fa.clone()
            };
            Ok(trace_mod(d, &t.mul(&ic, field), field))
        }
    }
}

/// f on the cycle k[x]/(n) with y = y(x).
fn section_value(kind: SymbolKind, f: &Function, n: &FqPoly, y: &FqPoly) -> Result<u32> {
    let field = f.curve().field();
    let num = f.a().add(&f.b().mul(y, field), field).rem(n, field);
    match kind {
        SymbolKind::Multiplicative => {
            let nv = resultant(n, &num, field);
            let cv = resultant(n, f.c(), field);
            if nv == 0 || cv == 0 {
                return Err(Error::NotInDomain("cycle".into()));
            }
            Ok(field.mul(&nv, &field.inv(&cv).unwrap()))
        }
        SymbolKind::Additive => {
            let ic = inv_mod(f.c(), n, field).ok_or_else(|| Error::NotInDomain("cycle".into()))?;
            Ok(trace_mod(n, &num.mul(&ic, field), field))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::curve::Curve;
    use crate::poly::Poly;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn brute(kind: SymbolKind, f: &Function, g: &Function, excluded: &[Place]) -> u32 {
        let field = f.curve().field();
        let mut acc = kind.identity();
        for (q, v) in g.divisor().unwrap().terms() {
            if !excluded.contains(q) {
                let val = kind.descend(q.residue_field(), &f.evaluate(q).unwrap());
                acc = kind.combine(field, acc, kind.power(field, val, v));
            }
        }
        acc
    }

    #[test]
    fn resultant_and_trace_small() {
        let f = Fq::new(5, 1).unwrap();
        let n = Poly::from_coeffs(&f, vec![f.from_int(-4), 0, 1]); // (x-2)(x+2)
        let r = Poly::from_coeffs(&f, vec![1, 1]); // x + 1
        assert_eq!(resultant(&n, &r, &f), f.from_int(-3));
        assert_eq!(trace_mod(&n, &r, &f), f.from_int(3 + -1));
    }

    #[test]
    fn matches_place_by_place() {
        let curves = [
            Curve::projective_line(Fq::new(3, 1).unwrap()),
            Curve::elliptic(Fq::new(5, 1).unwrap(), [0, 0, 0, 1, 0]).unwrap(),
            Curve::elliptic(Fq::new(7, 1).unwrap(), [1, 0, 1, 2, 3]).unwrap(),
        ];
        for curve in curves {
            let mut rng = ChaCha8Rng::seed_from_u64(3);
            for _ in 0..40 {
                let f = Function::random(&curve, 3, &mut rng);
                let g = Function::random(&curve, 3, &mut rng);
                if f.is_zero() || g.is_zero() {
                    continue;
                }
                let excluded = f.divisor().unwrap().support();
                for kind in [SymbolKind::Multiplicative, SymbolKind::Additive] {
                    let fast = value_on_divisor(kind, &f, &g, &excluded).unwrap();
                    assert_eq!(fast, brute(kind, &f, &g, &excluded), "{curve} f={f} g={g} {kind:?}");
                }
            }
        }
    }
}
