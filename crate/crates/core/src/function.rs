//! Rational functions on a curve.
//!
//! On P1 a function is a reduced fraction a(x)/c(x). On an elliptic curve it
//! is (a(x) + b(x) y) / c(x) with gcd(a, b, c) = 1, using the equation to
//! keep the degree in y below two. Denominators are monic, so equal functions
//! have equal representations.

use std::fmt;

use rand::Rng;

use crate::curve::{Curve, Place};
use crate::divisor::Divisor;
use crate::error::{Error, Result};
use crate::field::{ExtElem, Field, Fq};
use crate::poly::{FqPoly, Poly};
use crate::series::Laurent;

#[derive(Clone, PartialEq, Eq)]
pub struct Function {
    curve: Curve,
    a: FqPoly,
    b: FqPoly,
    c: FqPoly,
}

impl Function {
    /// (a + b y) / c in lowest terms; `b` must be zero on P1.
    pub fn new(curve: &Curve, a: FqPoly, b: FqPoly, c: FqPoly) -> Result<Function> {
        if c.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if !curve.is_elliptic() && !b.is_zero() {
            return Err(Error::InvalidArgument("y is not a coordinate on P1".into()));
        }
        Ok(Self::reduce(curve, a, b, c))
    }

    fn reduce(curve: &Curve, a: FqPoly, b: FqPoly, c: FqPoly) -> Function {
        let f = curve.field();
        if a.is_zero() && b.is_zero() {
            return Function { curve: curve.clone(), a, b, c: Poly::one(f) };
        }
        let g = a.gcd(&b, f).gcd(&c, f);
        let (mut a, mut b, mut c) = if g.is_constant() {
            (a, b, c)
        } else {
            (
                a.div_exact(&g, f).unwrap(),
                b.div_exact(&g, f).unwrap(),
                c.div_exact(&g, f).unwrap(),
            )
        };
        let lead = *c.lead().unwrap();
        if lead != 1 {
            let il = f.inv(&lead).unwrap();
            a = a.scale(&il, f);
            b = b.scale(&il, f);
            c = c.scale(&il, f);
        }
        Function { curve: curve.clone(), a, b, c }
    }

    pub fn zero(curve: &Curve) -> Function {
        Function { curve: curve.clone(), a: Poly::zero(), b: Poly::zero(), c: Poly::one(curve.field()) }
    }

    pub fn constant(curve: &Curve, k: u32) -> Function {
        let f = curve.field();
        Function { curve: curve.clone(), a: Poly::constant(f, k), b: Poly::zero(), c: Poly::one(f) }
    }

    pub fn one(curve: &Curve) -> Function {
        Self::constant(curve, 1)
    }

    pub fn from_poly(curve: &Curve, a: FqPoly) -> Function {
        Function { curve: curve.clone(), a, b: Poly::zero(), c: Poly::one(curve.field()) }
    }

    /// num(x) / den(x).
    pub fn rational(curve: &Curve, num: FqPoly, den: FqPoly) -> Result<Function> {
        Self::new(curve, num, Poly::zero(), den)
    }

    pub fn x(curve: &Curve) -> Function {
        Self::from_poly(curve, Poly::x(curve.field()))
    }

    /// The coordinate y; P1 has none.
    pub fn y(curve: &Curve) -> Result<Function> {
        let f = curve.field();
        Self::new(curve, Poly::zero(), Poly::one(f), Poly::one(f))
    }

    pub fn curve(&self) -> &Curve {
        &self.curve
    }

    pub fn a(&self) -> &FqPoly {
        &self.a
    }

    pub fn b(&self) -> &FqPoly {
        &self.b
    }

    pub fn c(&self) -> &FqPoly {
        &self.c
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    /// The value if the function is a constant.
    pub fn as_constant(&self) -> Option<u32> {
        if self.b.is_zero() && self.a.is_constant() && self.c.is_constant() {
            Some(self.a.coeff(self.curve.field(), 0))
        } else {
            None
        }
    }

    fn check(&self, other: &Function) -> Result<()> {
        if self.curve == other.curve {
            Ok(())
        } else {
            Err(Error::CurveMismatch)
        }
    }

    pub fn add(&self, other: &Function) -> Result<Function> {
        self.check(other)?;
        let f = self.curve.field();
        if self.c == other.c {
            return Ok(Self::reduce(&self.curve, self.a.add(&other.a, f), self.b.add(&other.b, f), self.c.clone()));
        }
        let a = self.a.mul(&other.c, f).add(&other.a.mul(&self.c, f), f);
        let b = self.b.mul(&other.c, f).add(&other.b.mul(&self.c, f), f);
        Ok(Self::reduce(&self.curve, a, b, self.c.mul(&other.c, f)))
    }

    pub fn neg(&self) -> Function {
        let f = self.curve.field();
        Function { curve: self.curve.clone(), a: self.a.neg(f), b: self.b.neg(f), c: self.c.clone() }
    }

    pub fn sub(&self, other: &Function) -> Result<Function> {
        self.add(&other.neg())
    }

    pub fn scale(&self, k: u32) -> Function {
        let f = self.curve.field();
        if k == 0 {
            return Self::zero(&self.curve);
        }
        Function { curve: self.curve.clone(), a: self.a.scale(&k, f), b: self.b.scale(&k, f), c: self.c.clone() }
    }

    pub fn mul(&self, other: &Function) -> Result<Function> {
        self.check(other)?;
        let f = self.curve.field();
        let (a, b) = self.mul_num(&self.a, &self.b, &other.a, &other.b);
        Ok(Self::reduce(&self.curve, a, b, self.c.mul(&other.c, f)))
    }

    /// (a1 + b1 y)(a2 + b2 y) reduced with y^2 = r - s y.
    fn mul_num(&self, a1: &FqPoly, b1: &FqPoly, a2: &FqPoly, b2: &FqPoly) -> (FqPoly, FqPoly) {
        let f = self.curve.field();
        let aa = a1.mul(a2, f);
        let ab = a1.mul(b2, f).add(&a2.mul(b1, f), f);
        if b1.is_zero() || b2.is_zero() {
            return (aa, ab);
        }
        let bb = b1.mul(b2, f);
        let (s, r) = (self.curve.s_poly(), self.curve.r_poly());
        (aa.add(&bb.mul(&r, f), f), ab.sub(&bb.mul(&s, f), f))
    }

    /// Norm to k(x) of the numerator: a^2 - a b s - b^2 r.
    pub fn numerator_norm(&self) -> FqPoly {
        let f = self.curve.field();
        if self.b.is_zero() {
            return self.a.clone();
        }
        let (s, r) = (self.curve.s_poly(), self.curve.r_poly());
        self.a
            .mul(&self.a, f)
            .sub(&self.a.mul(&self.b, f).mul(&s, f), f)
            .sub(&self.b.mul(&self.b, f).mul(&r, f), f)
    }

    pub fn inv(&self) -> Result<Function> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let f = self.curve.field();
        if self.b.is_zero() {
            return Ok(Self::reduce(&self.curve, self.c.clone(), Poly::zero(), self.a.clone()));
        }
        // conjugate of a + b y is (a - b s) - b y
        let conj_a = self.a.sub(&self.b.mul(&self.curve.s_poly(), f), f);
        let conj_b = self.b.neg(f);
        let n = self.numerator_norm();
        Ok(Self::reduce(&self.curve, conj_a.mul(&self.c, f), conj_b.mul(&self.c, f), n))
    }

    pub fn div(&self, other: &Function) -> Result<Function> {
        self.mul(&other.inv()?)
    }

    pub fn pow(&self, e: i64) -> Result<Function> {
        let base = if e < 0 { self.inv()? } else { self.clone() };
        let mut acc = Self::one(&self.curve);
        let mut sq = base;
        let mut k = e.unsigned_abs();
        while k > 0 {
            if k & 1 == 1 {
                acc = acc.mul(&sq)?;
            }
            k >>= 1;
            if k > 0 {
                sq = sq.mul(&sq)?;
            }
        }
        Ok(acc)
    }

    /// Substitute this function into the rational function num(t)/den(t).
    pub fn compose(&self, num: &FqPoly, den: &FqPoly) -> Result<Function> {
        let horner = |p: &FqPoly| -> Result<Function> {
            let mut acc = Function::zero(&self.curve);
            for &c in p.coeffs().iter().rev() {
                acc = acc.mul(self)?.add(&Function::constant(&self.curve, c))?;
            }
            Ok(acc)
        };
        horner(num)?.div(&horner(den)?)
    }

    /// v_P of this function.
    pub fn valuation(&self, p: &Place) -> Result<i64> {
        if self.is_zero() {
            return Err(Error::ZeroFunction);
        }
        let field = self.curve.field();
        let e = p.ramification() as i64;
        if p.is_infinite() {
            let num = if self.curve.is_elliptic() {
                let va = if self.a.is_zero() { i64::MAX } else { -2 * self.a.deg() };
                let vb = if self.b.is_zero() { i64::MAX } else { -2 * self.b.deg() - 3 };
                va.min(vb)
            } else {
                -self.a.deg()
            };
            return Ok(num + e * self.c.deg());
        }
        let den = e * self.c.split_off(p.poly(), field).0 as i64;
        let num = if self.b.is_zero() {
            e * self.a.split_off(p.poly(), field).0 as i64
        } else {
            let bound = e * self.numerator_norm().split_off(p.poly(), field).0 as i64;
            if bound == 0 {
                0
            } else {
                let s = self.numerator_series(p, bound as usize + 1).normalize(p.residue_field());
                debug_assert!(!s.coeffs.is_empty());
                s.val
            }
        };
        Ok(num - den)
    }

    fn numerator_series(&self, p: &Place, len: usize) -> Laurent {
        let e = p.residue_field();
        let (x, y) = p.local_xy(len);
        let sa = x.eval_poly(self.a.coeffs(), e);
        if self.b.is_zero() {
            return sa;
        }
        let sb = x.eval_poly(self.b.coeffs(), e).mul(&y, e);
        if self.a.is_zero() {
            sb
        } else {
            sa.add(&sb, e)
        }
    }

    /// Lowest pole order the numerator terms can reach (the naive valuation).
    fn naive_valuation(&self, p: &Place, poly: &FqPoly, with_y: bool) -> i64 {
        if !p.is_infinite() || poly.is_zero() {
            return 0;
        }
        let e = p.ramification() as i64;
        -e * poly.deg() - if with_y { 3 } else { 0 }
    }

    /// Laurent expansion in the place's uniformizer, `len` coefficients from v_P.
    pub fn expand(&self, p: &Place, len: usize) -> Result<Laurent> {
        let v = self.valuation(p)?;
        let ext = p.residue_field();
        let den_v = self.c.split_off(p.poly(), self.curve.field()).0 as i64 * p.ramification() as i64;
        let den_v = if p.is_infinite() { -(p.ramification() as i64) * self.c.deg() } else { den_v };
        let num_v = v + den_v;
        let naive_num = self.naive_valuation(p, &self.a, false).min(self.naive_valuation(p, &self.b, true));
        let naive_den = self.naive_valuation(p, &self.c, false);
        let mut work = len + (num_v - naive_num).max(den_v - naive_den).max(0) as usize + 2;
        loop {
            let num = self.numerator_series(p, work).normalize(ext);
            let den = p.local_xy(work).0.eval_poly(self.c.coeffs(), ext).normalize(ext);
            if num.val == num_v && den.val == den_v && num.coeffs.len() >= len && den.coeffs.len() >= len {
                let q = num.truncate(len).div(&den.truncate(len), ext).expect("nonzero denominator");
                return Ok(q);
            }
            work *= 2;
        }
    }

    /// The image of the function in the residue field at P.
    pub fn evaluate(&self, p: &Place) -> Result<ExtElem> {
        let ext = p.residue_field();
        if !p.is_infinite() {
            let (x0, y0) = p.point();
            let ev = |q: &FqPoly| q.coeffs().iter().rev().fold(ext.zero(), |acc, &k| ext.add(&ext.mul(&acc, x0), &ext.embed(k)));
            let cv = ev(&self.c);
            if !ext.is_zero(&cv) {
                let num = ext.add(&ev(&self.a), &ext.mul(&ev(&self.b), y0));
                return Ok(ext.mul(&num, &ext.inv(&cv).unwrap()));
            }
        }
        if self.is_zero() {
            return Ok(ext.zero());
        }
        let v = self.valuation(p)?;
        if v < 0 {
            return Err(Error::PoleAtPlace(p.to_string()));
        }
        if v > 0 {
            return Ok(ext.zero());
        }
        Ok(self.expand(p, 1)?.coeffs[0].clone())
    }

    /// Candidate finite places where the function can have a zero or pole.
    fn finite_candidates(&self) -> Result<Vec<Place>> {
        let field = self.curve.field();
        let mut polys = Vec::new();
        for q in [self.numerator_norm(), self.c.clone()] {
            if q.is_constant() {
                continue;
            }
            polys.extend(q.factor(field)?.factors.into_iter().map(|(g, _)| g));
        }
        polys.sort_by(crate::poly::canonical_cmp);
        polys.dedup();
        let mut out: Vec<Place> = polys.iter().flat_map(|g| self.curve.places_above(g)).collect();
        out.sort();
        out.dedup();
        Ok(out)
    }

    /// The principal divisor (f).
    pub fn divisor(&self) -> Result<Divisor> {
        if self.is_zero() {
            return Err(Error::ZeroFunction);
        }
        let mut d = Divisor::zero(&self.curve);
        for p in self.finite_candidates()? {
            d.add_at(&p, self.valuation(&p)?);
        }
        let inf = self.curve.infinity();
        d.add_at(&inf, self.valuation(&inf)?);
        Ok(d)
    }

    /// A random function with numerator and denominator degrees below `deg`.
    pub fn random<R: Rng + ?Sized>(curve: &Curve, deg: usize, rng: &mut R) -> Function {
        let f = curve.field();
        let rp = |rng: &mut R, n: usize| Poly::from_coeffs(f, (0..n).map(|_| f.random(rng)).collect());
        loop {
            let a = rp(rng, deg);
            let b = if curve.is_elliptic() && rng.gen_bool(0.5) { rp(rng, deg.saturating_sub(1)) } else { Poly::zero() };
            let mut c = rp(rng, deg);
            if c.is_zero() {
                c = Poly::one(f);
            }
            let g = Self::reduce(curve, a, b, c);
            if !g.is_zero() {
                return g;
            }
        }
    }
}

fn poly_weighted_terms(field: &Fq, p: &FqPoly, weight: i64, y: bool, out: &mut Vec<(i64, String)>) {
    for (k, &c) in p.coeffs().iter().enumerate() {
        if c == 0 {
            continue;
        }
        let mut mono = Vec::new();
        match k {
            0 => {}
            1 => mono.push("x".to_string()),
            _ => mono.push(format!("x^{k}")),
        }
        if y {
            mono.push("y".into());
        }
        let body = mono.join("*");
        let term = if body.is_empty() {
            field.format(c)
        } else if c == 1 {
            body
        } else {
            format!("{}*{body}", field.format(c))
        };
        out.push((weight * k as i64 + if y { 3 } else { 0 }, term));
    }
}

/// Sparse text form of a + b y, highest pole order at infinity first.
fn format_numerator(field: &Fq, a: &FqPoly, b: &FqPoly) -> String {
    let mut terms = Vec::new();
    poly_weighted_terms(field, a, 2, false, &mut terms);
    poly_weighted_terms(field, b, 2, true, &mut terms);
    if terms.is_empty() {
        return "0".into();
    }
    terms.sort_by(|l, r| r.0.cmp(&l.0));
    terms.into_iter().map(|t| t.1).collect::<Vec<_>>().join("+")
}

impl fmt::Display for Function {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let field = self.curve.field();
        let num = format_numerator(field, &self.a, &self.b);
        if self.c.is_constant() {
            return f.write_str(&num);
        }
        let nterms = self.a.coeffs().iter().chain(self.b.coeffs()).filter(|&&c| c != 0).count();
        let num = if nterms > 1 { format!("({num})") } else { num };
        write!(f, "{num}/({})", self.c.display(field, "x"))
    }
}

impl fmt::Debug for Function {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Fq;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn p1(q: u32) -> Curve {
        Curve::projective_line(Fq::new(q, 1).unwrap())
    }

    fn e5() -> Curve {
        Curve::elliptic(Fq::new(5, 1).unwrap(), [0, 0, 0, 1, 0]).unwrap()
    }

    fn poly(c: &Curve, v: &[i64]) -> FqPoly {
        let f = c.field();
        Poly::from_coeffs(f, v.iter().map(|&k| f.from_int(k)).collect())
    }

    fn place(c: &Curve, v: &[i64]) -> Place {
        c.place_from_poly(&poly(c, v)).unwrap()
    }

    #[test]
    fn p1_valuations() {
        let c = p1(3);
        let x = Function::x(&c);
        assert_eq!(x.valuation(&c.infinity()).unwrap(), -1);
        let g = Function::rational(&c, poly(&c, &[0, 0, 1]), poly(&c, &[-1, 1])).unwrap();
        assert_eq!(g.valuation(&place(&c, &[0, 1])).unwrap(), 2);
        assert_eq!(Function::zero(&c).valuation(&c.infinity()), Err(Error::ZeroFunction));
    }

    #[test]
    fn elliptic_valuations_at_infinity() {
        let c = e5();
        let inf = c.infinity();
        assert_eq!(Function::x(&c).valuation(&inf).unwrap(), -2);
        assert_eq!(Function::y(&c).unwrap().valuation(&inf).unwrap(), -3);
        // oracle: expansion in t = x/y
        let s = Function::x(&c).expand(&inf, 3).unwrap();
        assert_eq!(s.val, -2);
        let t = Function::x(&c).div(&Function::y(&c).unwrap()).unwrap().expand(&inf, 4).unwrap();
        assert_eq!(t.val, 1);
        let e = inf.residue_field();
        assert_eq!(t.coeffs, vec![e.one(), e.zero(), e.zero(), e.zero()]);
    }

    #[test]
    fn expansions() {
        let c = p1(5);
        let f = Function::rational(&c, poly(&c, &[1]), poly(&c, &[1, -1])).unwrap();
        let s = f.expand(&place(&c, &[0, 1]), 3).unwrap();
        let e = c.field().ext(1);
        assert_eq!((s.val, s.coeffs.clone()), (0, vec![e.one(), e.one(), e.one()]));
        let xs = Function::x(&c).expand(&c.infinity(), 1).unwrap();
        assert_eq!((xs.val, xs.coeffs), (-1, vec![e.one()]));
        // x at (0,0) on y^2 = x^3 + x, uniformizer y: x = y^2 + ...
        let ec = e5();
        let o = ec.rational_point(0, 0).unwrap();
        let xe = Function::x(&ec).expand(&o, 2).unwrap();
        assert_eq!((xe.val, xe.coeffs[0].clone()), (2, e.one()));
    }

    #[test]
    fn evaluation() {
        let c = p1(5);
        let f = Function::from_poly(&c, poly(&c, &[-1, 1]));
        assert_eq!(f.evaluate(&place(&c, &[-2, 1])).unwrap()[0], 1);
        let c3 = p1(3);
        let q = place(&c3, &[1, 0, 1]);
        let v = Function::x(&c3).evaluate(&q).unwrap();
        let e = q.residue_field();
        assert_eq!(e.mul(&v, &v), e.from_int(-1));
        let xi = Function::x(&c3).inv().unwrap();
        assert!(matches!(xi.evaluate(&place(&c3, &[0, 1])), Err(Error::PoleAtPlace(_))));
    }

    #[test]
    fn principal_divisors() {
        let c = p1(3);
        let f = Function::from_poly(&c, poly(&c, &[1, 0, -1]));
        assert_eq!(f.divisor().unwrap().to_string(), "[x+1]+[x+2]-2*[inf]");
        assert!(Function::one(&c).divisor().unwrap().is_zero());
        let ec = e5();
        assert_eq!(Function::x(&ec).divisor().unwrap().to_string(), "-2*[inf]+2*[(0,0)]");
    }

    #[test]
    fn degree_zero_law_and_ultrametric() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for c in [p1(3), p1(5), e5()] {
            let places = c.places(2);
            for _ in 0..300 {
                let f = Function::random(&c, 4, &mut rng);
                assert_eq!(f.divisor().unwrap().degree(), 0, "{f}");
            }
            for _ in 0..100 {
                let f = Function::random(&c, 3, &mut rng);
                let g = Function::random(&c, 3, &mut rng);
                let h = f.add(&g).unwrap();
                if h.is_zero() {
                    continue;
                }
                for p in &places {
                    let (vf, vg, vh) = (f.valuation(p).unwrap(), g.valuation(p).unwrap(), h.valuation(p).unwrap());
                    assert!(vh >= vf.min(vg));
                    if vf != vg {
                        assert_eq!(vh, vf.min(vg));
                    }
                    assert_eq!(f.mul(&g).unwrap().valuation(p).unwrap(), vf + vg);
                }
            }
        }
    }

    #[test]
    fn expansion_consistency() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for c in [p1(3), e5()] {
            for p in c.places(2) {
                for _ in 0..10 {
                    let f = Function::random(&c, 3, &mut rng);
                    let g = Function::random(&c, 3, &mut rng);
                    let (sf, sg) = (f.expand(&p, 6).unwrap(), g.expand(&p, 6).unwrap());
                    let fg = f.mul(&g).unwrap().expand(&p, 6).unwrap();
                    assert_eq!(sf.mul(&sg, p.residue_field()), fg, "{f} * {g} at {p}");
                }
            }
        }
    }

    #[test]
    fn inverse_and_display() {
        let c = e5();
        let y = Function::y(&c).unwrap();
        let f = y.add(&Function::x(&c)).unwrap();
        let one = f.mul(&f.inv().unwrap()).unwrap();
        assert_eq!(one, Function::one(&c));
        assert_eq!(f.to_string(), "y+x");
        let p = p1(3);
        let g = Function::rational(&p, poly(&p, &[1, 0, 1]), poly(&p, &[-1, 1])).unwrap();
        assert_eq!(g.to_string(), "(x^2+1)/(x+2)");
    }
}
