//! Local symbols with values in GF(q)^* and GF(q).
//!
//! Off S the symbol is read off directly; at P in S it is computed from an
//! auxiliary function g_P that agrees with g to order n_P at P and with 1 to
//! order n_Q at the other points of S, so only places outside S contribute.
//! Values at a place of degree d are normed or traced from GF(q^d).

use std::sync::Arc;

use crate::curve::{Curve, Model, Place};
use crate::cycle::value_on_divisor;
use crate::divisor::{Divisor, Modulus};
use crate::error::{Error, Result};
use crate::field::{ExtElem, ExtField, Field, Fq};
use crate::function::Function;
use crate::linalg::FieldMatrix;
use crate::par::{self, Execution};
use crate::poly::{FqPoly, Poly};
use crate::riemann_roch::rr_space;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum SymbolKind {
    Multiplicative,
    Additive,
}

impl SymbolKind {
    pub fn identity(self) -> u32 {
        match self {
            SymbolKind::Multiplicative => 1,
            SymbolKind::Additive => 0,
        }
    }

    pub fn combine(self, field: &Fq, a: u32, b: u32) -> u32 {
        match self {
            SymbolKind::Multiplicative => field.mul(&a, &b),
            SymbolKind::Additive => field.add(&a, &b),
        }
    }

    /// k-fold combination of `a` with itself; negative k uses the inverse.
    pub fn power(self, field: &Fq, a: u32, k: i64) -> u32 {
        match self {
            SymbolKind::Multiplicative => {
                let base = if k < 0 { field.inv(&a).expect("unit value") } else { a };
                field.pow(&base, k.unsigned_abs() as u128)
            }
            SymbolKind::Additive => field.mul(&field.from_int(k), &a),
        }
    }

    /// Norm or trace from a residue field down to GF(q).
    pub fn descend(self, ext: &Arc<ExtField>, a: &ExtElem) -> u32 {
        match self {
            SymbolKind::Multiplicative => ext.norm(a),
            SymbolKind::Additive => ext.trace(a),
        }
    }
}

/// A map X - S -> G given by a function f, with a modulus supported on S.
#[derive(Clone, Debug)]
pub struct SymbolMap {
    kind: SymbolKind,
    f: Function,
    modulus: Modulus,
    support: Vec<Place>,
}

impl SymbolMap {
    /// `f` must be a unit off S (multiplicative) or regular off S (additive).
    pub fn new(kind: SymbolKind, f: Function, modulus: Modulus) -> Result<SymbolMap> {
        if f.curve() != modulus.curve() {
            return Err(Error::CurveMismatch);
        }
        if f.is_zero() {
            return Err(Error::ZeroFunction);
        }
        if kind == SymbolKind::Additive && f.curve().is_elliptic() && f.curve().field().p() == 2 {
            return Err(Error::UnsupportedCharacteristic("additive symbols on elliptic curves in characteristic 2".into()));
        }
        let support = modulus.support();
        let div = f.divisor()?;
        for (p, n) in div.terms() {
            let bad = match kind {
                SymbolKind::Multiplicative => n != 0,
                SymbolKind::Additive => n < 0,
            };
            if bad && !support.contains(p) {
                return Err(Error::InvalidArgument(format!("f is not regular at {p} outside the modulus")));
            }
        }
        Ok(SymbolMap { kind, f, modulus, support })
    }

    /// The smallest modulus for which the classical symbols vanish on 1 + m:
    /// the reduced support of (f) for G_m, and (pole order + 1) at each pole for G_a.
    pub fn with_standard_modulus(kind: SymbolKind, f: Function) -> Result<SymbolMap> {
        let curve = f.curve().clone();
        if f.is_zero() {
            return Err(Error::ZeroFunction);
        }
        let mut m = Divisor::zero(&curve);
        for (p, n) in f.divisor()?.terms() {
            match kind {
                SymbolKind::Multiplicative if n != 0 => m.add_at(p, 1),
                SymbolKind::Additive if n < 0 => m.add_at(p, 1 - n),
                _ => {}
            }
        }
        Self::new(kind, f, Modulus::new(m)?)
    }

    pub fn kind(&self) -> SymbolKind {
        self.kind
    }

    pub fn function(&self) -> &Function {
        &self.f
    }

    pub fn modulus(&self) -> &Modulus {
        &self.modulus
    }

    pub fn support(&self) -> &[Place] {
        &self.support
    }

    pub fn curve(&self) -> &Curve {
        self.f.curve()
    }

    fn field(&self) -> &Fq {
        self.f.curve().field()
    }

    /// f evaluated at the cycle k*Q, for Q outside S.
    pub fn value_at(&self, q: &Place, k: i64) -> Result<u32> {
        if k == 0 {
            return Ok(self.kind.identity());
        }
        let v = self.kind.descend(q.residue_field(), &self.f.evaluate(q)?);
        Ok(self.kind.power(self.field(), v, k))
    }
}

/// (-1)^(v(f)v(g)) f^v(g) / g^v(f) at P, in the residue field.
pub fn tame_symbol(f: &Function, g: &Function, p: &Place) -> Result<ExtElem> {
    tame_symbol_signed(f, g, p, false)
}

/// The tame symbol, optionally with the sign factor flipped. The flip exists so
/// the verification suites can prove they notice a wrong oracle.
pub fn tame_symbol_signed(f: &Function, g: &Function, p: &Place, flip_sign: bool) -> Result<ExtElem> {
    if f.is_zero() || g.is_zero() {
        return Err(Error::ZeroFunction);
    }
    let ext = p.residue_field();
    let sf = f.expand(p, 1)?;
    let sg = g.expand(p, 1)?;
    let (a, b) = (sf.val, sg.val);
    let num = pow_signed(ext, &sf.coeffs[0], b);
    let den = pow_signed(ext, &sg.coeffs[0], a);
    let mut out = ext.mul(&num, &ext.inv(&den).expect("unit"));
    if ((a * b) % 2 != 0) != flip_sign {
        out = ext.neg(&out);
    }
    Ok(out)
}

fn pow_signed(ext: &Arc<ExtField>, u: &ExtElem, k: i64) -> ExtElem {
    let base = if k < 0 { ext.inv(u).expect("unit") } else { u.clone() };
    ext.pow(&base, k.unsigned_abs() as u128)
}

/// Res_P(f dg/g) in the place's uniformizer.
pub fn residue_symbol(f: &Function, g: &Function, p: &Place) -> Result<ExtElem> {
    if g.is_zero() {
        return Err(Error::ZeroFunction);
    }
    let curve = f.curve();
    if curve.is_elliptic() && curve.field().p() == 2 {
        return Err(Error::UnsupportedCharacteristic("residues on elliptic curves in characteristic 2".into()));
    }
    let ext = p.residue_field();
    if f.is_zero() {
        return Ok(ext.zero());
    }
    let a = f.valuation(p)?;
    let len = (1 - a).max(1) as usize + 1;
    let sf = f.expand(p, len)?;
    let sg = g.expand(p, len + 1)?;
    let dlog = sg.derivative(ext).div(&sg, ext).expect("nonzero expansion");
    let w = sf.mul(&dlog, ext);
    Ok(w.coeff(ext, -1).expect("enough precision for the residue"))
}

/// The local symbol (f, g)_P of a symbol map.
pub fn local_symbol(sm: &SymbolMap, g: &Function, p: &Place) -> Result<u32> {
    if g.is_zero() {
        return Err(Error::ZeroFunction);
    }
    if g.curve() != sm.curve() {
        return Err(Error::CurveMismatch);
    }
    if !sm.support.contains(p) {
        return sm.value_at(p, g.valuation(p)?);
    }
    let mut aux = auxiliary_places(sm);
    let first = aux.next().ok_or_else(|| Error::NoAuxiliaryFunction(p.to_string()))?;
    let value = symbol_via(sm, g, p, &first)?;
    if cfg!(debug_assertions) {
        if let Some(second) = aux.next() {
            debug_assert_eq!(symbol_via(sm, g, p, &second)?, value, "symbol depends on the auxiliary function");
        }
    }
    Ok(value)
}

/// Places outside S for auxiliary poles, lowest degree first.
fn auxiliary_places(sm: &SymbolMap) -> impl Iterator<Item = Place> + '_ {
    (1..=4usize).flat_map(move |d| {
        sm.curve().places_of_degree(d).into_iter().filter(|b| !sm.support.contains(b))
    })
}

fn symbol_via(sm: &SymbolMap, g: &Function, p: &Place, b: &Place) -> Result<u32> {
    let gp = auxiliary_function(sm, g, p, b)?;
    let v = value_on_divisor(sm.kind, &sm.f, &gp, &sm.support)?;
    Ok(sm.kind.power(sm.field(), v, -1))
}

/// A function g_P with poles only at B (and P), g/g_P == 1 mod n_P at P and
/// g_P == 1 mod n_Q at every other Q in S.
pub fn auxiliary_function(sm: &SymbolMap, g: &Function, p: &Place, b: &Place) -> Result<Function> {
    let curve = sm.curve();
    let field = curve.field();
    let v = g.valuation(p)?;
    let deg_m = sm.modulus.degree();
    let (dp, db) = (p.degree() as i64, b.degree() as i64);
    let base = ((v * dp).max(0) + db - 1) / db;
    let np = sm.modulus.n(p);
    let target = g.expand(p, np as usize)?;
    for n in (base + deg_m + 2)..=(base + deg_m + 10) {
        let d = Divisor::from_terms(curve, [(b, n), (p, -v)]);
        let space = rr_space(curve, &d)?;
        if space.basis.is_empty() {
            continue;
        }
        let cols = space.basis.len();
        let mut mat = FieldMatrix::zeros(field, 0, cols);
        let mut rhs = Vec::new();
        // agreement with g at P
        let ext = p.residue_field();
        let mut columns = Vec::with_capacity(cols);
        for phi in &space.basis {
            columns.push(coefficients(phi, p, v, v + np)?);
        }
        for k in 0..np as usize {
            let want = &target.coeffs[k];
            for coord in 0..ext.degree() {
                mat.push_row(columns.iter().map(|c| c[k][coord]).collect());
                rhs.push(want[coord]);
            }
        }
        // congruent to 1 at the rest of S
        for (q, nq) in sm.modulus.terms() {
            if q == p {
                continue;
            }
            let ext = q.residue_field();
            let mut columns = Vec::with_capacity(cols);
            for phi in &space.basis {
                columns.push(coefficients(phi, q, 0, nq)?);
            }
            for k in 0..nq as usize {
                for coord in 0..ext.degree() {
                    mat.push_row(columns.iter().map(|c| c[k][coord]).collect());
                    rhs.push(if k == 0 && coord == 0 { 1 } else { 0 });
                }
            }
        }
        if let Some(sol) = mat.solve(&rhs, field) {
            let mut gp = Function::zero(curve);
            for (c, phi) in sol.iter().zip(&space.basis) {
                if *c != 0 {
                    gp = gp.add(&phi.scale(*c))?;
                }
            }
            return Ok(gp);
        }
    }
    Err(Error::NoAuxiliaryFunction(p.to_string()))
}

/// Coefficients of t^lo .. t^hi of phi at P, for phi with v_P(phi) >= lo.
fn coefficients(phi: &Function, p: &Place, lo: i64, hi: i64) -> Result<Vec<ExtElem>> {
    let ext = p.residue_field();
    let width = (hi - lo).max(0) as usize;
    let val = phi.valuation(p)?;
    debug_assert!(val >= lo);
    if val >= hi {
        return Ok(vec![ext.zero(); width]);
    }
    let s = phi.expand(p, (hi - val) as usize)?;
    Ok((lo..hi).map(|k| s.coeff(ext, k).expect("expansion precision")).collect())
}

/// Symbols at every place of supp((g)) and S, with the combined total.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReciprocityReport {
    pub values: Vec<(Place, u32)>,
    pub total: u32,
}

pub fn reciprocity_report(sm: &SymbolMap, g: &Function, exec: Execution) -> Result<ReciprocityReport> {
    if g.is_zero() {
        return Err(Error::ZeroFunction);
    }
    let mut places = g.divisor()?.support();
    places.extend(sm.support.iter().cloned());
    places.sort();
    places.dedup();
    let values = par::map(exec, &places, |p| local_symbol(sm, g, p));
    let mut out = Vec::with_capacity(places.len());
    let mut total = sm.kind.identity();
    for (p, v) in places.into_iter().zip(values) {
        let v = v?;
        total = sm.kind.combine(sm.field(), total, v);
        out.push((p, v));
    }
    Ok(ReciprocityReport { values: out, total })
}

/// The fibre of c : X -> P1 over a downstairs place, with ramification indices.
pub fn fibre(c: &Function, down: &Place) -> Result<Vec<(Place, i64)>> {
    if c.as_constant().is_some() {
        return Err(Error::InvalidArgument("a covering needs a non-constant function".into()));
    }
    let d = if down.is_infinite() {
        c.divisor()?.neg()
    } else {
        let one = Poly::one(c.curve().field());
        c.compose(down.poly(), &one)?.divisor()?
    };
    Ok(d.terms().filter(|(_, n)| *n > 0).map(|(p, n)| (p.clone(), n)).collect())
}

/// f(c^{-1}(P')) combined with ramification multiplicities.
pub fn trace_map(sm: &SymbolMap, c: &Function, down: &Place) -> Result<u32> {
    let mut acc = sm.kind.identity();
    for (p, e) in fibre(c, down)? {
        if sm.support.contains(&p) {
            return Err(Error::PointInExcludedSet(format!("{down} lies under {p}")));
        }
        acc = sm.kind.combine(sm.field(), acc, sm.value_at(&p, e)?);
    }
    Ok(acc)
}

/// The pushforward of f along a polynomial covering x -> c(x) of P1, as a
/// function on `down`: the norm (multiplicative) or trace (additive) of f
/// from k(x) to k(t) with t = c(x).
pub fn pushforward(sm: &SymbolMap, c: &FqPoly, down: &Curve) -> Result<Function> {
    let curve = sm.curve();
    if !matches!(curve.model(), Model::ProjectiveLine) || !matches!(down.model(), Model::ProjectiveLine) {
        return Err(Error::InvalidArgument("pushforward is implemented for coverings of P1 by P1".into()));
    }
    let field = curve.field();
    if c.deg() < 1 {
        return Err(Error::InvalidArgument("a covering needs a non-constant function".into()));
    }
    let f = sm.function();
    let ma = mult_matrix(field, c, f.a());
    let mc = mult_matrix(field, c, f.c());
    let det_c = det(field, &mc);
    match sm.kind {
        SymbolKind::Multiplicative => Function::rational(down, det(field, &ma), det_c),
        SymbolKind::Additive => {
            let adj = adjugate(field, &mc);
            let n = ma.len();
            let mut tr = Poly::zero();
            for i in 0..n {
                for k in 0..n {
                    tr = tr.add(&ma[i][k].mul(&adj[k][i], field), field);
                }
            }
            Function::rational(down, tr, det_c)
        }
    }
}

type PolyMatrix = Vec<Vec<FqPoly>>;

/// Matrix of multiplication by a(x) on k[t][x]/(c(x) - t), basis 1..x^(n-1).
fn mult_matrix(field: &Fq, c: &FqPoly, a: &FqPoly) -> PolyMatrix {
    let n = c.deg() as usize;
    let il = field.inv(c.lead().unwrap()).unwrap();
    // x^n == -sum_j red[j] x^j with red[j] polynomials in t
    let red: Vec<FqPoly> = (0..n)
        .map(|j| {
            let mut r = Poly::constant(field, field.mul(&c.coeff(field, j), &il));
            if j == 0 {
                r = r.sub(&Poly::monomial(field, il, 1), field);
            }
            r
        })
        .collect();
    let reduce = |mut v: Vec<FqPoly>| -> Vec<FqPoly> {
        while v.len() > n {
            let top = v.pop().unwrap();
            let base = v.len() - n;
            for (j, r) in red.iter().enumerate() {
                v[base + j] = v[base + j].sub(&top.mul(r, field), field);
            }
        }
        v.resize(n, Poly::zero());
        v
    };
    let mut col = reduce(a.coeffs().iter().map(|&k| Poly::constant(field, k)).collect());
    let mut cols = Vec::with_capacity(n);
    for _ in 0..n {
        cols.push(col.clone());
        let mut shifted = vec![Poly::zero()];
        shifted.extend(col);
        col = reduce(shifted);
    }
    // rows i, columns j: coefficient of x^i in x^j a
    (0..n).map(|i| (0..n).map(|j| cols[j][i].clone()).collect()).collect()
}

fn det(field: &Fq, m: &PolyMatrix) -> FqPoly {
    let n = m.len();
    if n == 0 {
        return Poly::one(field);
    }
    if n == 1 {
        return m[0][0].clone();
    }
    let mut acc = Poly::zero();
    for j in 0..n {
        if m[0][j].is_zero() {
            continue;
        }
        let term = m[0][j].mul(&det(field, &minor(m, 0, j)), field);
        acc = if j % 2 == 0 { acc.add(&term, field) } else { acc.sub(&term, field) };
    }
    acc
}

fn minor(m: &PolyMatrix, r: usize, c: usize) -> PolyMatrix {
    m.iter()
        .enumerate()
        .filter(|(i, _)| *i != r)
        .map(|(_, row)| row.iter().enumerate().filter(|(j, _)| *j != c).map(|(_, v)| v.clone()).collect())
        .collect()
}

fn adjugate(field: &Fq, m: &PolyMatrix) -> PolyMatrix {
    let n = m.len();
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    let d = det(field, &minor(m, j, i));
                    if (i + j) % 2 == 0 {
                        d
                    } else {
                        d.neg(field)
                    }
                })
                .collect()
        })
        .collect()
}

/// The modulus downstairs used for pushed-forward symbol maps:
/// n_{P'} = max over P above P' of ceil(n_P / e_P).
pub fn trace_modulus(sm: &SymbolMap, c: &Function, down: &Curve, places: &[Place]) -> Result<Modulus> {
    let mut m = Divisor::zero(down);
    for pd in places {
        let mut need = 0;
        for (p, e) in fibre(c, pd)? {
            let n = sm.modulus.n(&p);
            need = need.max((n + e - 1) / e);
        }
        if need > 0 {
            m.add_at(pd, need);
        }
    }
    Modulus::new(m)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p1(q: u32) -> Curve {
        Curve::projective_line(Fq::new(q, 1).unwrap())
    }

    fn pl(c: &Curve, v: &[i64]) -> Place {
        let f = c.field();
        c.place_from_poly(&Poly::from_coeffs(f, v.iter().map(|&k| f.from_int(k)).collect())).unwrap()
    }

    fn lin(c: &Curve, a0: i64, a1: i64) -> Function {
        let f = c.field();
        Function::from_poly(c, Poly::from_coeffs(f, vec![f.from_int(a0), f.from_int(a1)]))
    }

    #[test]
    fn oracles_on_small_examples() {
        let c = p1(5);
        let e = c.field().ext(1);
        let (x, inf) = (pl(&c, &[0, 1]), c.infinity());
        let fx = Function::x(&c);
        let g = lin(&c, 1, -1);
        assert_eq!(tame_symbol(&fx, &fx, &x).unwrap(), e.from_int(4));
        assert_eq!(tame_symbol(&fx, &g, &x).unwrap(), e.one());
        assert_eq!(tame_symbol(&fx, &g, &inf).unwrap(), e.one());
        assert_eq!(tame_symbol_signed(&fx, &fx, &x, true).unwrap(), e.one());
        let inv = fx.inv().unwrap();
        assert_eq!(residue_symbol(&inv, &fx, &x).unwrap(), e.zero());
        assert_eq!(residue_symbol(&inv, &g, &x).unwrap(), e.from_int(4));
        assert_eq!(residue_symbol(&inv, &g, &inf).unwrap(), e.zero());
    }

    #[test]
    fn worked_tables() {
        let c = p1(5);
        let (x, x1, inf) = (pl(&c, &[0, 1]), pl(&c, &[-1, 1]), c.infinity());
        let m = Modulus::new(Divisor::from_terms(&c, [(&x, 1), (&inf, 1)])).unwrap();
        let sm = SymbolMap::new(SymbolKind::Multiplicative, Function::x(&c), m).unwrap();
        let g = lin(&c, 1, -1);
        let rep = reciprocity_report(&sm, &g, Execution::Sequential).unwrap();
        let got: Vec<(String, u32)> = rep.values.iter().map(|(p, v)| (p.to_string(), *v)).collect();
        assert_eq!(got, vec![("[x]".into(), 1), ("[x+4]".into(), 1), ("[inf]".into(), 1)]);
        assert_eq!(rep.total, 1);
        assert_eq!(local_symbol(&sm, &lin(&c, -1, 1), &x1).unwrap(), 1);
        assert_eq!(local_symbol(&sm, &Function::x(&c), &x).unwrap(), 4);

        let add = SymbolMap::with_standard_modulus(SymbolKind::Additive, Function::x(&c).inv().unwrap()).unwrap();
        let rep = reciprocity_report(&add, &g, Execution::Parallel).unwrap();
        let got: Vec<u32> = rep.values.iter().map(|(_, v)| *v).collect();
        assert_eq!(got, vec![4, 1, 0]);
        assert_eq!(rep.total, 0);

        let k = Function::constant(&c, 3);
        let rep = reciprocity_report(&sm, &k, Execution::Sequential).unwrap();
        // a constant is trivial off S; on S it contributes 3^(-v_P(f)) and still multiplies to 1
        let got: Vec<u32> = rep.values.iter().map(|(_, v)| *v).collect();
        assert_eq!((got, rep.total), (vec![2, 3], 1));
    }

    #[test]
    fn congruent_to_one_is_trivial() {
        let c = p1(5);
        let x = pl(&c, &[0, 1]);
        // x has a pole at [inf], so [x] alone is not enough
        let only_x = Modulus::new(Divisor::place(&c, &x, 1)).unwrap();
        assert!(SymbolMap::new(SymbolKind::Multiplicative, Function::x(&c), only_x).is_err());
        let m = Modulus::new(Divisor::from_terms(&c, [(&x, 1), (&c.infinity(), 1)])).unwrap();
        let sm = SymbolMap::new(SymbolKind::Multiplicative, Function::x(&c).pow(2).unwrap(), m).unwrap();
        // 1 + x^2 + x^3 is 1 mod [x]
        let g = Function::from_poly(&c, Poly::from_coeffs(c.field(), vec![1, 0, 1, 1]));
        assert_eq!(local_symbol(&sm, &g, &x).unwrap(), 1);
    }

    #[test]
    fn trace_map_examples() {
        let c = p1(5);
        let down = p1(5);
        let sm = SymbolMap::new(
            SymbolKind::Multiplicative,
            Function::x(&c),
            Modulus::new(Divisor::from_terms(&c, [(&pl(&c, &[0, 1]), 1), (&c.infinity(), 1)])).unwrap(),
        )
        .unwrap();
        let sq = Function::x(&c).pow(2).unwrap();
        assert_eq!(trace_map(&sm, &sq, &pl(&down, &[-4, 1])).unwrap(), 1);
        assert_eq!(trace_map(&sm, &sq, &pl(&down, &[-1, 1])).unwrap(), 4);
        assert!(matches!(trace_map(&sm, &sq, &pl(&down, &[0, 1])), Err(Error::PointInExcludedSet(_))));
        assert_eq!(trace_map(&sm, &Function::x(&c), &pl(&down, &[-3, 1])).unwrap(), 3);
        let n = pushforward(&sm, &Poly::from_coeffs(c.field(), vec![0, 0, 1]), &down).unwrap();
        assert_eq!(n.to_string(), "4*x");
    }
}
