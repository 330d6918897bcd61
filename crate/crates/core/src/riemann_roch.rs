//! Riemann-Roch spaces L(D) and L_m(D), m-equivalence and effective classes.
//!
//! Both curve models use the same reduction. With h a polynomial in x that
//! vanishes to order at least D(P) at every finite P with D(P) > 0, the map
//! f -> f*h sends L(D) into L(N*inf), whose basis is {x^i} on P1 and
//! {x^i, x^i*y} on an elliptic curve. Membership then becomes linear
//! conditions on truncated expansions at finitely many places.

use std::collections::BTreeMap;

use crate::curve::{Curve, Place};
use crate::divisor::{Divisor, Modulus};
use crate::error::{Error, Result};
use crate::field::{ExtElem, Field, Fq};
use crate::function::Function;
use crate::linalg::FieldMatrix;
use crate::poly::{FqPoly, Poly};
use crate::series::Laurent;

/// Arithmetic genus data of the curve with modulus.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct GenusData {
    pub g: i64,
    pub deg_m: i64,
    pub pi: i64,
}

pub fn genus_data(curve: &Curve, m: &Modulus) -> GenusData {
    let g = curve.genus();
    let deg_m = m.degree();
    let pi = if deg_m >= 2 { g + deg_m - 1 } else { g };
    GenusData { g, deg_m, pi }
}

/// A monomial x^i (y = false) or x^i y (y = true).
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
struct Mono {
    i: usize,
    y: bool,
}

impl Mono {
    /// Pole order at infinity.
    fn weight(&self, elliptic: bool) -> i64 {
        if elliptic {
            2 * self.i as i64 + if self.y { 3 } else { 0 }
        } else {
            self.i as i64
        }
    }
}

/// A basis of L_m(D) (or L(D) when m = 0).
#[derive(Clone, Debug)]
pub struct RRSpace {
    pub divisor: Divisor,
    pub modulus: Modulus,
    pub genus: GenusData,
    /// Basis functions in canonical echelon order (lowest pole order first).
    pub basis: Vec<Function>,
    /// The shared constant c of each basis element (all zero when m = 0).
    pub constants: Vec<u32>,
}

impl RRSpace {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// i_m(D) from the singular Riemann-Roch identity.
    pub fn index(&self) -> i64 {
        self.dim() as i64 - self.divisor.degree() - 1 + self.genus.pi
    }
}

/// L(D).
pub fn rr_space(curve: &Curve, d: &Divisor) -> Result<RRSpace> {
    rr_space_mod(curve, d, &Modulus::zero(curve))
}

/// L_m(D) = { c + h : v_P(h) >= n_P on S, v_P(c + h) >= -D_P off S }.
pub fn rr_space_mod(curve: &Curve, d: &Divisor, m: &Modulus) -> Result<RRSpace> {
    if d.curve() != curve || m.curve() != curve {
        return Err(Error::CurveMismatch);
    }
    let s = m.support();
    if !d.is_prime_to(&s) {
        return Err(Error::NotPrimeToSupport(d.to_string()));
    }
    // deg(m) <= 1 gives L_m(D) = L(D); for one rational place the congruence is automatic
    let raw = solve(curve, d, m)?;
    let genus = genus_data(curve, m);
    Ok(RRSpace { divisor: d.clone(), modulus: m.clone(), genus, basis: raw.functions, constants: raw.constants })
}

struct RawSpace {
    functions: Vec<Function>,
    constants: Vec<u32>,
    /// Monomial coordinates of each basis numerator (over `monos`) over the denominator `h`.
    coords: Vec<Vec<u32>>,
    monos: Vec<Mono>,
    h: FqPoly,
}

fn solve(curve: &Curve, d: &Divisor, m: &Modulus) -> Result<RawSpace> {
    let field = curve.field();
    let elliptic = curve.is_elliptic();
    let inf = curve.infinity();
    // h and the zero orders it is built from
    let mut h = Poly::one(field);
    for (p, n) in d.terms() {
        if n > 0 && !p.is_infinite() {
            let e = p.ramification() as i64;
            let k = (n + e - 1) / e;
            h = h.mul(&p.poly().pow(k as u32, field), field);
        }
    }
    let e_inf = inf.ramification() as i64;
    let n_top = d.coeff(&inf) + e_inf * h.deg();
    let imax = if n_top < 0 { 0 } else { n_top as usize + 1 };
    let monos: Vec<Mono> = (0..imax)
        .flat_map(|i| [Mono { i, y: false }, Mono { i, y: true }])
        .filter(|mo| (elliptic || !mo.y) && mo.weight(elliptic) <= n_top)
        .collect();
    let with_c = !m.is_zero();
    let ncols = monos.len() + usize::from(with_c);

    // places carrying conditions: zeros of h, negative part of D, and S
    let mut conditions: BTreeMap<Place, (i64, i64, bool)> = BTreeMap::new();
    let hfac = if h.is_constant() { Vec::new() } else { h.factor(field)?.factors };
    for (g, k) in &hfac {
        for q in curve.places_above(g) {
            if m.n(&q) > 0 {
                continue;
            }
            let vh = q.ramification() as i64 * *k as i64;
            conditions.insert(q.clone(), (-vh, -d.coeff(&q), false));
        }
    }
    for (q, n) in d.terms() {
        if n < 0 && !q.is_infinite() && !conditions.contains_key(q) {
            conditions.insert(q.clone(), (0, -n, false));
        }
    }
    for (p, n) in m.terms() {
        let vh = if p.is_infinite() { 0 } else { p.ramification() as i64 * h.split_off(p.poly(), field).0 as i64 };
        conditions.insert(p.clone(), (-vh, n, true));
    }

    let mut mat = FieldMatrix::zeros(field, 0, ncols);
    for (q, &(kmin, kmax, in_s)) in &conditions {
        if kmin >= kmax {
            continue;
        }
        let ext = q.residue_field();
        let series = monomial_expansions(q, &monos, &h, kmax);
        for k in kmin..kmax {
            // one equation per coordinate of the residue field
            let coeffs: Vec<ExtElem> = series.iter().map(|s| s.coeff(ext, k).expect("expansion precision")).collect();
            for coord in 0..ext.degree() {
                let mut row: Vec<u32> = coeffs.iter().map(|c| c[coord]).collect();
                if with_c {
                    let cval = if in_s && k == 0 && coord == 0 { field.neg(&1) } else { 0 };
                    row.push(cval);
                }
                if row.iter().any(|&v| v != 0) {
                    mat.push_row(row);
                }
            }
        }
    }
    let kernel = mat.kernel(field);
    let (coords, constants) = canonical_basis(field, kernel, &monos, elliptic, with_c);
    let functions = coords
        .iter()
        .map(|v| numerator_function(curve, &monos, v, &h))
        .collect::<Result<Vec<_>>>()?;
    Ok(RawSpace { functions, constants, coords, monos, h })
}

/// Echelonize kernel vectors by descending monomial weight, then list lowest first.
fn canonical_basis(
    field: &Fq,
    kernel: Vec<Vec<u32>>,
    monos: &[Mono],
    elliptic: bool,
    with_c: bool,
) -> (Vec<Vec<u32>>, Vec<u32>) {
    if kernel.is_empty() {
        return (Vec::new(), Vec::new());
    }
    let mut order: Vec<usize> = (0..monos.len()).collect();
    order.sort_by(|&a, &b| monos[b].weight(elliptic).cmp(&monos[a].weight(elliptic)));
    let ncols = monos.len() + usize::from(with_c);
    let rows: Vec<Vec<u32>> = kernel
        .iter()
        .map(|v| {
            let mut r: Vec<u32> = order.iter().map(|&j| v[j]).collect();
            if with_c {
                r.push(v[monos.len()]);
            }
            r
        })
        .collect();
    let mut m = FieldMatrix::from_rows(field, ncols, rows);
    let rank = m.rref(field).len();
    let mut coords = Vec::with_capacity(rank);
    let mut constants = Vec::with_capacity(rank);
    for r in (0..rank).rev() {
        let row = m.row(r);
        let mut v = vec![0u32; monos.len()];
        for (pos, &j) in order.iter().enumerate() {
            v[j] = row[pos];
        }
        coords.push(v);
        constants.push(if with_c { row[monos.len()] } else { 0 });
    }
    (coords, constants)
}

fn numerator_function(curve: &Curve, monos: &[Mono], v: &[u32], h: &FqPoly) -> Result<Function> {
    let field = curve.field();
    let top = monos.iter().map(|m| m.i).max().unwrap_or(0) + 1;
    let mut a = vec![0u32; top];
    let mut b = vec![0u32; top];
    for (mo, &c) in monos.iter().zip(v) {
        if mo.y {
            b[mo.i] = c;
        } else {
            a[mo.i] = c;
        }
    }
    Function::new(curve, Poly::from_coeffs(field, a), Poly::from_coeffs(field, b), h.clone())
}

/// Expansions of mono/h at q, valid up to (excluding) t^kmax.
fn monomial_expansions(q: &Place, monos: &[Mono], h: &FqPoly, kmax: i64) -> Vec<Laurent> {
    let ext = q.residue_field();
    let vh = if q.is_infinite() {
        0
    } else {
        q.ramification() as i64 * h.split_off(q.poly(), ext.base()).0 as i64
    };
    let mut work = (kmax + 2 * vh).max(1) as usize + 1;
    loop {
        let (x, y) = q.local_xy(work);
        let hs = x.eval_poly(h.coeffs(), ext).normalize(ext);
        if let Some(hinv) = hs.inv(ext) {
            let imax = monos.iter().map(|m| m.i).max().unwrap_or(0);
            let mut powers = Vec::with_capacity(imax + 1);
            powers.push(Laurent::constant(ext, ext.one(), work));
            for i in 1..=imax {
                let next = powers[i - 1].mul(&x, ext);
                powers.push(next);
            }
            let out: Vec<Laurent> = monos
                .iter()
                .map(|mo| {
                    let base = if mo.y { powers[mo.i].mul(&y, ext) } else { powers[mo.i].clone() };
                    base.mul(&hinv, ext)
                })
                .collect();
            if out.iter().all(|s| s.precision() >= kmax) {
                return out;
            }
        }
        work *= 2;
    }
}

/// A function g with D' = D + (g) and g == 1 mod m, if D and D' are m-equivalent.
pub fn meq_witness(curve: &Curve, d: &Divisor, d2: &Divisor, m: &Modulus) -> Result<Option<Function>> {
    let s = m.support();
    for x in [d, d2] {
        if !x.is_prime_to(&s) {
            return Err(Error::NotPrimeToSupport(x.to_string()));
        }
    }
    if d.degree() != d2.degree() {
        return Ok(None);
    }
    let space = rr_space(curve, &d.sub(d2)?)?;
    if space.dim() != 1 {
        debug_assert!(space.dim() == 0);
        return Ok(None);
    }
    let g0 = &space.basis[0];
    let field = curve.field();
    let mut shared: Option<u32> = None;
    for (p, n) in m.terms() {
        let ext = p.residue_field();
        let s = g0.expand(p, n as usize)?;
        if s.val != 0 {
            return Ok(None);
        }
        let Some(c) = ext.in_base(&s.coeffs[0]) else {
            return Ok(None);
        };
        if s.coeffs[1..].iter().any(|k| !ext.is_zero(k)) || shared.is_some_and(|v| v != c) {
            return Ok(None);
        }
        shared = Some(c);
    }
    let c = shared.unwrap_or(1);
    Ok(Some(g0.scale(field.inv(&c).unwrap())))
}

/// All effective divisors m-equivalent to D, in canonical order.
pub fn effective_class(curve: &Curve, d: &Divisor, m: &Modulus) -> Result<Vec<Divisor>> {
    if !d.is_prime_to(&m.support()) {
        return Err(Error::NotPrimeToSupport(d.to_string()));
    }
    if d.degree() < 0 {
        return Ok(Vec::new());
    }
    let raw = solve(curve, d, m)?;
    let field = curve.field();
    let (base, free): (Vec<u32>, Vec<Vec<u32>>) = if m.is_zero() {
        // all of P(L(D)): vectors whose first nonzero coordinate is 1
        return projective_class(curve, d, &raw);
    } else {
        let Some(pivot) = raw.constants.iter().position(|&c| c != 0) else {
            return Ok(Vec::new());
        };
        let ci = field.inv(&raw.constants[pivot]).unwrap();
        let base: Vec<u32> = raw.coords[pivot].iter().map(|v| field.mul(v, &ci)).collect();
        let free = raw
            .coords
            .iter()
            .zip(&raw.constants)
            .enumerate()
            .filter(|(i, _)| *i != pivot)
            .map(|(_, (v, &c))| {
                v.iter().zip(&base).map(|(a, b)| field.sub(a, &field.mul(&c, b))).collect()
            })
            .collect();
        (base, free)
    };
    let mut out = Vec::new();
    for combo in Combos::new(field, free.len()) {
        let mut v = base.clone();
        for (coef, fv) in combo.iter().zip(&free) {
            if *coef != 0 {
                for (a, b) in v.iter_mut().zip(fv) {
                    *a = field.add(a, &field.mul(coef, b));
                }
            }
        }
        let g = numerator_function(curve, &raw.monos, &v, &raw.h)?;
        out.push(d.add(&g.divisor()?)?);
    }
    out.sort();
    Ok(out)
}

fn projective_class(curve: &Curve, d: &Divisor, raw: &RawSpace) -> Result<Vec<Divisor>> {
    let field = curve.field();
    let l = raw.coords.len();
    let mut out = Vec::new();
    for lead in 0..l {
        for combo in Combos::new(field, l - lead - 1) {
            let mut v = raw.coords[lead].clone();
            for (coef, fv) in combo.iter().zip(&raw.coords[lead + 1..]) {
                if *coef != 0 {
                    for (a, b) in v.iter_mut().zip(fv) {
                        *a = field.add(a, &field.mul(coef, b));
                    }
                }
            }
            let g = numerator_function(curve, &raw.monos, &v, &raw.h)?;
            out.push(d.add(&g.divisor()?)?);
        }
    }
    out.sort();
    Ok(out)
}

/// Every vector in GF(q)^n, in counting order.
struct Combos {
    q: u64,
    n: usize,
    next: u64,
    total: u64,
}

impl Combos {
    fn new(field: &Fq, n: usize) -> Combos {
        let q = field.q() as u64;
        Combos { q, n, next: 0, total: q.saturating_pow(n as u32) }
    }
}

impl Iterator for Combos {
    type Item = Vec<u32>;
    fn next(&mut self) -> Option<Vec<u32>> {
        if self.next >= self.total {
            return None;
        }
        let mut idx = self.next;
        self.next += 1;
        let mut v = vec![0u32; self.n];
        for slot in v.iter_mut() {
            *slot = (idx % self.q) as u32;
            idx /= self.q;
        }
        Some(v)
    }
}
