//! Curve models and their places.
//!
//! Two models are supported: the projective line and Weierstrass elliptic
//! curves `y^2 + a1*x*y + a3*y = x^3 + a2*x^2 + a4*x + a6`. A place of degree
//! `d` carries its residue field GF(q^d) and one canonical geometric point in
//! it (least in coefficient order over its Frobenius orbit).

use std::collections::BTreeMap;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::{Arc, Mutex};

use crate::error::{Error, Result};
use crate::field::{ExtElem, ExtField, Field, Fq};
use crate::poly::{irreducibles, FqPoly, Poly};
use crate::series::Laurent;

/// Which model a curve uses.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Model {
    ProjectiveLine,
    /// Coefficients `[a1, a2, a3, a4, a6]`.
    Elliptic([u32; 5]),
}

struct CurveInner {
    field: Fq,
    model: Model,
    interned: Mutex<BTreeMap<PlaceKey, Place>>,
    by_degree: Mutex<BTreeMap<usize, Vec<Place>>>,
    above: Mutex<BTreeMap<Vec<u32>, Vec<Place>>>,
}

/// A smooth projective curve of genus 0 or 1 over a finite field.
#[derive(Clone)]
pub struct Curve(Arc<CurveInner>);

impl PartialEq for Curve {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || (self.0.field == other.0.field && self.0.model == other.0.model)
    }
}

impl Eq for Curve {}

impl Hash for Curve {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.0.model.hash(state);
        self.0.field.q().hash(state);
    }
}

impl fmt::Debug for Curve {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Curve {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.0.model {
            Model::ProjectiveLine => write!(f, "P1 over {}", self.0.field),
            Model::Elliptic(a) => {
                let parts: Vec<String> = a.iter().map(|&c| self.0.field.format(c)).collect();
                write!(f, "elliptic({}) over {}", parts.join(","), self.0.field)
            }
        }
    }
}

impl Curve {
    fn from_model(field: Fq, model: Model) -> Curve {
        Curve(Arc::new(CurveInner {
            field,
            model,
            interned: Mutex::new(BTreeMap::new()),
            by_degree: Mutex::new(BTreeMap::new()),
            above: Mutex::new(BTreeMap::new()),
        }))
    }

    pub fn projective_line(field: Fq) -> Curve {
        Self::from_model(field, Model::ProjectiveLine)
    }

    /// Weierstrass curve with `a = [a1, a2, a3, a4, a6]`; rejects singular models.
    pub fn elliptic(field: Fq, a: [u32; 5]) -> Result<Curve> {
        if a.iter().any(|&c| c >= field.q()) {
            return Err(Error::InvalidField(format!("coefficient out of range for {field}")));
        }
        if field.is_zero(&discriminant(&field, &a)) {
            return Err(Error::SingularModel);
        }
        Ok(Self::from_model(field, Model::Elliptic(a)))
    }

    pub fn field(&self) -> &Fq {
        &self.0.field
    }

    pub fn model(&self) -> &Model {
        &self.0.model
    }

    pub fn genus(&self) -> i64 {
        match self.0.model {
            Model::ProjectiveLine => 0,
            Model::Elliptic(_) => 1,
        }
    }

    pub fn is_elliptic(&self) -> bool {
        matches!(self.0.model, Model::Elliptic(_))
    }

    /// `[a1, a2, a3, a4, a6]`, all zero for the projective line.
    pub fn coefficients(&self) -> [u32; 5] {
        match self.0.model {
            Model::ProjectiveLine => [0; 5],
            Model::Elliptic(a) => a,
        }
    }

    /// a1*x + a3, the coefficient of y in the equation.
    pub fn s_poly(&self) -> FqPoly {
        let a = self.coefficients();
        Poly::from_coeffs(self.field(), vec![a[2], a[0]])
    }

    /// x^3 + a2*x^2 + a4*x + a6.
    pub fn r_poly(&self) -> FqPoly {
        let a = self.coefficients();
        Poly::from_coeffs(self.field(), vec![a[4], a[3], a[1], 1])
    }

    fn intern(&self, key: PlaceKey, build: impl FnOnce() -> PlaceInner) -> Place {
        let mut map = self.0.interned.lock().expect("place cache poisoned");
        map.entry(key).or_insert_with(|| Place(Arc::new(build()))).clone()
    }

    /// The place at infinity (the point O on an elliptic curve).
    pub fn infinity(&self) -> Place {
        let rank = if self.is_elliptic() { 0 } else { 1 };
        let key = PlaceKey { degree: 1, rank, data: Vec::new() };
        let ext = self.field().ext(1);
        let model = self.0.model.clone();
        self.intern(key.clone(), || PlaceInner {
            key,
            degree: 1,
            poly: Poly::zero(),
            point: (ext.zero(), ext.zero()),
            ram: if matches!(model, Model::Elliptic(_)) { 2 } else { 1 },
            uniformizer: if matches!(model, Model::Elliptic(_)) { Uniformizer::XOverY } else { Uniformizer::InverseX },
            ext,
            model,
            name: "[inf]".into(),
            local: Mutex::new(None),
        })
    }

    /// The finite place of P1 given by a monic irreducible polynomial.
    pub fn place_from_poly(&self, p: &FqPoly) -> Result<Place> {
        if self.is_elliptic() {
            return Err(Error::IllFormedDivisor("polynomial places exist only on P1".into()));
        }
        let field = self.field();
        if !p.is_monic(field) || !p.is_irreducible(field) {
            return Err(Error::IllFormedDivisor(format!(
                "{} is not monic irreducible",
                p.display(field, "x")
            )));
        }
        let d = p.degree().unwrap();
        let key = PlaceKey { degree: d, rank: 0, data: p.coeffs().to_vec() };
        Ok(self.intern(key.clone(), || {
            let ext = field.ext(d);
            let lifted = p.map(&ext, |&c| ext.embed(c));
            let alpha = lifted.roots(&ext).into_iter().next().expect("irreducible splits in its residue field");
            PlaceInner {
                key,
                degree: d,
                poly: p.clone(),
                point: (alpha, ext.zero()),
                ram: 1,
                uniformizer: Uniformizer::Poly,
                ext,
                model: Model::ProjectiveLine,
                name: format!("[{}]", p.display(field, "x")),
                local: Mutex::new(None),
            }
        }))
    }

    /// The place of an elliptic curve through `(x0, y0)`, whose Frobenius orbit
    /// must have size exactly `ext.degree()`.
    pub fn place_from_point(&self, ext: &Arc<ExtField>, x0: &ExtElem, y0: &ExtElem) -> Result<Place> {
        let Model::Elliptic(_) = self.0.model else {
            return Err(Error::IllFormedDivisor("point places exist only on elliptic curves".into()));
        };
        let field = self.field();
        if !self.on_curve(ext, x0, y0) {
            return Err(Error::IllFormedDivisor(format!(
                "({},{}) is not on {self}",
                ext.format(x0),
                ext.format(y0)
            )));
        }
        let mut orbit = vec![(x0.clone(), y0.clone())];
        loop {
            let (px, py) = orbit.last().unwrap();
            let next = (ext.frobenius(px), ext.frobenius(py));
            if next == orbit[0] {
                break;
            }
            orbit.push(next);
        }
        let d = ext.degree();
        if orbit.len() != d {
            return Err(Error::IllFormedDivisor(format!(
                "point has degree {} but was given in GF(q^{d})",
                orbit.len()
            )));
        }
        let (cx, cy) = orbit.iter().min().unwrap().clone();
        let mut data: Vec<u32> = cx.to_vec();
        data.extend(cy.iter().copied());
        let key = PlaceKey { degree: d, rank: 1, data };
        Ok(self.intern(key.clone(), || {
            // minimal polynomial of x0 over the base field
            let mut xs: Vec<ExtElem> = orbit.iter().map(|p| p.0.clone()).collect();
            xs.sort();
            xs.dedup();
            let mut mp = Poly::one(ext);
            for x in &xs {
                mp = mp.mul(&Poly::linear(ext, x), ext);
            }
            let poly = Poly::from_coeffs(
                field,
                mp.coeffs().iter().map(|c| ext.in_base(c).expect("minimal polynomial is rational")).collect(),
            );
            let fy = self.partial_y(ext, &cx, &cy);
            let two_torsion = ext.is_zero(&fy);
            let name = if d == 1 {
                format!("[({},{})]", field.format(cx[0]), field.format(cy[0]))
            } else {
                format!("[({},{})]", ext.format(&cx), ext.format(&cy))
            };
            PlaceInner {
                key,
                degree: d,
                poly,
                point: (cx, cy),
                ram: if two_torsion { 2 } else { 1 },
                uniformizer: if two_torsion { Uniformizer::YMinusY0 } else { Uniformizer::XMinusX0 },
                ext: ext.clone(),
                model: self.0.model.clone(),
                name,
                local: Mutex::new(None),
            }
        }))
    }

    /// Degree-1 point `(x0, y0)` with coordinates in the base field.
    pub fn rational_point(&self, x0: u32, y0: u32) -> Result<Place> {
        let ext = self.field().ext(1);
        self.place_from_point(&ext, &ext.embed(x0), &ext.embed(y0))
    }

    fn on_curve(&self, ext: &Arc<ExtField>, x: &ExtElem, y: &ExtElem) -> bool {
        ext.is_zero(&self.equation(ext, x, y))
    }

    /// F(x, y) = y^2 + a1 x y + a3 y - x^3 - a2 x^2 - a4 x - a6.
    fn equation(&self, ext: &Arc<ExtField>, x: &ExtElem, y: &ExtElem) -> ExtElem {
        let s = self.s_poly().map(ext, |&c| ext.embed(c)).eval(x, ext);
        let r = self.r_poly().map(ext, |&c| ext.embed(c)).eval(x, ext);
        let lhs = ext.mul(y, &ext.add(y, &s));
        ext.sub(&lhs, &r)
    }

    fn partial_y(&self, ext: &Arc<ExtField>, x: &ExtElem, y: &ExtElem) -> ExtElem {
        let s = self.s_poly().map(ext, |&c| ext.embed(c)).eval(x, ext);
        ext.add(&ext.add(y, y), &s)
    }

    /// Finite places lying over the zeros of an irreducible `m(x)`, in canonical order.
    pub fn places_above(&self, m: &FqPoly) -> Vec<Place> {
        let field = self.field();
        let m = m.monic(field);
        let key = m.coeffs().to_vec();
        if let Some(v) = self.0.above.lock().expect("place cache poisoned").get(&key) {
            return v.clone();
        }
        let out = self.compute_places_above(&m);
        self.0.above.lock().expect("place cache poisoned").insert(key, out.clone());
        out
    }

    fn compute_places_above(&self, m: &FqPoly) -> Vec<Place> {
        let field = self.field();
        if !self.is_elliptic() {
            return self.place_from_poly(m).into_iter().collect();
        }
        let e = m.degree().expect("nonzero polynomial");
        let ext = field.ext(e);
        let x0 = m.map(&ext, |&c| ext.embed(c)).roots(&ext).into_iter().next().expect("irreducible splits");
        let ys = self.fibre(&ext, &x0);
        let mut out: Vec<Place> = if ys.is_empty() {
            let ext2 = field.ext(2 * e);
            let x0 = m.map(&ext2, |&c| ext2.embed(c)).roots(&ext2).into_iter().next().unwrap();
            let ys = self.fibre(&ext2, &x0);
            vec![self.place_from_point(&ext2, &x0, &ys[0]).expect("point lies on the curve")]
        } else {
            ys.iter()
                .map(|y| self.place_from_point(&ext, &x0, y).expect("point lies on the curve"))
                .collect()
        };
        out.sort();
        out.dedup();
        out
    }

    /// Roots y of y^2 + s(x0) y - r(x0) in `ext`.
    fn fibre(&self, ext: &Arc<ExtField>, x0: &ExtElem) -> Vec<ExtElem> {
        let s = self.s_poly().map(ext, |&c| ext.embed(c)).eval(x0, ext);
        let r = self.r_poly().map(ext, |&c| ext.embed(c)).eval(x0, ext);
        let quad = Poly::from_coeffs(ext, vec![ext.neg(&r), s, ext.one()]);
        quad.roots(ext)
    }

    /// All places of exactly degree `d`, in canonical order.
    pub fn places_of_degree(&self, d: usize) -> Vec<Place> {
        assert!(d >= 1, "place degree must be positive");
        if let Some(v) = self.0.by_degree.lock().expect("place cache poisoned").get(&d) {
            return v.clone();
        }
        let field = self.field();
        let mut out = Vec::new();
        if d == 1 {
            out.push(self.infinity());
        }
        for m in irreducibles(field, d) {
            out.extend(self.places_above(&m).into_iter().filter(|p| p.degree() == d));
        }
        if self.is_elliptic() && d.is_multiple_of(2) {
            for m in irreducibles(field, d / 2) {
                out.extend(self.places_above(&m).into_iter().filter(|p| p.degree() == d));
            }
        }
        out.sort();
        out.dedup();
        self.0.by_degree.lock().expect("place cache poisoned").insert(d, out.clone());
        out
    }

    /// All places of degree at most `d_max`, in canonical order.
    pub fn places(&self, d_max: usize) -> Vec<Place> {
        (1..=d_max).flat_map(|d| self.places_of_degree(d)).collect()
    }

    /// Number of degree-1 places, i.e. #X(F_q).
    pub fn rational_point_count(&self) -> usize {
        self.places_of_degree(1).len()
    }
}

/// Discriminant of a Weierstrass model.
fn discriminant(f: &Fq, a: &[u32; 5]) -> u32 {
    let [a1, a2, a3, a4, a6] = *a;
    let k = |n: i64| f.from_int(n);
    let m = |x: u32, y: u32| f.mul(&x, &y);
    let ad = |x: u32, y: u32| f.add(&x, &y);
    let b2 = ad(m(a1, a1), m(k(4), a2));
    let b4 = ad(m(k(2), a4), m(a1, a3));
    let b6 = ad(m(a3, a3), m(k(4), a6));
    let b8 = f.sub(
        &ad(ad(m(m(a1, a1), a6), m(m(k(4), a2), a6)), m(m(a2, a3), a3)),
        &ad(m(m(a1, a3), a4), m(a4, a4)),
    );
    let t1 = f.neg(&m(m(b2, b2), b8));
    let t2 = f.neg(&m(k(8), m(m(b4, b4), b4)));
    let t3 = f.neg(&m(k(27), m(b6, b6)));
    let t4 = m(k(9), m(m(b2, b4), b6));
    ad(ad(t1, t2), ad(t3, t4))
}

/// Canonical sort key of a place: degree, then kind, then coordinates.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PlaceKey {
    pub degree: usize,
    pub rank: u8,
    pub data: Vec<u32>,
}

/// The uniformizer used for local expansions at a place.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Uniformizer {
    /// p(x) at a finite place of P1.
    Poly,
    /// 1/x at infinity on P1.
    InverseX,
    /// x - x0 at a finite elliptic point with non-vertical tangent.
    XMinusX0,
    /// y - y0 at a point where the tangent is vertical.
    YMinusY0,
    /// x/y at the origin of an elliptic curve.
    XOverY,
}

struct LocalParam {
    len: usize,
    x: Laurent,
    y: Laurent,
}

struct PlaceInner {
    key: PlaceKey,
    degree: usize,
    /// P1: the defining polynomial; elliptic: the minimal polynomial of x(P).
    poly: FqPoly,
    point: (ExtElem, ExtElem),
    /// v_P of poly(x) at finite places, -v_P(x) at infinity.
    ram: u32,
    uniformizer: Uniformizer,
    ext: Arc<ExtField>,
    model: Model,
    name: String,
    local: Mutex<Option<LocalParam>>,
}

/// A closed point of a curve.
#[derive(Clone)]
pub struct Place(Arc<PlaceInner>);

impl PartialEq for Place {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || self.0.key == other.0.key
    }
}

impl Eq for Place {}

impl PartialOrd for Place {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Place {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.0.key.cmp(&other.0.key)
    }
}

impl Hash for Place {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.0.key.hash(state)
    }
}

impl fmt::Debug for Place {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0.name)
    }
}

impl fmt::Display for Place {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0.name)
    }
}

impl Place {
    pub fn key(&self) -> &PlaceKey {
        &self.0.key
    }

    pub fn degree(&self) -> usize {
        self.0.degree
    }

    pub fn is_infinite(&self) -> bool {
        self.0.poly.is_zero()
    }

    /// P1: the monic irreducible defining the place; elliptic: minimal
    /// polynomial of x(P); zero at infinity.
    pub fn poly(&self) -> &FqPoly {
        &self.0.poly
    }

    /// Residue field GF(q^deg).
    pub fn residue_field(&self) -> &Arc<ExtField> {
        &self.0.ext
    }

    /// Canonical geometric point: (alpha, 0) on P1, (x0, y0) on elliptic curves.
    pub fn point(&self) -> &(ExtElem, ExtElem) {
        &self.0.point
    }

    /// v_P(poly(x)) for finite places, -v_P(x) at infinity.
    pub fn ramification(&self) -> u32 {
        self.0.ram
    }

    pub fn uniformizer(&self) -> Uniformizer {
        self.0.uniformizer
    }

    pub fn name(&self) -> &str {
        &self.0.name
    }

    /// Expansions of x and y in the uniformizer, at relative precision >= `len`.
    pub fn local_xy(&self, len: usize) -> (Laurent, Laurent) {
        let mut guard = self.0.local.lock().expect("local parameter cache poisoned");
        if let Some(lp) = guard.as_ref() {
            if lp.len >= len {
                return (lp.x.clone().truncate(len), lp.y.clone().truncate(len));
            }
        }
        let want = len.max(guard.as_ref().map_or(0, |lp| 2 * lp.len)).max(8);
        let (x, y) = self.compute_local(want);
        *guard = Some(LocalParam { len: want, x: x.clone(), y: y.clone() });
        (x.truncate(len), y.truncate(len))
    }

    fn compute_local(&self, len: usize) -> (Laurent, Laurent) {
        let e = &self.0.ext;
        let inner = &*self.0;
        let zero_series = Laurent { val: 0, coeffs: vec![e.zero(); len] };
        let t = || Laurent::monomial(e, e.one(), 1, len);
        match inner.uniformizer {
            Uniformizer::InverseX => (Laurent::monomial(e, e.one(), -1, len), zero_series),
            Uniformizer::Poly => {
                // Newton iteration for s with p(alpha + s) = t
                let p = inner.poly.coeffs();
                let dp = inner.poly.derivative(e.base());
                let alpha = &inner.point.0;
                let mut s = Laurent { val: 0, coeffs: vec![e.zero(); len] };
                for _ in 0..=len {
                    let x = s.clone().add_constant(alpha, e);
                    let g = x.eval_poly(p, e).sub(&t(), e);
                    let dg = x.eval_poly(dp.coeffs(), e);
                    let next = s.sub(&g.div(&dg, e).expect("separable polynomial").truncate_abs(len as i64), e);
                    let next = pad(next, len, e);
                    if next == s {
                        break;
                    }
                    s = next;
                }
                (s.add_constant(alpha, e), zero_series)
            }
            Uniformizer::XMinusX0 => {
                let (x0, y0) = &inner.point;
                let x = t().add_constant(x0, e);
                let x = pad(x, len, e);
                let mut y = Laurent::constant(e, y0.clone(), len);
                for _ in 0..=len {
                    let (f, fy) = self.equation_series(&x, &y);
                    let next = pad(y.sub(&f.div(&fy, e).expect("smooth point").truncate_abs(len as i64), e), len, e);
                    if next == y {
                        break;
                    }
                    y = next;
                }
                (x, y)
            }
            Uniformizer::YMinusY0 => {
                let (x0, y0) = &inner.point;
                let y = pad(t().add_constant(y0, e), len, e);
                let mut x = Laurent::constant(e, x0.clone(), len);
                for _ in 0..=len {
                    let (f, _) = self.equation_series(&x, &y);
                    let fx = self.partial_x_series(&x, &y);
                    let next = pad(x.sub(&f.div(&fx, e).expect("smooth point").truncate_abs(len as i64), e), len, e);
                    if next == x {
                        break;
                    }
                    x = next;
                }
                (x, y)
            }
            Uniformizer::XOverY => {
                // w = -1/y as a series in z = -x/y = -t
                let Model::Elliptic([a1, a2, a3, a4, a6]) = inner.model else { unreachable!() };
                let c = |v: u32| e.embed(v);
                let n = len + 3;
                let z = Laurent::monomial(e, e.from_int(-1), 1, n + 3);
                let z2 = z.mul(&z, e);
                let z3 = z2.mul(&z, e);
                let one = Laurent::constant(e, e.one(), n + 6);
                let mut w = z3.clone();
                for _ in 0..=n {
                    let w2 = w.mul(&w, e);
                    let w3 = w2.mul(&w, e);
                    let g = w
                        .sub(&z3, e)
                        .sub(&z.mul(&w, e).scale(&c(a1), e), e)
                        .sub(&z2.mul(&w, e).scale(&c(a2), e), e)
                        .sub(&w2.scale(&c(a3), e), e)
                        .sub(&z.mul(&w2, e).scale(&c(a4), e), e)
                        .sub(&w3.scale(&c(a6), e), e);
                    let dg = one
                        .sub(&z.scale(&c(a1), e), e)
                        .sub(&z2.scale(&c(a2), e), e)
                        .sub(&w.scale(&e.mul(&e.from_int(2), &c(a3)), e), e)
                        .sub(&z.mul(&w, e).scale(&e.mul(&e.from_int(2), &c(a4)), e), e)
                        .sub(&w2.scale(&e.mul(&e.from_int(3), &c(a6)), e), e);
                    let next = w.sub(&g.div(&dg, e).unwrap(), e).truncate_abs(3 + n as i64).normalize(e);
                    if next == w {
                        break;
                    }
                    w = next;
                }
                let w = w.truncate(n);
                let winv = w.inv(e).unwrap();
                let x = z.truncate(n).mul(&winv, e);
                let y = winv.neg(e);
                (x.truncate(len), y.truncate(len))
            }
        }
    }

    fn equation_series(&self, x: &Laurent, y: &Laurent) -> (Laurent, Laurent) {
        let e = &self.0.ext;
        let Model::Elliptic([a1, a2, a3, a4, a6]) = self.0.model else { unreachable!() };
        let s = x.eval_poly(&[a3, a1], e);
        let r = x.eval_poly(&[a6, a4, a2, 1], e);
        let f = y.mul(&y.add(&s, e), e).sub(&r, e);
        let fy = y.add(y, e).add(&s, e);
        (f, fy)
    }

    fn partial_x_series(&self, x: &Laurent, y: &Laurent) -> Laurent {
        let e = &self.0.ext;
        let Model::Elliptic([a1, a2, _, a4, _]) = self.0.model else { unreachable!() };
        // a1*y - 3x^2 - 2*a2*x - a4
        let f = e.base();
        let dr = x.eval_poly(&[a4, f.add(&a2, &a2), f.from_int(3)], e);
        y.scale(&e.embed(a1), e).sub(&dr, e)
    }
}

/// Extend a series with zero coefficients to relative length `len` from val 0
/// (used when an exact polynomial expression is carried as a series).
fn pad(mut s: Laurent, len: usize, e: &Arc<ExtField>) -> Laurent {
    while s.coeffs.len() < len {
        s.coeffs.push(e.zero());
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    fn e5() -> Curve {
        Curve::elliptic(Fq::new(5, 1).unwrap(), [0, 0, 0, 1, 0]).unwrap()
    }

    #[test]
    fn p1_place_census() {
        let c = Curve::projective_line(Fq::new(3, 1).unwrap());
        let names: Vec<String> = c.places(1).iter().map(|p| p.to_string()).collect();
        assert_eq!(names, vec!["[x]", "[x+1]", "[x+2]", "[inf]"]);
        assert_eq!(c.places(2).len(), 7);
    }

    #[test]
    fn elliptic_rational_points() {
        let c = e5();
        let names: Vec<String> = c.places(1).iter().map(|p| p.to_string()).collect();
        assert_eq!(names, vec!["[inf]", "[(0,0)]", "[(2,0)]", "[(3,0)]"]);
        // #E(F25) = 32, so (32 - 4) / 2 places of degree 2
        assert_eq!(c.places_of_degree(2).len(), 14);
    }

    #[test]
    fn singular_models_rejected() {
        let f = Fq::new(5, 1).unwrap();
        assert_eq!(Curve::elliptic(f, [0, 0, 0, 0, 0]).err(), Some(Error::SingularModel));
    }

    #[test]
    fn local_parameters_satisfy_the_equation() {
        let c = e5();
        for p in c.places(2) {
            let (x, y) = p.local_xy(12);
            let e = p.residue_field();
            let lhs = y.mul(&y, e);
            let rhs = x.mul(&x, e).mul(&x, e).add(&x, e);
            let diff = lhs.sub(&rhs, e).normalize(e);
            assert!(diff.coeffs.is_empty(), "{p}: {diff:?}");
        }
    }
}
