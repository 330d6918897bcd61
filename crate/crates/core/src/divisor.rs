//! Divisors, moduli, congruences and enumeration of effective divisors.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use crate::curve::{Curve, Place};
use crate::error::{Error, Result};
use crate::function::Function;

/// A formal sum of places with nonzero integer coefficients.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Divisor {
    curve: Curve,
    coeffs: BTreeMap<Place, i64>,
}

impl Divisor {
    pub fn zero(curve: &Curve) -> Divisor {
        Divisor { curve: curve.clone(), coeffs: BTreeMap::new() }
    }

    pub fn place(curve: &Curve, p: &Place, n: i64) -> Divisor {
        let mut d = Self::zero(curve);
        d.add_at(p, n);
        d
    }

    pub fn from_terms<'a>(curve: &Curve, terms: impl IntoIterator<Item = (&'a Place, i64)>) -> Divisor {
        let mut d = Self::zero(curve);
        for (p, n) in terms {
            d.add_at(p, n);
        }
        d
    }

    /// Add `n` to the coefficient at `p` in place.
    pub fn add_at(&mut self, p: &Place, n: i64) {
        if n == 0 {
            return;
        }
        let e = self.coeffs.entry(p.clone()).or_insert(0);
        *e += n;
        if *e == 0 {
            self.coeffs.remove(p);
        }
    }

    pub fn curve(&self) -> &Curve {
        &self.curve
    }

    fn same_curve(&self, other: &Divisor) -> Result<()> {
        if self.curve == other.curve {
            Ok(())
        } else {
            Err(Error::CurveMismatch)
        }
    }

    pub fn add(&self, other: &Divisor) -> Result<Divisor> {
        self.same_curve(other)?;
        let mut out = self.clone();
        for (p, &n) in &other.coeffs {
            out.add_at(p, n);
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Divisor) -> Result<Divisor> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Divisor {
        self.scale(-1)
    }

    pub fn scale(&self, k: i64) -> Divisor {
        let coeffs = if k == 0 {
            BTreeMap::new()
        } else {
            self.coeffs.iter().map(|(p, &n)| (p.clone(), n * k)).collect()
        };
        Divisor { curve: self.curve.clone(), coeffs }
    }

    pub fn degree(&self) -> i64 {
        self.coeffs.iter().map(|(p, &n)| n * p.degree() as i64).sum()
    }

    pub fn coeff(&self, p: &Place) -> i64 {
        self.coeffs.get(p).copied().unwrap_or(0)
    }

    pub fn support(&self) -> Vec<Place> {
        self.coeffs.keys().cloned().collect()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Place, i64)> {
        self.coeffs.iter().map(|(p, &n)| (p, n))
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_effective(&self) -> bool {
        self.coeffs.values().all(|&n| n > 0)
    }

    pub fn is_prime_to(&self, s: &[Place]) -> bool {
        s.iter().all(|p| !self.coeffs.contains_key(p))
    }

    pub fn positive_part(&self) -> Divisor {
        let coeffs = self.coeffs.iter().filter(|(_, &n)| n > 0).map(|(p, &n)| (p.clone(), n)).collect();
        Divisor { curve: self.curve.clone(), coeffs }
    }

    pub fn negative_part(&self) -> Divisor {
        self.neg().positive_part()
    }

    /// Pointwise comparison `self <= other`.
    pub fn leq(&self, other: &Divisor) -> bool {
        other.sub(self).map(|d| d.is_effective()).unwrap_or(false)
    }
}

/// Lexicographic order on coefficient vectors indexed by the canonical place order.
impl Ord for Divisor {
    fn cmp(&self, other: &Self) -> Ordering {
        let mut a = self.coeffs.iter().peekable();
        let mut b = other.coeffs.iter().peekable();
        loop {
            match (a.peek(), b.peek()) {
                (None, None) => return Ordering::Equal,
                (Some((_, &n)), None) => return n.cmp(&0),
                (None, Some((_, &m))) => return 0.cmp(&m),
                (Some((p, &n)), Some((q, &m))) => match p.cmp(q) {
                    Ordering::Less => return n.cmp(&0),
                    Ordering::Greater => return 0.cmp(&m),
                    Ordering::Equal => {
                        if n != m {
                            return n.cmp(&m);
                        }
                        a.next();
                        b.next();
                    }
                },
            }
        }
    }
}

impl PartialOrd for Divisor {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Divisor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return f.write_str("0");
        }
        for (i, (p, &n)) in self.coeffs.iter().enumerate() {
            let sign = if n < 0 { "-" } else if i > 0 { "+" } else { "" };
            let m = n.abs();
            if m == 1 {
                write!(f, "{sign}{p}")?;
            } else {
                write!(f, "{sign}{m}*{p}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Divisor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// An effective divisor whose support is the excluded set S.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Modulus(Divisor);

impl Modulus {
    pub fn new(d: Divisor) -> Result<Modulus> {
        if let Some((p, n)) = d.terms().find(|(_, n)| *n < 1) {
            return Err(Error::IllFormedDivisor(format!("modulus coefficient {n} at {p} must be >= 1")));
        }
        Ok(Modulus(d))
    }

    pub fn zero(curve: &Curve) -> Modulus {
        Modulus(Divisor::zero(curve))
    }

    pub fn divisor(&self) -> &Divisor {
        &self.0
    }

    pub fn curve(&self) -> &Curve {
        self.0.curve()
    }

    pub fn support(&self) -> Vec<Place> {
        self.0.support()
    }

    pub fn degree(&self) -> i64 {
        self.0.degree()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn n(&self, p: &Place) -> i64 {
        self.0.coeff(p)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Place, i64)> {
        self.0.terms()
    }

    pub fn leq(&self, other: &Modulus) -> bool {
        self.0.leq(&other.0)
    }

    /// Pointwise minimum and maximum.
    pub fn lattice(&self, other: &Modulus) -> Result<(Modulus, Modulus)> {
        self.0.same_curve(&other.0)?;
        let mut inf = Divisor::zero(self.curve());
        let mut sup = Divisor::zero(self.curve());
        let mut places = self.support();
        places.extend(other.support());
        places.sort();
        places.dedup();
        for p in &places {
            let (a, b) = (self.n(p), other.n(p));
            inf.add_at(p, a.min(b));
            sup.add_at(p, a.max(b));
        }
        Ok((Modulus(inf), Modulus(sup)))
    }

    /// All moduli m' <= self, in canonical order.
    pub fn submoduli(&self) -> Vec<Modulus> {
        let terms: Vec<(Place, i64)> = self.terms().map(|(p, n)| (p.clone(), n)).collect();
        let mut out = vec![Divisor::zero(self.curve())];
        for (p, n) in &terms {
            let mut next = Vec::new();
            for d in &out {
                for k in 0..=*n {
                    let mut e = d.clone();
                    e.add_at(p, k);
                    next.push(e);
                }
            }
            out = next;
        }
        let mut mods: Vec<Modulus> = out.into_iter().map(Modulus).collect();
        mods.sort();
        mods
    }
}

impl fmt::Display for Modulus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl fmt::Debug for Modulus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// `phi == a mod m`: v_P(a - phi) >= n_P at every P in the support.
pub fn congruent_mod(phi: &Function, m: &Modulus, a: u32) -> Result<bool> {
    let diff = Function::constant(phi.curve(), a).sub(phi)?;
    if diff.is_zero() {
        return Ok(true);
    }
    for (p, n) in m.terms() {
        if diff.valuation(p)? < n {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Every effective divisor of degree `d` avoiding `avoid`, in canonical order.
pub fn enumerate_effective(curve: &Curve, d: i64, avoid: &[Place]) -> Vec<Divisor> {
    if d < 0 {
        return Vec::new();
    }
    let places: Vec<Place> = curve
        .places(d.max(1) as usize)
        .into_iter()
        .filter(|p| !avoid.contains(p))
        .collect();
    let mut out = Vec::new();
    let mut cur = Divisor::zero(curve);
    fill(&places, 0, d, &mut cur, &mut out);
    out.sort();
    out
}

/// Every modulus of degree <= `max_deg` supported on places of degree <= `place_deg`,
/// the zero modulus first.
pub fn moduli(curve: &Curve, max_deg: i64, place_deg: usize) -> Vec<Modulus> {
    let mut out = Vec::new();
    for d in 0..=max_deg {
        for e in enumerate_effective(curve, d, &[]) {
            if e.support().iter().all(|p| p.degree() <= place_deg) {
                out.push(Modulus(e));
            }
        }
    }
    out
}

fn fill(places: &[Place], start: usize, left: i64, cur: &mut Divisor, out: &mut Vec<Divisor>) {
    if left == 0 {
        out.push(cur.clone());
        return;
    }
    for i in start..places.len() {
        let deg = places[i].degree() as i64;
        if deg > left {
            continue;
        }
        cur.add_at(&places[i], 1);
        fill(places, i, left - deg, cur, out);
        cur.add_at(&places[i], -1);
    }
}
