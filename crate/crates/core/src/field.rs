//! Finite fields.
//!
//! [`Fq`] is a base field GF(p^n) whose elements are packed into a `u32`
//! (base-p digits of the coefficient vector over GF(p)). [`ExtField`] is an
//! extension GF(q^d) = Fq[t]/(mu(t)) used for residue fields of places; its
//! elements are coefficient vectors over the base field.

use std::collections::BTreeMap;
use std::fmt;
use std::hash::Hash;
use std::sync::{Arc, Mutex};

use rand::Rng;
use smallvec::SmallVec;

use crate::error::{Error, Result};
use crate::poly::Poly;

/// Largest supported base field order.
pub const MAX_FIELD_ORDER: u64 = 1 << 20;

/// The operations every coefficient field provides.
pub trait Field: Clone + Send + Sync + fmt::Debug {
    type Elem: Clone + Eq + Hash + Ord + fmt::Debug + Send + Sync;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn is_zero(&self, a: &Self::Elem) -> bool;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn inv(&self, a: &Self::Elem) -> Option<Self::Elem>;
    /// Number of elements.
    fn order(&self) -> u128;
    fn characteristic(&self) -> u32;
    fn from_int(&self, n: i64) -> Self::Elem;
    /// Bijection `0..order` -> elements, compatible with [`Field::index`].
    fn element(&self, index: u128) -> Self::Elem;
    fn index(&self, a: &Self::Elem) -> u128;

    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        self.add(a, &self.neg(b))
    }

    fn div(&self, a: &Self::Elem, b: &Self::Elem) -> Option<Self::Elem> {
        self.inv(b).map(|ib| self.mul(a, &ib))
    }

    fn is_one(&self, a: &Self::Elem) -> bool {
        *a == self.one()
    }

    fn pow(&self, a: &Self::Elem, mut e: u128) -> Self::Elem {
        let mut base = a.clone();
        let mut acc = self.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            e >>= 1;
            if e > 0 {
                base = self.mul(&base, &base);
            }
        }
        acc
    }

    /// Integer power, negative exponents allowed for nonzero `a`.
    fn powi(&self, a: &Self::Elem, e: i64) -> Option<Self::Elem> {
        if e >= 0 {
            Some(self.pow(a, e as u128))
        } else {
            self.inv(a).map(|ia| self.pow(&ia, e.unsigned_abs() as u128))
        }
    }

    fn random<R: Rng + ?Sized>(&self, rng: &mut R) -> Self::Elem {
        self.element(rng.gen_range(0..self.order()))
    }

    fn elements(&self) -> Box<dyn Iterator<Item = Self::Elem> + '_> {
        Box::new((0..self.order()).map(move |i| self.element(i)))
    }
}

fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

struct FqInner {
    p: u32,
    n: u32,
    q: u32,
    /// Monic defining polynomial over GF(p), low to high, length n + 1.
    modulus: Vec<u32>,
    /// exp[i] = g^i for a primitive element g (only for n > 1).
    exp: Vec<u32>,
    log: Vec<u32>,
    /// Addition table for small composite-degree fields.
    add_table: Vec<u32>,
    exts: Mutex<BTreeMap<usize, Arc<ExtField>>>,
}

/// The finite field GF(p^n), q = p^n <= 2^20.
#[derive(Clone)]
pub struct Fq(Arc<FqInner>);

impl PartialEq for Fq {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0)
            || (self.0.p == other.0.p && self.0.modulus == other.0.modulus)
    }
}

impl Eq for Fq {}

impl fmt::Debug for Fq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl fmt::Display for Fq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.n == 1 {
            write!(f, "GF({})", self.0.p)
        } else {
            write!(f, "GF({}^{})", self.0.p, self.0.n)
        }
    }
}

impl Fq {
    /// GF(p^n) with the least monic irreducible of degree n as modulus.
    pub fn new(p: u32, n: u32) -> Result<Fq> {
        Self::check_params(p, n)?;
        if n == 1 {
            return Ok(Self::build(p, 1, vec![0, 1]));
        }
        let prime = Fq::new(p, 1)?;
        let modulus = crate::poly::least_irreducible(&prime, n as usize);
        Ok(Self::build(p, n, modulus.coeffs().to_vec()))
    }

    /// GF(p)[t]/(modulus) for an explicit monic irreducible `modulus` (low to high).
    pub fn with_modulus(p: u32, modulus: &[u32]) -> Result<Fq> {
        if modulus.len() < 2 {
            return Err(Error::InvalidField("modulus must have degree >= 1".into()));
        }
        let n = (modulus.len() - 1) as u32;
        Self::check_params(p, n)?;
        if *modulus.last().unwrap() != 1 || modulus.iter().any(|&c| c >= p) {
            return Err(Error::InvalidField("modulus must be monic and reduced mod p".into()));
        }
        let prime = Fq::new(p, 1)?;
        let poly = Poly::from_coeffs(&prime, modulus.to_vec());
        if !poly.is_irreducible(&prime) {
            return Err(Error::InvalidField("modulus is reducible".into()));
        }
        Ok(Self::build(p, n, modulus.to_vec()))
    }

    fn check_params(p: u32, n: u32) -> Result<()> {
        if !is_prime(p as u64) {
            return Err(Error::InvalidField(format!("{p} is not prime")));
        }
        if n == 0 {
            return Err(Error::InvalidField("extension degree must be >= 1".into()));
        }
        let q = (p as u64).checked_pow(n).unwrap_or(u64::MAX);
        if q > MAX_FIELD_ORDER {
            return Err(Error::InvalidField(format!("field order {p}^{n} exceeds 2^20")));
        }
        Ok(())
    }

    fn build(p: u32, n: u32, modulus: Vec<u32>) -> Fq {
        let q = p.pow(n);
        let mut inner = FqInner {
            p,
            n,
            q,
            modulus,
            exp: Vec::new(),
            log: Vec::new(),
            add_table: Vec::new(),
            exts: Mutex::new(BTreeMap::new()),
        };
        if n > 1 {
            if q <= 256 {
                let mut table = vec![0u32; (q * q) as usize];
                for a in 0..q {
                    for b in 0..q {
                        table[(a * q + b) as usize] = digit_add(p, n, a, b);
                    }
                }
                inner.add_table = table;
            }
            let (exp, log) = build_log_tables(p, n, &inner.modulus);
            inner.exp = exp;
            inner.log = log;
        }
        Fq(Arc::new(inner))
    }

    pub fn p(&self) -> u32 {
        self.0.p
    }

    pub fn n(&self) -> u32 {
        self.0.n
    }

    pub fn q(&self) -> u32 {
        self.0.q
    }

    /// Defining polynomial over GF(p), low to high.
    pub fn modulus(&self) -> &[u32] {
        &self.0.modulus
    }

    /// Coefficient vector over GF(p) of an element.
    pub fn digits(&self, a: u32) -> Vec<u32> {
        let mut out = Vec::with_capacity(self.0.n as usize);
        let mut a = a;
        for _ in 0..self.0.n {
            out.push(a % self.0.p);
            a /= self.0.p;
        }
        out
    }

    pub fn from_digits(&self, digits: &[u32]) -> Result<u32> {
        if digits.len() > self.0.n as usize || digits.iter().any(|&d| d >= self.0.p) {
            return Err(Error::InvalidField(format!("{digits:?} is not an element of {self}")));
        }
        Ok(digits.iter().rev().fold(0, |acc, &d| acc * self.0.p + d))
    }

    /// The residue class of t in GF(p)[t]/(modulus) (0 for prime fields).
    pub fn generator(&self) -> u32 {
        if self.0.n == 1 {
            0
        } else {
            self.0.p
        }
    }

    /// Canonical text form: an integer for prime fields, a digit vector otherwise.
    pub fn format(&self, a: u32) -> String {
        if self.0.n == 1 {
            a.to_string()
        } else {
            let d: Vec<String> = self.digits(a).iter().map(|c| c.to_string()).collect();
            format!("[{}]", d.join(","))
        }
    }

    /// Signed text form for prime fields (`p-1` prints as `-1` when `signed`).
    pub fn format_signed(&self, a: u32) -> (bool, String) {
        if self.0.n == 1 && a != 0 && a > self.0.p / 2 && self.0.p > 2 {
            (true, (self.0.p - a).to_string())
        } else {
            (false, self.format(a))
        }
    }

    /// The extension of degree `d`, built once and cached.
    pub fn ext(&self, d: usize) -> Arc<ExtField> {
        assert!(d >= 1, "extension degree must be positive");
        let mut cache = self.0.exts.lock().expect("extension cache poisoned");
        cache
            .entry(d)
            .or_insert_with(|| Arc::new(ExtField::new(self.clone(), d)))
            .clone()
    }

    /// Checked element constructor.
    pub fn elem(&self, value: u32) -> Result<FieldElement> {
        if value >= self.0.q {
            return Err(Error::InvalidField(format!("{value} is not an element of {self}")));
        }
        Ok(FieldElement { field: self.clone(), value })
    }
}

fn digit_add(p: u32, n: u32, a: u32, b: u32) -> u32 {
    let (mut a, mut b) = (a, b);
    let mut out = 0;
    let mut scale = 1;
    for _ in 0..n {
        out += ((a % p + b % p) % p) * scale;
        a /= p;
        b /= p;
        scale *= p;
    }
    out
}

fn digit_neg(p: u32, n: u32, a: u32) -> u32 {
    let mut a = a;
    let mut out = 0;
    let mut scale = 1;
    for _ in 0..n {
        out += ((p - a % p) % p) * scale;
        a /= p;
        scale *= p;
    }
    out
}

/// Multiply two digit-encoded residues modulo `modulus` over GF(p).
fn digit_mul(p: u32, n: u32, modulus: &[u32], a: u32, b: u32) -> u32 {
    let n = n as usize;
    let to_vec = |mut x: u32| {
        let mut v = vec![0u64; n];
        for c in v.iter_mut() {
            *c = (x % p) as u64;
            x /= p;
        }
        v
    };
    let (va, vb) = (to_vec(a), to_vec(b));
    let p64 = p as u64;
    let mut prod = vec![0u64; 2 * n - 1];
    for (i, &x) in va.iter().enumerate() {
        for (j, &y) in vb.iter().enumerate() {
            prod[i + j] = (prod[i + j] + x * y) % p64;
        }
    }
    for k in (n..prod.len()).rev() {
        let c = prod[k];
        if c != 0 {
            for (i, &m) in modulus.iter().enumerate().take(n) {
                let idx = k - n + i;
                prod[idx] = (prod[idx] + p64 - (c * m as u64) % p64) % p64;
            }
            prod[k] = 0;
        }
    }
    prod.iter().take(n).rev().fold(0u64, |acc, &c| acc * p64 + c) as u32
}

fn build_log_tables(p: u32, n: u32, modulus: &[u32]) -> (Vec<u32>, Vec<u32>) {
    let q = p.pow(n);
    for g in 2..q {
        let mut exp = Vec::with_capacity((q - 1) as usize);
        let mut x = 1u32;
        let mut ok = true;
        for i in 0..(q - 1) {
            if i > 0 && x == 1 {
                ok = false;
                break;
            }
            exp.push(x);
            x = digit_mul(p, n, modulus, x, g);
        }
        if ok && x == 1 {
            let mut log = vec![0u32; q as usize];
            for (i, &e) in exp.iter().enumerate() {
                log[e as usize] = i as u32;
            }
            return (exp, log);
        }
    }
    unreachable!("multiplicative group of a finite field is cyclic")
}

impl Field for Fq {
    type Elem = u32;

    fn zero(&self) -> u32 {
        0
    }

    fn one(&self) -> u32 {
        1
    }

    fn is_zero(&self, a: &u32) -> bool {
        *a == 0
    }

    fn add(&self, a: &u32, b: &u32) -> u32 {
        let inner = &*self.0;
        if inner.n == 1 {
            let s = a + b;
            if s >= inner.p {
                s - inner.p
            } else {
                s
            }
        } else if !inner.add_table.is_empty() {
            inner.add_table[(a * inner.q + b) as usize]
        } else {
            digit_add(inner.p, inner.n, *a, *b)
        }
    }

    fn neg(&self, a: &u32) -> u32 {
        let inner = &*self.0;
        if inner.n == 1 {
            if *a == 0 {
                0
            } else {
                inner.p - a
            }
        } else {
            digit_neg(inner.p, inner.n, *a)
        }
    }

    fn mul(&self, a: &u32, b: &u32) -> u32 {
        let inner = &*self.0;
        if inner.n == 1 {
            ((*a as u64 * *b as u64) % inner.p as u64) as u32
        } else if *a == 0 || *b == 0 {
            0
        } else {
            let s = (inner.log[*a as usize] + inner.log[*b as usize]) % (inner.q - 1);
            inner.exp[s as usize]
        }
    }

    fn inv(&self, a: &u32) -> Option<u32> {
        if *a == 0 {
            return None;
        }
        let inner = &*self.0;
        if inner.n == 1 {
            // extended Euclid on integers
            let (mut r0, mut r1) = (inner.p as i64, *a as i64);
            let (mut t0, mut t1) = (0i64, 1i64);
            while r1 != 0 {
                let qt = r0 / r1;
                (r0, r1) = (r1, r0 - qt * r1);
                (t0, t1) = (t1, t0 - qt * t1);
            }
            Some(t0.rem_euclid(inner.p as i64) as u32)
        } else {
            let l = inner.log[*a as usize];
            Some(inner.exp[((inner.q - 1 - l) % (inner.q - 1)) as usize])
        }
    }

    fn order(&self) -> u128 {
        self.0.q as u128
    }

    fn characteristic(&self) -> u32 {
        self.0.p
    }

    fn from_int(&self, n: i64) -> u32 {
        n.rem_euclid(self.0.p as i64) as u32
    }

    fn element(&self, index: u128) -> u32 {
        index as u32
    }

    fn index(&self, a: &u32) -> u128 {
        *a as u128
    }
}

/// A base-field element that remembers its field; arithmetic is checked.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FieldElement {
    field: Fq,
    value: u32,
}

/// Operations accepted by [`FieldElement::apply`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FieldOp {
    Add,
    Mul,
    Inv,
    Neg,
    Pow(u64),
}

impl FieldElement {
    pub fn field(&self) -> &Fq {
        &self.field
    }

    pub fn value(&self) -> u32 {
        self.value
    }

    fn wrap(&self, value: u32) -> FieldElement {
        FieldElement { field: self.field.clone(), value }
    }

    fn same_field(&self, other: &FieldElement) -> Result<()> {
        if self.field == other.field {
            Ok(())
        } else {
            Err(Error::FieldMismatch)
        }
    }

    pub fn add(&self, other: &FieldElement) -> Result<FieldElement> {
        self.same_field(other)?;
        Ok(self.wrap(self.field.add(&self.value, &other.value)))
    }

    pub fn sub(&self, other: &FieldElement) -> Result<FieldElement> {
        self.same_field(other)?;
        Ok(self.wrap(self.field.sub(&self.value, &other.value)))
    }

    pub fn mul(&self, other: &FieldElement) -> Result<FieldElement> {
        self.same_field(other)?;
        Ok(self.wrap(self.field.mul(&self.value, &other.value)))
    }

    pub fn neg(&self) -> FieldElement {
        self.wrap(self.field.neg(&self.value))
    }

    pub fn inv(&self) -> Result<FieldElement> {
        self.field.inv(&self.value).map(|v| self.wrap(v)).ok_or(Error::DivisionByZero)
    }

    pub fn pow(&self, e: u64) -> FieldElement {
        self.wrap(self.field.pow(&self.value, e as u128))
    }

    /// Dispatch a named operation; unary operations ignore `other`.
    pub fn apply(&self, op: FieldOp, other: Option<&FieldElement>) -> Result<FieldElement> {
        let rhs = || other.ok_or_else(|| Error::InvalidArgument("binary operation needs a second operand".into()));
        match op {
            FieldOp::Add => self.add(rhs()?),
            FieldOp::Mul => self.mul(rhs()?),
            FieldOp::Inv => self.inv(),
            FieldOp::Neg => Ok(self.neg()),
            FieldOp::Pow(e) => Ok(self.pow(e)),
        }
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.field.format(self.value))
    }
}

/// Element of an extension field: coefficients over the base field, low to high.
pub type ExtElem = SmallVec<[u32; 4]>;

/// GF(q^d) = Fq[t]/(mu(t)) with mu the least monic irreducible of degree d.
pub struct ExtField {
    base: Fq,
    degree: usize,
    modulus: Vec<u32>,
    order: u128,
    norm_exp: u128,
}

impl fmt::Debug for ExtField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}^{}", self.base, self.degree)
    }
}

impl ExtField {
    fn new(base: Fq, degree: usize) -> ExtField {
        let q = base.q() as u128;
        let order = q
            .checked_pow(degree as u32)
            .expect("extension order must fit in 128 bits");
        let modulus = if degree == 1 {
            vec![0, 1]
        } else {
            crate::poly::least_irreducible(&base, degree).coeffs().to_vec()
        };
        ExtField { base, degree, modulus, order, norm_exp: (order - 1) / (q - 1) }
    }

    pub fn base(&self) -> &Fq {
        &self.base
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn modulus(&self) -> &[u32] {
        &self.modulus
    }

    pub fn embed(&self, c: u32) -> ExtElem {
        let mut v: ExtElem = SmallVec::from_elem(0, self.degree);
        v[0] = c;
        v
    }

    /// The generator t of Fq[t]/(mu).
    pub fn gen(&self) -> ExtElem {
        if self.degree == 1 {
            // t = -mu(0) = 0 for mu = t; any element generates GF(q) over itself
            return self.embed(0);
        }
        let mut v: ExtElem = SmallVec::from_elem(0, self.degree);
        v[1] = 1;
        v
    }

    /// Lies in the image of the base field.
    pub fn in_base(&self, a: &ExtElem) -> Option<u32> {
        if a.iter().skip(1).all(|&c| c == 0) {
            Some(a[0])
        } else {
            None
        }
    }

    /// q-power Frobenius.
    pub fn frobenius(self: &Arc<Self>, a: &ExtElem) -> ExtElem {
        self.pow(a, self.base.q() as u128)
    }

    pub fn norm(self: &Arc<Self>, a: &ExtElem) -> u32 {
        let n = self.pow(a, self.norm_exp);
        self.in_base(&n).expect("norm lies in the base field")
    }

    pub fn trace(self: &Arc<Self>, a: &ExtElem) -> u32 {
        let mut acc = self.zero();
        let mut cur = a.clone();
        for _ in 0..self.degree {
            acc = self.add(&acc, &cur);
            cur = self.frobenius(&cur);
        }
        self.in_base(&acc).expect("trace lies in the base field")
    }

    /// Size of the Frobenius orbit of `a` (the degree of the field it generates).
    pub fn orbit_size(self: &Arc<Self>, a: &ExtElem) -> usize {
        let mut cur = self.frobenius(a);
        let mut k = 1;
        while cur != *a {
            cur = self.frobenius(&cur);
            k += 1;
        }
        k
    }

    pub fn format(&self, a: &ExtElem) -> String {
        if self.degree == 1 {
            return self.base.format(a[0]);
        }
        let parts: Vec<String> = a.iter().map(|&c| self.base.format(c)).collect();
        format!("[{}]", parts.join(","))
    }
}

impl Field for Arc<ExtField> {
    type Elem = ExtElem;

    fn zero(&self) -> ExtElem {
        SmallVec::from_elem(0, self.degree)
    }

    fn one(&self) -> ExtElem {
        self.embed(1)
    }

    fn is_zero(&self, a: &ExtElem) -> bool {
        a.iter().all(|&c| c == 0)
    }

    fn add(&self, a: &ExtElem, b: &ExtElem) -> ExtElem {
        a.iter().zip(b.iter()).map(|(x, y)| self.base.add(x, y)).collect()
    }

    fn neg(&self, a: &ExtElem) -> ExtElem {
        a.iter().map(|x| self.base.neg(x)).collect()
    }

    fn sub(&self, a: &ExtElem, b: &ExtElem) -> ExtElem {
        a.iter().zip(b.iter()).map(|(x, y)| self.base.sub(x, y)).collect()
    }

    fn mul(&self, a: &ExtElem, b: &ExtElem) -> ExtElem {
        let d = self.degree;
        let f = &self.base;
        if d == 1 {
            return smallvec::smallvec![f.mul(&a[0], &b[0])];
        }
        let mut prod: SmallVec<[u32; 8]> = SmallVec::from_elem(0, 2 * d - 1);
        for (i, x) in a.iter().enumerate() {
            if *x == 0 {
                continue;
            }
            for (j, y) in b.iter().enumerate() {
                let t = f.mul(x, y);
                prod[i + j] = f.add(&prod[i + j], &t);
            }
        }
        for k in (d..prod.len()).rev() {
            let c = prod[k];
            if c != 0 {
                for i in 0..d {
                    let t = f.mul(&c, &self.modulus[i]);
                    prod[k - d + i] = f.sub(&prod[k - d + i], &t);
                }
                prod[k] = 0;
            }
        }
        prod[..d].iter().copied().collect()
    }

    fn inv(&self, a: &ExtElem) -> Option<ExtElem> {
        if self.is_zero(a) {
            None
        } else {
            Some(self.pow(a, self.order - 2))
        }
    }

    fn order(&self) -> u128 {
        self.order
    }

    fn characteristic(&self) -> u32 {
        self.base.p()
    }

    fn from_int(&self, n: i64) -> ExtElem {
        self.embed(self.base.from_int(n))
    }

    fn element(&self, mut index: u128) -> ExtElem {
        let q = self.base.q() as u128;
        let mut v: ExtElem = SmallVec::with_capacity(self.degree);
        for _ in 0..self.degree {
            v.push((index % q) as u32);
            index /= q;
        }
        v
    }

    fn index(&self, a: &ExtElem) -> u128 {
        let q = self.base.q() as u128;
        a.iter().rev().fold(0u128, |acc, &c| acc * q + c as u128)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gf3_basics() {
        let f = Fq::new(3, 1).unwrap();
        assert_eq!(f.add(&2, &2), 1);
        assert_eq!(f.inv(&2), Some(2));
        assert_eq!(f.inv(&0), None);
    }

    #[test]
    fn gf9_defining_relation() {
        let f = Fq::new(3, 2).unwrap();
        assert_eq!(f.modulus(), &[1, 0, 1]);
        let t = f.generator();
        assert_eq!(f.mul(&t, &t), f.from_int(-1));
        assert_eq!(f.format(f.mul(&t, &t)), "[2,0]");
    }

    #[test]
    fn fermat_exhaustive_small_fields() {
        for (p, n) in [(2, 1), (2, 3), (3, 1), (3, 2), (3, 4), (5, 1), (5, 2), (7, 2), (2, 6)] {
            let f = Fq::new(p, n).unwrap();
            assert!(f.q() <= 81 || (p, n) == (7, 2) || (p, n) == (2, 6));
            for a in 1..f.q() {
                assert_eq!(f.pow(&a, (f.q() - 1) as u128), 1, "{f} a={a}");
                let ia = f.inv(&a).unwrap();
                assert_eq!(f.mul(&a, &ia), 1);
            }
        }
    }

    #[test]
    fn field_errors() {
        let f3 = Fq::new(3, 1).unwrap();
        let f5 = Fq::new(5, 1).unwrap();
        let a = f3.elem(1).unwrap();
        let b = f5.elem(1).unwrap();
        assert_eq!(a.add(&b), Err(Error::FieldMismatch));
        assert_eq!(f3.elem(0).unwrap().inv(), Err(Error::DivisionByZero));
        assert!(Fq::new(4, 1).is_err());
        assert!(Fq::new(2, 21).is_err());
        assert!(Fq::with_modulus(3, &[2, 0, 1]).is_err());
        assert!(Fq::with_modulus(3, &[1, 0, 1]).is_ok());
        let two = f3.elem(2).unwrap();
        assert_eq!(two.apply(FieldOp::Add, Some(&two)).unwrap().value(), 1);
        assert_eq!(two.apply(FieldOp::Inv, None).unwrap().value(), 2);
        assert_eq!(two.apply(FieldOp::Pow(2), None).unwrap().value(), 1);
    }

    #[test]
    fn extension_norm_and_trace() {
        let f = Fq::new(3, 1).unwrap();
        let e = f.ext(2);
        assert_eq!(e.order(), 9);
        for i in 1..9u128 {
            let a = e.element(i);
            let prod = e.mul(&a, &e.frobenius(&a));
            assert_eq!(e.in_base(&prod), Some(e.norm(&a)));
            let sum = e.add(&a, &e.frobenius(&a));
            assert_eq!(e.in_base(&sum), Some(e.trace(&a)));
            assert_eq!(e.mul(&a, &e.inv(&a).unwrap()), e.one());
        }
        let e1 = f.ext(1);
        assert_eq!(e1.norm(&e1.embed(2)), 2);
    }
}
