//! Dense univariate polynomials over any [`Field`], with gcd, factorization
//! (square-free, distinct-degree and Cantor-Zassenhaus splitting) and root
//! finding.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::field::{Field, Fq};

/// Coefficients low to high with no trailing zeros; the zero polynomial is empty.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Poly<E> {
    coeffs: Vec<E>,
}

/// Polynomial over a base field.
pub type FqPoly = Poly<u32>;

/// Result of [`Poly::factor`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Factorization<E> {
    pub lead: E,
    /// Monic irreducible factors with multiplicities in canonical order.
    pub factors: Vec<(Poly<E>, u32)>,
}

impl<E: Clone + Eq> Poly<E> {
    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    pub fn from_coeffs<F: Field<Elem = E>>(field: &F, mut coeffs: Vec<E>) -> Self {
        while coeffs.last().is_some_and(|c| field.is_zero(c)) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn constant<F: Field<Elem = E>>(field: &F, c: E) -> Self {
        Self::from_coeffs(field, vec![c])
    }

    pub fn one<F: Field<Elem = E>>(field: &F) -> Self {
        Poly { coeffs: vec![field.one()] }
    }

    /// The monomial c * x^k.
    pub fn monomial<F: Field<Elem = E>>(field: &F, c: E, k: usize) -> Self {
        let mut v = vec![field.zero(); k + 1];
        v[k] = c;
        Self::from_coeffs(field, v)
    }

    pub fn x<F: Field<Elem = E>>(field: &F) -> Self {
        Self::monomial(field, field.one(), 1)
    }

    /// x - a
    pub fn linear<F: Field<Elem = E>>(field: &F, a: &E) -> Self {
        Poly { coeffs: vec![field.neg(a), field.one()] }
    }

    pub fn coeffs(&self) -> &[E] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<E> {
        self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Degree with deg(0) = -1.
    pub fn deg(&self) -> i64 {
        self.coeffs.len() as i64 - 1
    }

    pub fn lead(&self) -> Option<&E> {
        self.coeffs.last()
    }

    pub fn coeff<F: Field<Elem = E>>(&self, field: &F, i: usize) -> E {
        self.coeffs.get(i).cloned().unwrap_or_else(|| field.zero())
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn is_monic<F: Field<Elem = E>>(&self, field: &F) -> bool {
        self.lead().is_some_and(|c| field.is_one(c))
    }

    pub fn add<F: Field<Elem = E>>(&self, other: &Self, field: &F) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        let v = (0..n)
            .map(|i| field.add(&self.coeff(field, i), &other.coeff(field, i)))
            .collect();
        Self::from_coeffs(field, v)
    }

    pub fn sub<F: Field<Elem = E>>(&self, other: &Self, field: &F) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        let v = (0..n)
            .map(|i| field.sub(&self.coeff(field, i), &other.coeff(field, i)))
            .collect();
        Self::from_coeffs(field, v)
    }

    pub fn neg<F: Field<Elem = E>>(&self, field: &F) -> Self {
        Poly { coeffs: self.coeffs.iter().map(|c| field.neg(c)).collect() }
    }

    pub fn scale<F: Field<Elem = E>>(&self, c: &E, field: &F) -> Self {
        Self::from_coeffs(field, self.coeffs.iter().map(|a| field.mul(a, c)).collect())
    }

    pub fn mul<F: Field<Elem = E>>(&self, other: &Self, field: &F) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let mut v = vec![field.zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if field.is_zero(a) {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                v[i + j] = field.add(&v[i + j], &field.mul(a, b));
            }
        }
        Self::from_coeffs(field, v)
    }

    pub fn pow<F: Field<Elem = E>>(&self, e: u32, field: &F) -> Self {
        let mut acc = Self::one(field);
        for _ in 0..e {
            acc = acc.mul(self, field);
        }
        acc
    }

    /// Euclidean division; panics on a zero divisor.
    pub fn divrem<F: Field<Elem = E>>(&self, divisor: &Self, field: &F) -> (Self, Self) {
        let dd = divisor.degree().expect("division by the zero polynomial");
        if self.deg() < dd as i64 {
            return (Self::zero(), self.clone());
        }
        let inv_lead = field.inv(divisor.lead().unwrap()).unwrap();
        let mut rem = self.coeffs.clone();
        let mut quo = vec![field.zero(); rem.len() - dd];
        for k in (dd..rem.len()).rev() {
            let c = field.mul(&rem[k], &inv_lead);
            if field.is_zero(&c) {
                continue;
            }
            for (i, b) in divisor.coeffs.iter().enumerate() {
                let idx = k - dd + i;
                rem[idx] = field.sub(&rem[idx], &field.mul(&c, b));
            }
            quo[k - dd] = c;
        }
        rem.truncate(dd);
        (Self::from_coeffs(field, quo), Self::from_coeffs(field, rem))
    }

    pub fn rem<F: Field<Elem = E>>(&self, divisor: &Self, field: &F) -> Self {
        self.divrem(divisor, field).1
    }

    /// Exact quotient, `None` if the division leaves a remainder.
    pub fn div_exact<F: Field<Elem = E>>(&self, divisor: &Self, field: &F) -> Option<Self> {
        let (q, r) = self.divrem(divisor, field);
        r.is_zero().then_some(q)
    }

    pub fn monic<F: Field<Elem = E>>(&self, field: &F) -> Self {
        match self.lead() {
            None => Self::zero(),
            Some(l) => self.scale(&field.inv(l).unwrap(), field),
        }
    }

    /// Monic gcd (zero only if both inputs are zero).
    pub fn gcd<F: Field<Elem = E>>(&self, other: &Self, field: &F) -> Self {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.rem(&b, field);
            a = b;
            b = r;
        }
        a.monic(field)
    }

    /// Returns (g, s, t) with s*self + t*other = g, g monic.
    pub fn ext_gcd<F: Field<Elem = E>>(&self, other: &Self, field: &F) -> (Self, Self, Self) {
        let (mut r0, mut r1) = (self.clone(), other.clone());
        let (mut s0, mut s1) = (Self::one(field), Self::zero());
        let (mut t0, mut t1) = (Self::zero(), Self::one(field));
        while !r1.is_zero() {
            let (q, r) = r0.divrem(&r1, field);
            let s2 = s0.sub(&q.mul(&s1, field), field);
            let t2 = t0.sub(&q.mul(&t1, field), field);
            r0 = r1;
            r1 = r;
            s0 = s1;
            s1 = s2;
            t0 = t1;
            t1 = t2;
        }
        match r0.lead().cloned() {
            None => (r0, s0, t0),
            Some(l) => {
                let il = field.inv(&l).unwrap();
                (r0.scale(&il, field), s0.scale(&il, field), t0.scale(&il, field))
            }
        }
    }

    /// Horner evaluation at a point of a field containing the coefficients.
    pub fn eval<F: Field<Elem = E>>(&self, x: &E, field: &F) -> E {
        self.coeffs
            .iter()
            .rev()
            .fold(field.zero(), |acc, c| field.add(&field.mul(&acc, x), c))
    }

    pub fn derivative<F: Field<Elem = E>>(&self, field: &F) -> Self {
        let v = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| field.mul(c, &field.from_int(i as i64)))
            .collect();
        Self::from_coeffs(field, v)
    }

    /// Map the coefficients through a ring homomorphism into another field.
    pub fn map<G: Field, M: Fn(&E) -> G::Elem>(&self, target: &G, m: M) -> Poly<G::Elem> {
        Poly::from_coeffs(target, self.coeffs.iter().map(m).collect())
    }

    /// self^e mod modulus, e arbitrary.
    pub fn powmod<F: Field<Elem = E>>(&self, mut e: u128, modulus: &Self, field: &F) -> Self {
        let mut base = self.rem(modulus, field);
        let mut acc = Self::one(field).rem(modulus, field);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base, field).rem(modulus, field);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base, field).rem(modulus, field);
            }
        }
        acc
    }

    /// Multiplicity of an irreducible `factor` and the cofactor.
    pub fn split_off<F: Field<Elem = E>>(&self, factor: &Self, field: &F) -> (u32, Self) {
        let mut k = 0;
        let mut cur = self.clone();
        if cur.is_zero() || factor.is_constant() {
            return (0, cur);
        }
        while let Some(q) = cur.div_exact(factor, field) {
            k += 1;
            cur = q;
        }
        (k, cur)
    }

    /// Rabin's irreducibility test.
    pub fn is_irreducible<F: Field<Elem = E>>(&self, field: &F) -> bool {
        let n = match self.degree() {
            None | Some(0) => return false,
            Some(1) => return true,
            Some(n) => n,
        };
        let f = self.monic(field);
        let q = field.order();
        let x = Self::x(field);
        // x^(q^k) mod f for k = 1..n
        let mut powers = Vec::with_capacity(n);
        let mut h = x.clone();
        for _ in 0..n {
            h = h.powmod(q, &f, field);
            powers.push(h.clone());
        }
        if !powers[n - 1].sub(&x, field).rem(&f, field).is_zero() {
            return false;
        }
        for prime in prime_divisors(n) {
            let k = n / prime;
            let g = powers[k - 1].sub(&x, field).gcd(&f, field);
            if !g.is_constant() {
                return false;
            }
        }
        true
    }

    /// Square-free decomposition of a monic polynomial: (square-free part, multiplicity).
    fn squarefree<F: Field<Elem = E>>(&self, field: &F) -> Vec<(Self, u32)> {
        let p = field.characteristic();
        let mut out = Vec::new();
        let f = self.monic(field);
        if f.is_constant() {
            return out;
        }
        let d = f.derivative(field);
        if d.is_zero() {
            // f = g(x^p), take p-th roots of coefficients
            for (g, m) in f.pth_root(field).squarefree(field) {
                out.push((g, m * p));
            }
            return out;
        }
        let mut c = f.gcd(&d, field);
        let mut w = f.div_exact(&c, field).unwrap();
        let mut i = 1;
        while !w.is_constant() {
            let y = w.gcd(&c, field);
            let z = w.div_exact(&y, field).unwrap();
            if !z.is_constant() {
                out.push((z, i));
            }
            i += 1;
            w = y;
            c = c.div_exact(&w, field).unwrap();
        }
        if !c.is_constant() {
            for (g, m) in c.pth_root(field).squarefree(field) {
                out.push((g, m * p));
            }
        }
        out
    }

    fn pth_root<F: Field<Elem = E>>(&self, field: &F) -> Self {
        let p = field.characteristic() as usize;
        let e = field.order() / p as u128;
        let v = self
            .coeffs
            .iter()
            .step_by(p)
            .map(|c| field.pow(c, e))
            .collect();
        Self::from_coeffs(field, v)
    }

    /// Distinct-degree factorization of a monic square-free polynomial.
    fn distinct_degree<F: Field<Elem = E>>(&self, field: &F) -> Vec<(Self, usize)> {
        let q = field.order();
        let x = Self::x(field);
        let mut f = self.clone();
        let mut h = x.clone();
        let mut out = Vec::new();
        let mut i = 0;
        while f.deg() >= 2 * (i as i64 + 1) {
            i += 1;
            h = h.powmod(q, &f, field);
            let g = h.sub(&x, field).gcd(&f, field);
            if !g.is_constant() {
                f = f.div_exact(&g, field).unwrap();
                h = h.rem(&f, field);
                out.push((g, i));
            }
        }
        if !f.is_constant() {
            let d = f.degree().unwrap();
            out.push((f, d));
        }
        out
    }

    /// Cantor-Zassenhaus splitting of a product of distinct monic irreducibles of degree `d`.
    fn equal_degree<F: Field<Elem = E>>(&self, d: usize, field: &F, rng: &mut ChaCha8Rng) -> Vec<Self> {
        let n = self.degree().unwrap_or(0);
        if n == d {
            return vec![self.clone()];
        }
        let q = field.order();
        let char2 = field.characteristic() == 2;
        loop {
            let a = Self::from_coeffs(field, (0..n).map(|_| field.random(rng)).collect());
            if a.is_constant() {
                continue;
            }
            let b = if char2 {
                // absolute trace map: sum of a^(2^i), i < k*d where q = 2^k
                let k = 127 - q.leading_zeros() as usize;
                let mut acc = a.rem(self, field);
                let mut cur = acc.clone();
                for _ in 1..k * d {
                    cur = cur.mul(&cur, field).rem(self, field);
                    acc = acc.add(&cur, field);
                }
                acc
            } else {
                // a^((q^d - 1)/2) = prod_i (a^((q-1)/2))^(q^i)
                let c = a.powmod((q - 1) / 2, self, field);
                let mut acc = c.clone();
                let mut cur = c;
                for _ in 1..d {
                    cur = cur.powmod(q, self, field);
                    acc = acc.mul(&cur, field).rem(self, field);
                }
                acc.sub(&Self::one(field), field)
            };
            let g = b.gcd(self, field);
            if !g.is_constant() && g.degree() != self.degree() {
                let h = self.div_exact(&g, field).unwrap();
                let mut out = g.equal_degree(d, field, rng);
                out.extend(h.equal_degree(d, field, rng));
                return out;
            }
        }
    }

    /// Complete factorization into monic irreducibles, canonically ordered by
    /// (degree, coefficient vector).
    pub fn factor<F: Field<Elem = E>>(&self, field: &F) -> Result<Factorization<E>>
    where
        E: Ord,
    {
        let lead = self.lead().cloned().ok_or(Error::ZeroPolynomial)?;
        let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_f00d);
        let mut factors: Vec<(Self, u32)> = Vec::new();
        for (sf, mult) in self.squarefree(field) {
            for (block, d) in sf.distinct_degree(field) {
                for g in block.equal_degree(d, field, &mut rng) {
                    factors.push((g, mult));
                }
            }
        }
        factors.sort_by(|a, b| canonical_cmp(&a.0, &b.0));
        // merge equal factors coming from different square-free layers
        let mut merged: Vec<(Self, u32)> = Vec::with_capacity(factors.len());
        for (g, m) in factors {
            match merged.last_mut() {
                Some((h, k)) if *h == g => *k += m,
                _ => merged.push((g, m)),
            }
        }
        Ok(Factorization { lead, factors: merged })
    }

    /// Distinct roots in the coefficient field, sorted.
    pub fn roots<F: Field<Elem = E>>(&self, field: &F) -> Vec<E>
    where
        E: Ord,
    {
        if self.degree().unwrap_or(0) == 0 {
            return Vec::new();
        }
        let f = self.monic(field);
        let x = Self::x(field);
        let g = x.powmod(field.order(), &f, field).sub(&x, field).gcd(&f, field);
        if g.is_constant() {
            return Vec::new();
        }
        let mut rng = ChaCha8Rng::seed_from_u64(0x600d_5eed);
        let mut roots: Vec<E> = g
            .equal_degree(1, field, &mut rng)
            .into_iter()
            .map(|l| field.neg(&l.coeffs[0]))
            .collect();
        roots.sort();
        roots
    }
}

impl FqPoly {
    /// Sparse `c*x^k` text form, highest degree first.
    pub fn display(&self, field: &Fq, var: &str) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut terms = Vec::new();
        for (k, &c) in self.coeffs.iter().enumerate().rev() {
            if c == 0 {
                continue;
            }
            let mono = match k {
                0 => String::new(),
                1 => var.to_string(),
                _ => format!("{var}^{k}"),
            };
            let coef = field.format(c);
            terms.push(match (k, c) {
                (0, _) => coef,
                (_, 1) => mono,
                _ => format!("{coef}*{mono}"),
            });
        }
        terms.join("+")
    }
}

/// Canonical order: by degree, then coefficient vector low to high.
pub fn canonical_cmp<E: Ord + Clone + Eq>(a: &Poly<E>, b: &Poly<E>) -> std::cmp::Ordering {
    a.deg().cmp(&b.deg()).then_with(|| a.coeffs.cmp(&b.coeffs))
}

fn prime_divisors(mut n: usize) -> Vec<usize> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            while n.is_multiple_of(d) {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// All monic polynomials of degree `d`, in canonical order.
pub fn monic_polys<F: Field>(field: &F, d: usize) -> impl Iterator<Item = Poly<F::Elem>> + '_ {
    monic_polys_range(field, d, 0)
}

fn monic_polys_range<F: Field>(field: &F, d: usize, start: u128) -> impl Iterator<Item = Poly<F::Elem>> + '_ {
    let q = field.order();
    let count = q.pow(d as u32);
    // the constant coefficient is the most significant digit of the index
    (start..count).map(move |mut idx| {
        let mut v = vec![field.zero(); d + 1];
        for slot in v.iter_mut().take(d).rev() {
            *slot = field.element(idx % q);
            idx /= q;
        }
        v[d] = field.one();
        Poly { coeffs: v }
    })
}

/// Monic irreducible polynomials of degree `d` in canonical order.
pub fn irreducibles<F: Field>(field: &F, d: usize) -> Vec<Poly<F::Elem>> {
    monic_polys(field, d).filter(|p| p.is_irreducible(field)).collect()
}

/// Least monic irreducible of degree `d` in canonical order.
pub fn least_irreducible(field: &Fq, d: usize) -> FqPoly {
    // past degree one, everything before the first nonzero constant term is divisible by x
    let start = if d >= 2 { (field.order()).pow(d as u32 - 1) } else { 0 };
    monic_polys_range(field, d, start)
        .find(|p| p.is_irreducible(field))
        .expect("irreducible polynomials exist in every degree")
}

/// Number of monic irreducibles of degree d over GF(q): (1/d) sum_{e|d} mu(e) q^(d/e).
pub fn necklace_count(q: u64, d: u64) -> u64 {
    let mut total: i128 = 0;
    for e in 1..=d {
        if d.is_multiple_of(e) {
            total += mobius(e) as i128 * (q as i128).pow((d / e) as u32);
        }
    }
    (total / d as i128) as u64
}

fn mobius(mut n: u64) -> i64 {
    let mut result = 1;
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            n /= d;
            if n.is_multiple_of(d) {
                return 0;
            }
            result = -result;
        }
        d += 1;
    }
    if n > 1 {
        result = -result;
    }
    result
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(f: &Fq, v: &[i64]) -> FqPoly {
        Poly::from_coeffs(f, v.iter().map(|&c| f.from_int(c)).collect())
    }

    #[test]
    fn difference_of_squares() {
        let f = Fq::new(3, 1).unwrap();
        let fac = p(&f, &[-1, 0, 1]).factor(&f).unwrap();
        assert_eq!(fac.lead, 1);
        assert_eq!(fac.factors, vec![(p(&f, &[1, 1]), 1), (p(&f, &[2, 1]), 1)]);
    }

    #[test]
    fn x2_plus_1_irreducible_over_gf3() {
        let f = Fq::new(3, 1).unwrap();
        let g = p(&f, &[1, 0, 1]);
        // oracle: no root among {0,1,2}; degree 2 so irreducible
        assert!((0..3u32).all(|a| g.eval(&a, &f) != 0));
        assert!(g.is_irreducible(&f));
        assert_eq!(g.factor(&f).unwrap().factors, vec![(g, 1)]);
    }

    #[test]
    fn x9_minus_x_is_product_of_small_irreducibles() {
        let f = Fq::new(3, 1).unwrap();
        let mut v = vec![0i64; 10];
        v[9] = 1;
        v[1] = -1;
        let fac = p(&f, &v).factor(&f).unwrap();
        // oracle: trial-division enumeration of monic irreducibles of degree <= 2
        let mut expected = Vec::new();
        for d in 1..=2 {
            for cand in monic_polys(&f, d) {
                let is_irr = (1..d).all(|e| monic_polys(&f, e).all(|m| cand.div_exact(&m, &f).is_none()));
                if is_irr {
                    expected.push((cand, 1));
                }
            }
        }
        expected.sort_by(|a, b| canonical_cmp(&a.0, &b.0));
        assert_eq!(expected.len(), 6);
        assert_eq!(fac.factors, expected);
    }

    #[test]
    fn repeated_and_inseparable_factors() {
        let f = Fq::new(2, 1).unwrap();
        // (x+1)^4 * x^2 * (x^2+x+1)
        let g = p(&f, &[1, 1]).pow(4, &f).mul(&p(&f, &[0, 1]).pow(2, &f), &f).mul(&p(&f, &[1, 1, 1]), &f);
        let fac = g.factor(&f).unwrap();
        assert_eq!(fac.factors, vec![(p(&f, &[0, 1]), 2), (p(&f, &[1, 1]), 4), (p(&f, &[1, 1, 1]), 1)]);
        assert_eq!(Poly::<u32>::zero().factor(&f), Err(Error::ZeroPolynomial));
    }

    #[test]
    fn necklace_census() {
        for q in [2u32, 3, 5] {
            let f = Fq::new(q, 1).unwrap();
            for d in 1..=4 {
                assert_eq!(irreducibles(&f, d).len() as u64, necklace_count(q as u64, d as u64));
            }
        }
    }

    #[test]
    fn roots_in_extension() {
        let f = Fq::new(3, 1).unwrap();
        let e = f.ext(2);
        let g = p(&f, &[1, 0, 1]).map(&e, |&c| e.embed(c));
        let r = g.roots(&e);
        assert_eq!(r.len(), 2);
        for x in &r {
            assert!(e.is_zero(&g.eval(x, &e)));
        }
        let f2 = Fq::new(2, 1).unwrap();
        let e4 = f2.ext(4);
        let h = p(&f2, &[1, 1, 1]).map(&e4, |&c| e4.embed(c));
        assert_eq!(h.roots(&e4).len(), 2);
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        proptest! {
            #![proptest_config(ProptestConfig::with_cases(500))]
            #[test]
            fn factor_round_trip(pi in 0usize..3, coeffs in proptest::collection::vec(0u32..5, 1..10)) {
                let prime = [2u32, 3, 5][pi];
                let f = Fq::new(prime, 1).unwrap();
                let g = Poly::from_coeffs(&f, coeffs.iter().map(|c| c % prime).collect());
                prop_assume!(!g.is_zero());
                let fac = g.factor(&f).unwrap();
                let mut prod = Poly::constant(&f, fac.lead);
                for (h, m) in &fac.factors {
                    prop_assert!(h.is_monic(&f));
                    prop_assert!(h.is_irreducible(&f));
                    prod = prod.mul(&h.pow(*m, &f), &f);
                }
                prop_assert_eq!(prod, g);
                for w in fac.factors.windows(2) {
                    prop_assert!(canonical_cmp(&w[0].0, &w[1].0).is_lt());
                }
            }
        }
    }
}
