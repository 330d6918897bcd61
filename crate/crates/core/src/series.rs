//! Truncated Laurent series over a residue field.

use std::sync::Arc;

use crate::field::{ExtElem, ExtField, Field};

/// `sum coeffs[i] * t^(val + i) + O(t^(val + coeffs.len()))`.
///
/// The leading coefficient may be zero unless the series has been
/// [normalized](Laurent::normalize); the absolute precision is always exact.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Laurent {
    pub val: i64,
    pub coeffs: Vec<ExtElem>,
}

impl Laurent {
    /// The constant `c` known to relative precision `len`.
    pub fn constant(field: &Arc<ExtField>, c: ExtElem, len: usize) -> Laurent {
        let mut coeffs = vec![field.zero(); len];
        if len > 0 {
            coeffs[0] = c;
        }
        Laurent { val: 0, coeffs }
    }

    /// The exact monomial `c * t^k` carried to absolute precision `k + len`.
    pub fn monomial(field: &Arc<ExtField>, c: ExtElem, k: i64, len: usize) -> Laurent {
        let mut s = Self::constant(field, c, len);
        s.val = k;
        s
    }

    /// Absolute precision: everything from this exponent on is unknown.
    pub fn precision(&self) -> i64 {
        self.val + self.coeffs.len() as i64
    }

    /// Coefficient of t^k (zero below the stored range); `None` beyond the precision.
    pub fn coeff(&self, field: &Arc<ExtField>, k: i64) -> Option<ExtElem> {
        if k >= self.precision() {
            None
        } else if k < self.val {
            Some(field.zero())
        } else {
            Some(self.coeffs[(k - self.val) as usize].clone())
        }
    }

    /// Strip leading zeros. A series with no nonzero coefficient keeps
    /// `val = precision` and becomes empty.
    pub fn normalize(mut self, field: &Arc<ExtField>) -> Laurent {
        let lead = self.coeffs.iter().position(|c| !field.is_zero(c));
        match lead {
            Some(k) => {
                self.coeffs.drain(..k);
                self.val += k as i64;
            }
            None => {
                self.val = self.precision();
                self.coeffs.clear();
            }
        }
        self
    }

    pub fn is_known_zero(&self, field: &Arc<ExtField>) -> bool {
        self.coeffs.iter().all(|c| field.is_zero(c))
    }

    pub fn truncate(mut self, len: usize) -> Laurent {
        self.coeffs.truncate(len);
        self
    }

    /// Drop everything at or beyond absolute exponent `prec`.
    pub fn truncate_abs(mut self, prec: i64) -> Laurent {
        let keep = (prec - self.val).max(0) as usize;
        self.coeffs.truncate(keep);
        self
    }

    pub fn add(&self, other: &Laurent, field: &Arc<ExtField>) -> Laurent {
        let val = self.val.min(other.val);
        let prec = self.precision().min(other.precision());
        let len = (prec - val).max(0) as usize;
        let coeffs = (0..len as i64)
            .map(|i| {
                let k = val + i;
                field.add(&self.coeff(field, k).unwrap(), &other.coeff(field, k).unwrap())
            })
            .collect();
        Laurent { val, coeffs }
    }

    pub fn neg(&self, field: &Arc<ExtField>) -> Laurent {
        Laurent { val: self.val, coeffs: self.coeffs.iter().map(|c| field.neg(c)).collect() }
    }

    pub fn sub(&self, other: &Laurent, field: &Arc<ExtField>) -> Laurent {
        self.add(&other.neg(field), field)
    }

    pub fn scale(&self, c: &ExtElem, field: &Arc<ExtField>) -> Laurent {
        Laurent { val: self.val, coeffs: self.coeffs.iter().map(|a| field.mul(a, c)).collect() }
    }

    pub fn mul(&self, other: &Laurent, field: &Arc<ExtField>) -> Laurent {
        let len = self.coeffs.len().min(other.coeffs.len());
        let mut coeffs = vec![field.zero(); len];
        for (i, a) in self.coeffs.iter().take(len).enumerate() {
            if field.is_zero(a) {
                continue;
            }
            for (j, b) in other.coeffs.iter().take(len - i).enumerate() {
                coeffs[i + j] = field.add(&coeffs[i + j], &field.mul(a, b));
            }
        }
        Laurent { val: self.val + other.val, coeffs }
    }

    /// Multiplicative inverse; `None` when no coefficient is known to be nonzero.
    pub fn inv(&self, field: &Arc<ExtField>) -> Option<Laurent> {
        let s = self.clone().normalize(field);
        if s.coeffs.is_empty() {
            return None;
        }
        let n = s.coeffs.len();
        let inv0 = field.inv(&s.coeffs[0]).unwrap();
        let mut out = vec![field.zero(); n];
        out[0] = inv0.clone();
        for k in 1..n {
            let mut acc = field.zero();
            for i in 1..=k {
                acc = field.add(&acc, &field.mul(&s.coeffs[i], &out[k - i]));
            }
            out[k] = field.neg(&field.mul(&acc, &inv0));
        }
        Some(Laurent { val: -s.val, coeffs: out })
    }

    pub fn div(&self, other: &Laurent, field: &Arc<ExtField>) -> Option<Laurent> {
        other.inv(field).map(|i| self.mul(&i, field))
    }

    /// Add an exact constant.
    pub fn add_constant(mut self, c: &ExtElem, field: &Arc<ExtField>) -> Laurent {
        if self.precision() <= 0 || field.is_zero(c) {
            return self;
        }
        if self.val > 0 {
            let pad = self.val as usize;
            self.coeffs.splice(0..0, std::iter::repeat_n(field.zero(), pad));
            self.val = 0;
        }
        let idx = (-self.val) as usize;
        self.coeffs[idx] = field.add(&self.coeffs[idx], c);
        self
    }

    /// Formal derivative d/dt.
    pub fn derivative(&self, field: &Arc<ExtField>) -> Laurent {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(i, c)| field.mul(c, &field.from_int(self.val + i as i64)))
            .collect();
        Laurent { val: self.val - 1, coeffs }
    }

    /// Evaluate a base-field polynomial (coefficients low to high) at this series.
    pub fn eval_poly(&self, poly: &[u32], field: &Arc<ExtField>) -> Laurent {
        let len = self.coeffs.len();
        let mut acc = Laurent::constant(field, field.zero(), len);
        let mut first = true;
        for &c in poly.iter().rev() {
            if first {
                acc = Laurent::constant(field, field.embed(c), len);
                first = false;
                continue;
            }
            acc = acc.mul(self, field).add_constant(&field.embed(c), field);
        }
        acc
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Fq;

    #[test]
    fn geometric_series() {
        let f = Fq::new(5, 1).unwrap();
        let e = f.ext(1);
        // 1 - t
        let s = Laurent { val: 0, coeffs: vec![e.one(), e.from_int(-1), e.zero(), e.zero()] };
        let inv = s.inv(&e).unwrap();
        assert_eq!(inv.coeffs, vec![e.one(); 4]);
        let prod = s.mul(&inv, &e);
        assert_eq!(prod.coeffs, vec![e.one(), e.zero(), e.zero(), e.zero()]);
    }

    #[test]
    fn precision_bookkeeping() {
        let f = Fq::new(3, 1).unwrap();
        let e = f.ext(1);
        let a = Laurent { val: -1, coeffs: vec![e.one(), e.one(), e.one()] };
        let b = Laurent { val: 0, coeffs: vec![e.one(); 5] };
        assert_eq!(a.add(&b, &e).precision(), 2);
        assert_eq!(a.mul(&b, &e).precision(), 2);
        let z = Laurent { val: 0, coeffs: vec![e.zero(); 3] }.normalize(&e);
        assert_eq!((z.val, z.coeffs.len()), (3, 0));
        assert!(z.inv(&e).is_none());
        let d = a.derivative(&e);
        assert_eq!(d.val, -2);
        assert_eq!(d.coeffs[0], e.from_int(-1));
    }
}
