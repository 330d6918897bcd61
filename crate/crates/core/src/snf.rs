//! Smith normal form of integer matrices with unimodular transforms.

/// Row-major integer matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntegerMatrix {
    pub rows: usize,
    pub cols: usize,
    pub data: Vec<i128>,
}

/// `u * a * v = d` with `d` diagonal, each diagonal entry dividing the next.
#[derive(Clone, Debug)]
pub struct Smith {
    pub d: IntegerMatrix,
    pub u: IntegerMatrix,
    pub v: IntegerMatrix,
    /// Inverse of `v`, used to read coordinates on the diagonal basis.
    pub v_inv: IntegerMatrix,
}

impl IntegerMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntegerMatrix { rows, cols, data: vec![0; rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = 1;
        }
        m
    }

    pub fn from_rows(rows: &[Vec<i128>]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        let mut m = Self::zeros(rows.len(), cols);
        for (i, r) in rows.iter().enumerate() {
            assert_eq!(r.len(), cols);
            m.data[i * cols..(i + 1) * cols].copy_from_slice(r);
        }
        m
    }

    pub fn get(&self, i: usize, j: usize) -> i128 {
        self.data[i * self.cols + j]
    }

    fn at(&mut self, i: usize, j: usize) -> &mut i128 {
        &mut self.data[i * self.cols + j]
    }

    pub fn mul(&self, other: &IntegerMatrix) -> IntegerMatrix {
        assert_eq!(self.cols, other.rows);
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a == 0 {
                    continue;
                }
                for j in 0..other.cols {
                    *out.at(i, j) += a * other.get(k, j);
                }
            }
        }
        out
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        for i in 0..self.rows {
            self.data.swap(i * self.cols + a, i * self.cols + b);
        }
    }

    /// row[a] += k * row[b]
    fn add_row(&mut self, a: usize, b: usize, k: i128) {
        for j in 0..self.cols {
            let v = self.get(b, j);
            *self.at(a, j) += k * v;
        }
    }

    /// col[a] += k * col[b]
    fn add_col(&mut self, a: usize, b: usize, k: i128) {
        for i in 0..self.rows {
            let v = self.get(i, b);
            *self.at(i, a) += k * v;
        }
    }

    fn neg_row(&mut self, a: usize) {
        for j in 0..self.cols {
            *self.at(a, j) *= -1;
        }
    }

    /// Diagonal entries of the Smith form (length min(rows, cols)).
    pub fn diagonal(&self) -> Vec<i128> {
        (0..self.rows.min(self.cols)).map(|i| self.get(i, i)).collect()
    }
}

/// Smith normal form by repeated pivoting on the smallest nonzero entry.
pub fn smith_normal_form(a: &IntegerMatrix) -> Smith {
    let (m, n) = (a.rows, a.cols);
    let mut d = a.clone();
    let mut u = IntegerMatrix::identity(m);
    let mut v = IntegerMatrix::identity(n);
    let mut v_inv = IntegerMatrix::identity(n);
    // column ops on d are mirrored on v (right) and inversely on v_inv (left, rows)
    let swap_c = |d: &mut IntegerMatrix, v: &mut IntegerMatrix, vi: &mut IntegerMatrix, a: usize, b: usize| {
        d.swap_cols(a, b);
        v.swap_cols(a, b);
        vi.swap_rows(a, b);
    };
    let add_c = |d: &mut IntegerMatrix, v: &mut IntegerMatrix, vi: &mut IntegerMatrix, a: usize, b: usize, k: i128| {
        d.add_col(a, b, k);
        v.add_col(a, b, k);
        vi.add_row(b, a, -k);
    };
    for t in 0..m.min(n) {
        loop {
            // smallest nonzero entry in the lower-right block
            let mut best: Option<(usize, usize)> = None;
            for i in t..m {
                for j in t..n {
                    let x = d.get(i, j);
                    if x != 0 && best.is_none_or(|(bi, bj)| x.abs() < d.get(bi, bj).abs()) {
                        best = Some((i, j));
                    }
                }
            }
            let Some((pi, pj)) = best else {
                return finish(d, u, v, v_inv);
            };
            d.swap_rows(t, pi);
            u.swap_rows(t, pi);
            swap_c(&mut d, &mut v, &mut v_inv, t, pj);
            let p = d.get(t, t);
            let mut clean = true;
            for i in t + 1..m {
                let k = d.get(i, t).div_euclid(p);
                if k != 0 {
                    d.add_row(i, t, -k);
                    u.add_row(i, t, -k);
                }
                if d.get(i, t) != 0 {
                    clean = false;
                }
            }
            for j in t + 1..n {
                let k = d.get(t, j).div_euclid(p);
                if k != 0 {
                    add_c(&mut d, &mut v, &mut v_inv, j, t, -k);
                }
                if d.get(t, j) != 0 {
                    clean = false;
                }
            }
            if !clean {
                continue;
            }
            // divisibility: fold any entry not divisible by p into row t
            let bad = (t + 1..m).find(|&i| (t + 1..n).any(|j| d.get(i, j) % p != 0));
            if let Some(i) = bad {
                d.add_row(t, i, 1);
                u.add_row(t, i, 1);
                continue;
            }
            if p < 0 {
                d.neg_row(t);
                u.neg_row(t);
            }
            break;
        }
    }
    finish(d, u, v, v_inv)
}

fn finish(d: IntegerMatrix, u: IntegerMatrix, v: IntegerMatrix, v_inv: IntegerMatrix) -> Smith {
    Smith { d, u, v, v_inv }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn gcd(a: i128, b: i128) -> i128 {
        if b == 0 {
            a.abs()
        } else {
            gcd(b, a % b)
        }
    }

    #[test]
    fn known_form() {
        let a = IntegerMatrix::from_rows(&[vec![2, 4, 4], vec![-6, 6, 12], vec![10, -4, -16]]);
        let s = smith_normal_form(&a);
        assert_eq!(s.d.diagonal(), vec![2, 6, 12]);
        assert_eq!(s.u.mul(&a).mul(&s.v), s.d);
    }

    proptest! {
        #[test]
        fn smith_invariants(rows in 1usize..5, cols in 1usize..5, vals in proptest::collection::vec(-9i128..10, 16)) {
            let data: Vec<Vec<i128>> = (0..rows).map(|i| (0..cols).map(|j| vals[i * 4 + j]).collect()).collect();
            let a = IntegerMatrix::from_rows(&data);
            let s = smith_normal_form(&a);
            prop_assert_eq!(&s.u.mul(&a).mul(&s.v), &s.d);
            prop_assert_eq!(s.v.mul(&s.v_inv), IntegerMatrix::identity(cols));
            for i in 0..rows {
                for j in 0..cols {
                    if i != j {
                        prop_assert_eq!(s.d.get(i, j), 0);
                    }
                }
            }
            let diag = s.d.diagonal();
            for w in diag.windows(2) {
                prop_assert!(w[0] >= 0);
                if w[0] == 0 { prop_assert_eq!(w[1], 0); } else { prop_assert_eq!(w[1] % w[0], 0); }
            }
            // product of the first k invariant factors = gcd of k x k minors (k = 1)
            let g = vals.iter().take(rows * 4).enumerate().filter(|(idx, _)| idx % 4 < cols).fold(0, |acc, (_, &x)| gcd(acc, x));
            prop_assert_eq!(diag[0].abs(), g);
        }
    }
}
