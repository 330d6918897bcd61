//! Dense linear algebra over a field: row reduction, kernels and affine solves.

use crate::field::Field;

/// Row-major matrix over a field.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FieldMatrix<E> {
    rows: usize,
    cols: usize,
    data: Vec<E>,
}

impl<E: Clone + Eq> FieldMatrix<E> {
    pub fn zeros<F: Field<Elem = E>>(field: &F, rows: usize, cols: usize) -> Self {
        FieldMatrix { rows, cols, data: vec![field.zero(); rows * cols] }
    }

    pub fn from_rows<F: Field<Elem = E>>(field: &F, cols: usize, rows: Vec<Vec<E>>) -> Self {
        let mut m = Self::zeros(field, rows.len(), cols);
        for (i, r) in rows.into_iter().enumerate() {
            assert_eq!(r.len(), cols, "row length mismatch");
            for (j, v) in r.into_iter().enumerate() {
                m.data[i * cols + j] = v;
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &E {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: E) {
        self.data[i * self.cols + j] = v;
    }

    pub fn push_row(&mut self, row: Vec<E>) {
        assert_eq!(row.len(), self.cols, "row length mismatch");
        self.data.extend(row);
        self.rows += 1;
    }

    pub fn row(&self, i: usize) -> &[E] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    /// In-place reduced row echelon form; returns the pivot columns.
    pub fn rref<F: Field<Elem = E>>(&mut self, field: &F) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            if r == self.rows {
                break;
            }
            let Some(pr) = (r..self.rows).find(|&i| !field.is_zero(self.get(i, c))) else {
                continue;
            };
            if pr != r {
                for j in 0..self.cols {
                    self.data.swap(pr * self.cols + j, r * self.cols + j);
                }
            }
            let inv = field.inv(self.get(r, c)).unwrap();
            for j in c..self.cols {
                let v = field.mul(self.get(r, j), &inv);
                self.set(r, j, v);
            }
            for i in 0..self.rows {
                if i == r {
                    continue;
                }
                let factor = self.get(i, c).clone();
                if field.is_zero(&factor) {
                    continue;
                }
                for j in c..self.cols {
                    let v = field.sub(self.get(i, j), &field.mul(&factor, self.get(r, j)));
                    self.set(i, j, v);
                }
            }
            pivots.push(c);
            r += 1;
        }
        pivots
    }

    pub fn rank<F: Field<Elem = E>>(&self, field: &F) -> usize {
        self.clone().rref(field).len()
    }

    /// Basis of the right kernel {v : M v = 0}, one vector per free column,
    /// normalized so the free coordinate is 1 and later free coordinates are 0.
    pub fn kernel<F: Field<Elem = E>>(&self, field: &F) -> Vec<Vec<E>> {
        let mut m = self.clone();
        let pivots = m.rref(field);
        let mut is_pivot = vec![false; self.cols];
        for &p in &pivots {
            is_pivot[p] = true;
        }
        let mut out = Vec::new();
        for free in (0..self.cols).filter(|&c| !is_pivot[c]) {
            let mut v = vec![field.zero(); self.cols];
            v[free] = field.one();
            for (r, &pc) in pivots.iter().enumerate() {
                v[pc] = field.neg(m.get(r, free));
            }
            out.push(v);
        }
        out
    }

    /// One solution of M v = b, or `None` if the system is inconsistent.
    pub fn solve<F: Field<Elem = E>>(&self, b: &[E], field: &F) -> Option<Vec<E>> {
        assert_eq!(b.len(), self.rows);
        let mut aug = Self::zeros(field, self.rows, self.cols + 1);
        for i in 0..self.rows {
            for j in 0..self.cols {
                aug.set(i, j, self.get(i, j).clone());
            }
            aug.set(i, self.cols, b[i].clone());
        }
        let pivots = aug.rref(field);
        if pivots.last() == Some(&self.cols) {
            return None;
        }
        let mut v = vec![field.zero(); self.cols];
        for (r, &pc) in pivots.iter().enumerate() {
            v[pc] = aug.get(r, self.cols).clone();
        }
        Some(v)
    }

    pub fn mul_vec<F: Field<Elem = E>>(&self, v: &[E], field: &F) -> Vec<E> {
        (0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .fold(field.zero(), |acc, (a, b)| field.add(&acc, &field.mul(a, b)))
            })
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Fq;
    use proptest::prelude::*;

    #[test]
    fn kernel_of_rank_one() {
        let f = Fq::new(5, 1).unwrap();
        let m = FieldMatrix::from_rows(&f, 3, vec![vec![1, 2, 3], vec![2, 4, 1]]);
        let k = m.kernel(&f);
        assert_eq!(k.len(), 3 - m.rank(&f));
        for v in &k {
            assert!(m.mul_vec(v, &f).iter().all(|x| *x == 0));
        }
    }

    proptest! {
        #[test]
        fn rank_nullity(rows in 1usize..6, cols in 1usize..6, seed in proptest::collection::vec(0u32..7, 36)) {
            let f = Fq::new(7, 1).unwrap();
            let data: Vec<Vec<u32>> = (0..rows).map(|i| (0..cols).map(|j| seed[i * 6 + j]).collect()).collect();
            let m = FieldMatrix::from_rows(&f, cols, data);
            let k = m.kernel(&f);
            prop_assert_eq!(k.len() + m.rank(&f), cols);
            for v in &k {
                prop_assert!(m.mul_vec(v, &f).iter().all(|x| *x == 0));
            }
            let b = m.mul_vec(&seed[..cols], &f);
            let x = m.solve(&b, &f).unwrap();
            prop_assert_eq!(m.mul_vec(&x, &f), b);
        }
    }
}
