//! Dense row-major matrices over a prime field.
//!
//! Dimensions stay at desk scale (ambient ≤ 6 or so), so there is no
//! sparsity or bit packing; exactness and canonical forms are what matter.

use crate::error::{Error, Result};
use crate::field::FieldSpec;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct MatrixGF {
    field: FieldSpec,
    rows: usize,
    cols: usize,
    entries: Vec<u64>,
}

impl MatrixGF {
    pub fn zeros(field: FieldSpec, rows: usize, cols: usize) -> Self {
        MatrixGF {
            field,
            rows,
            cols,
            entries: vec![0; rows * cols],
        }
    }

    pub fn identity(field: FieldSpec, n: usize) -> Self {
        let mut m = Self::zeros(field, n, n);
        for i in 0..n {
            m[(i, i)] = 1;
        }
        m
    }

    /// Builds a matrix from row vectors, reducing every entry mod q.
    pub fn from_rows(field: FieldSpec, cols: usize, rows: &[Vec<u64>]) -> Result<Self> {
        let mut entries = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            if r.len() != cols {
                return Err(Error::DimensionMismatch {
                    expected: cols,
                    got: r.len(),
                });
            }
            entries.extend(r.iter().map(|&a| field.reduce(a)));
        }
        Ok(MatrixGF {
            field,
            rows: rows.len(),
            cols,
            entries,
        })
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, r: usize) -> &[u64] {
        &self.entries[r * self.cols..(r + 1) * self.cols]
    }

    pub fn row_vectors(&self) -> impl Iterator<Item = &[u64]> {
        (0..self.rows).map(|r| self.row(r))
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|&a| a == 0)
    }

    pub fn transpose(&self) -> MatrixGF {
        let mut t = MatrixGF::zeros(self.field, self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t[(c, r)] = self[(r, c)];
            }
        }
        t
    }

    pub fn mul(&self, rhs: &MatrixGF) -> MatrixGF {
        assert_eq!(self.cols, rhs.rows, "inner dimensions must agree");
        let f = self.field;
        let mut out = MatrixGF::zeros(f, self.rows, rhs.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = self[(r, k)];
                if a == 0 {
                    continue;
                }
                for c in 0..rhs.cols {
                    out[(r, c)] = f.add(out[(r, c)], f.mul(a, rhs[(k, c)]));
                }
            }
        }
        out
    }

    /// Applies the matrix to a vector (matrix times column vector).
    pub fn apply(&self, v: &[u64]) -> Vec<u64> {
        assert_eq!(v.len(), self.cols);
        let f = self.field;
        (0..self.rows)
            .map(|r| {
                let mut acc = 0;
                for c in 0..self.cols {
                    acc = f.add(acc, f.mul(self[(r, c)], v[c]));
                }
                acc
            })
            .collect()
    }

    pub fn pow(&self, e: usize) -> MatrixGF {
        assert_eq!(self.rows, self.cols, "only square matrices have powers");
        let mut acc = MatrixGF::identity(self.field, self.rows);
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for c in 0..self.cols {
            self.entries.swap(a * self.cols + c, b * self.cols + c);
        }
    }

    fn scale_row(&mut self, r: usize, s: u64) {
        let f = self.field;
        for c in 0..self.cols {
            self[(r, c)] = f.mul(self[(r, c)], s);
        }
    }

    /// row r -= s * row src
    fn sub_scaled_row(&mut self, r: usize, src: usize, s: u64) {
        let f = self.field;
        for c in 0..self.cols {
            let delta = f.mul(s, self[(src, c)]);
            self[(r, c)] = f.sub(self[(r, c)], delta);
        }
    }

    /// The unique reduced row echelon form, with zero rows removed.
    pub fn rref(&self) -> MatrixGF {
        let mut m = self.clone();
        let f = m.field;
        let mut pivot_row = 0;
        for col in 0..m.cols {
            if pivot_row == m.rows {
                break;
            }
            let Some(r) = (pivot_row..m.rows).find(|&r| m[(r, col)] != 0) else {
                continue;
            };
            m.swap_rows(pivot_row, r);
            let inv = f.inv(m[(pivot_row, col)]);
            m.scale_row(pivot_row, inv);
            for r2 in 0..m.rows {
                if r2 != pivot_row && m[(r2, col)] != 0 {
                    let s = m[(r2, col)];
                    m.sub_scaled_row(r2, pivot_row, s);
                }
            }
            pivot_row += 1;
        }
        // after elimination all rows past pivot_row are zero
        m.entries.truncate(pivot_row * m.cols);
        m.rows = pivot_row;
        m
    }

    pub fn rank(&self) -> usize {
        self.rref().rows
    }

    /// Pivot columns, assuming `self` already is an RREF.
    pub fn pivot_columns(&self) -> Vec<usize> {
        self.row_vectors()
            .map(|row| row.iter().position(|&a| a != 0).expect("zero row in RREF"))
            .collect()
    }

    /// A canonical (RREF) basis of the right kernel {v : M v = 0}.
    pub fn kernel(&self) -> MatrixGF {
        let f = self.field;
        let r = self.rref();
        let pivots = r.pivot_columns();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        let mut rows = Vec::with_capacity(free.len());
        for &fc in &free {
            let mut v = vec![0u64; self.cols];
            v[fc] = 1;
            for (i, &p) in pivots.iter().enumerate() {
                v[p] = f.neg(r[(i, fc)]);
            }
            rows.push(v);
        }
        MatrixGF::from_rows(f, self.cols, &rows)
            .expect("kernel rows have ambient length")
            .rref()
    }
}

impl std::ops::Index<(usize, usize)> for MatrixGF {
    type Output = u64;
    fn index(&self, (r, c): (usize, usize)) -> &u64 {
        &self.entries[r * self.cols + c]
    }
}

impl std::ops::IndexMut<(usize, usize)> for MatrixGF {
    fn index_mut(&mut self, (r, c): (usize, usize)) -> &mut u64 {
        &mut self.entries[r * self.cols + c]
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f(q: u64) -> FieldSpec {
        FieldSpec::new(q).unwrap()
    }

    fn m(q: u64, cols: usize, rows: &[Vec<u64>]) -> MatrixGF {
        MatrixGF::from_rows(f(q), cols, rows).unwrap()
    }

    #[test]
    fn rref_identity_is_identity() {
        let id = MatrixGF::identity(f(2), 3);
        assert_eq!(id.rref(), id);
    }

    #[test]
    fn rref_collapses_duplicate_rows() {
        let a = m(2, 2, &[vec![1, 1], vec![1, 1]]);
        assert_eq!(a.rref(), m(2, 2, &[vec![1, 1]]));
    }

    #[test]
    fn rref_proportional_rows_over_f3() {
        // second row is twice the first
        let a = m(3, 2, &[vec![2, 1], vec![1, 2]]);
        assert_eq!(a.rref(), m(3, 2, &[vec![1, 2]]));
    }

    #[test]
    fn rref_is_idempotent() {
        let a = m(
            5,
            4,
            &[vec![2, 3, 0, 1], vec![4, 1, 1, 0], vec![1, 4, 1, 4]],
        );
        let r = a.rref();
        assert_eq!(r.rref(), r);
    }

    #[test]
    fn kernel_annihilates() {
        let a = m(3, 4, &[vec![1, 2, 0, 1], vec![0, 1, 1, 2]]);
        let k = a.kernel();
        assert_eq!(k.rows() + a.rank(), a.cols());
        for v in k.row_vectors() {
            assert!(a.apply(v).iter().all(|&x| x == 0));
        }
    }

    #[test]
    fn kernel_of_identity_is_trivial() {
        assert_eq!(MatrixGF::identity(f(2), 3).kernel().rows(), 0);
    }

    #[test]
    fn pow_matches_repeated_mul() {
        let a = m(2, 3, &[vec![0, 1, 0], vec![0, 0, 1], vec![0, 0, 0]]);
        assert_eq!(a.pow(0), MatrixGF::identity(f(2), 3));
        assert_eq!(a.pow(2), a.mul(&a));
        assert!(a.pow(3).is_zero());
    }
}
