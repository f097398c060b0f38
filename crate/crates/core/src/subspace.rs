//! Canonical subspaces of F_q^d.
//!
//! A subspace is stored as the reduced row echelon form of any generating
//! set, one basis vector per row. RREF is unique per subspace, so equality
//! and hashing are plain representation comparisons, which is what lets
//! flags be bucketed by orbit invariants downstream.

use crate::error::{Error, Result};
use crate::field::FieldSpec;
use crate::matrix::MatrixGF;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Subspace {
    ambient_dim: usize,
    basis: MatrixGF,
    pivots: Vec<usize>,
}

impl Subspace {
    pub fn zero(field: FieldSpec, ambient_dim: usize) -> Self {
        Subspace {
            ambient_dim,
            basis: MatrixGF::zeros(field, 0, ambient_dim),
            pivots: Vec::new(),
        }
    }

    pub fn full(field: FieldSpec, ambient_dim: usize) -> Self {
        Subspace {
            ambient_dim,
            basis: MatrixGF::identity(field, ambient_dim),
            pivots: (0..ambient_dim).collect(),
        }
    }

    /// The canonical subspace spanned by the given vectors.
    pub fn from_generators(
        field: FieldSpec,
        ambient_dim: usize,
        vectors: &[Vec<u64>],
    ) -> Result<Self> {
        let basis = MatrixGF::from_rows(field, ambient_dim, vectors)?.rref();
        let pivots = basis.pivot_columns();
        Ok(Subspace {
            ambient_dim,
            basis,
            pivots,
        })
    }

    pub(crate) fn from_rref(basis: MatrixGF) -> Self {
        debug_assert_eq!(basis, basis.rref());
        let pivots = basis.pivot_columns();
        Subspace {
            ambient_dim: basis.cols(),
            basis,
            pivots,
        }
    }

    pub fn field(&self) -> FieldSpec {
        self.basis.field()
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn dim(&self) -> usize {
        self.basis.rows()
    }

    pub fn basis(&self) -> &MatrixGF {
        &self.basis
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    pub fn is_zero(&self) -> bool {
        self.dim() == 0
    }

    fn check_compatible(&self, other: &Subspace) -> Result<()> {
        if self.ambient_dim != other.ambient_dim {
            return Err(Error::AmbientMismatch(self.ambient_dim, other.ambient_dim));
        }
        if self.field() != other.field() {
            return Err(Error::FieldMismatch(
                self.field().modulus(),
                other.field().modulus(),
            ));
        }
        Ok(())
    }

    /// Reduces `v` modulo this subspace; the result is zero iff `v` lies in it.
    pub fn reduce_vector(&self, v: &[u64]) -> Vec<u64> {
        let f = self.field();
        let mut v = v.to_vec();
        for (i, &p) in self.pivots.iter().enumerate() {
            if v[p] != 0 {
                let s = v[p];
                for c in 0..self.ambient_dim {
                    let delta = f.mul(s, self.basis[(i, c)]);
                    v[c] = f.sub(v[c], delta);
                }
            }
        }
        v
    }

    pub fn contains_vector(&self, v: &[u64]) -> bool {
        self.reduce_vector(v).iter().all(|&a| a == 0)
    }

    /// True iff `other` is contained in `self`.
    pub fn contains(&self, other: &Subspace) -> Result<bool> {
        self.check_compatible(other)?;
        Ok(other.basis.row_vectors().all(|r| self.contains_vector(r)))
    }

    pub fn sum(&self, other: &Subspace) -> Result<Subspace> {
        self.check_compatible(other)?;
        let rows: Vec<Vec<u64>> = self
            .basis
            .row_vectors()
            .chain(other.basis.row_vectors())
            .map(|r| r.to_vec())
            .collect();
        Subspace::from_generators(self.field(), self.ambient_dim, &rows)
    }

    /// Set-theoretic intersection, computed from the left kernel of the
    /// stacked basis: a relation sum(c_i u_i) + sum(e_j w_j) = 0 exhibits
    /// sum(c_i u_i) as an intersection vector, and all of them arise so.
    pub fn intersect(&self, other: &Subspace) -> Result<Subspace> {
        self.check_compatible(other)?;
        let f = self.field();
        if self.is_zero() || other.is_zero() {
            return Ok(Subspace::zero(f, self.ambient_dim));
        }
        let stacked_rows: Vec<Vec<u64>> = self
            .basis
            .row_vectors()
            .chain(other.basis.row_vectors())
            .map(|r| r.to_vec())
            .collect();
        let stacked = MatrixGF::from_rows(f, self.ambient_dim, &stacked_rows)?;
        let relations = stacked.transpose().kernel();
        let k = self.dim();
        let mut vectors = Vec::with_capacity(relations.rows());
        for rel in relations.row_vectors() {
            let mut v = vec![0u64; self.ambient_dim];
            for (i, &c) in rel[..k].iter().enumerate() {
                if c != 0 {
                    for (x, &b) in v.iter_mut().zip(self.basis.row(i)) {
                        *x = f.add(*x, f.mul(c, b));
                    }
                }
            }
            vectors.push(v);
        }
        Subspace::from_generators(f, self.ambient_dim, &vectors)
    }

    /// The image {M v : v in self} under a square matrix of ambient size.
    pub fn image(&self, m: &MatrixGF) -> Result<Subspace> {
        if m.rows() != self.ambient_dim || m.cols() != self.ambient_dim {
            return Err(Error::DimensionMismatch {
                expected: self.ambient_dim,
                got: m.cols(),
            });
        }
        let rows: Vec<Vec<u64>> = self.basis.row_vectors().map(|r| m.apply(r)).collect();
        Subspace::from_generators(self.field(), self.ambient_dim, &rows)
    }

    /// Coordinates of `v` in the RREF basis, if `v` lies in the subspace.
    ///
    /// For an RREF basis the coordinate of the i-th basis row is just the
    /// entry of `v` at the i-th pivot column.
    pub fn coordinates(&self, v: &[u64]) -> Option<Vec<u64>> {
        let coords: Vec<u64> = self.pivots.iter().map(|&p| v[p]).collect();
        let f = self.field();
        let mut rebuilt = vec![0u64; self.ambient_dim];
        for (i, &c) in coords.iter().enumerate() {
            for (x, &b) in rebuilt.iter_mut().zip(self.basis.row(i)) {
                *x = f.add(*x, f.mul(c, b));
            }
        }
        if rebuilt == v {
            Some(coords)
        } else {
            None
        }
    }

    /// Maps a vector of coordinates (w.r.t. this subspace's basis) back to
    /// the ambient space.
    pub fn from_coordinates(&self, coords: &[u64]) -> Vec<u64> {
        assert_eq!(coords.len(), self.dim());
        let f = self.field();
        let mut v = vec![0u64; self.ambient_dim];
        for (i, &c) in coords.iter().enumerate() {
            if c != 0 {
                for (x, &b) in v.iter_mut().zip(self.basis.row(i)) {
                    *x = f.add(*x, f.mul(c, b));
                }
            }
        }
        v
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f(q: u64) -> FieldSpec {
        FieldSpec::new(q).unwrap()
    }

    fn span(q: u64, d: usize, rows: &[Vec<u64>]) -> Subspace {
        Subspace::from_generators(f(q), d, rows).unwrap()
    }

    #[test]
    fn empty_generators_give_zero_subspace() {
        let s = span(2, 3, &[]);
        assert_eq!(s.dim(), 0);
        assert_eq!(s.ambient_dim(), 3);
    }

    #[test]
    fn generators_are_canonicalized() {
        // {e1, e1+e2} spans the same plane as {e1, e2}
        let a = span(2, 3, &[vec![1, 0, 0], vec![1, 1, 0]]);
        let b = span(2, 3, &[vec![0, 1, 0], vec![1, 0, 0]]);
        assert_eq!(a, b);
        assert_eq!(a.dim(), 2);
    }

    #[test]
    fn single_vector_over_f3() {
        let s = span(3, 3, &[vec![1, 1, 1]]);
        assert_eq!(s.dim(), 1);
        assert_eq!(s.basis().row(0), &[1, 1, 1]);
    }

    #[test]
    fn intersect_is_idempotent() {
        let u = span(3, 4, &[vec![1, 0, 2, 1], vec![0, 1, 1, 1]]);
        assert_eq!(u.intersect(&u).unwrap(), u);
    }

    #[test]
    fn sum_of_axes_is_plane() {
        let e1 = span(2, 2, &[vec![1, 0]]);
        let e2 = span(2, 2, &[vec![0, 1]]);
        assert_eq!(e1.sum(&e2).unwrap(), Subspace::full(f(2), 2));
    }

    #[test]
    fn image_under_zero_and_identity() {
        let u = span(2, 3, &[vec![1, 1, 0], vec![0, 0, 1]]);
        let zero = MatrixGF::zeros(f(2), 3, 3);
        let id = MatrixGF::identity(f(2), 3);
        assert!(u.image(&zero).unwrap().is_zero());
        assert_eq!(u.image(&id).unwrap(), u);
    }

    #[test]
    fn image_of_full_space_under_jordan_block() {
        // single Jordan block of size 3 over F_2: image of the full space
        // is the span of the two lowest basis vectors
        let x =
            MatrixGF::from_rows(f(2), 3, &[vec![0, 1, 0], vec![0, 0, 1], vec![0, 0, 0]]).unwrap();
        let full = Subspace::full(f(2), 3);
        let im = full.image(&x).unwrap();
        assert_eq!(im, span(2, 3, &[vec![1, 0, 0], vec![0, 1, 0]]));
        // ... which is exactly ker x^2
        assert_eq!(im, Subspace::from_rref(x.pow(2).kernel()));
    }

    #[test]
    fn ambient_mismatch_is_an_error() {
        let u = span(2, 2, &[vec![1, 0]]);
        let w = span(2, 3, &[vec![1, 0, 0]]);
        assert!(matches!(u.sum(&w), Err(Error::AmbientMismatch(2, 3))));
    }

    #[test]
    fn coordinates_roundtrip() {
        let u = span(5, 4, &[vec![1, 2, 0, 3], vec![0, 0, 1, 4]]);
        let v = u.from_coordinates(&[2, 3]);
        assert_eq!(u.coordinates(&v), Some(vec![2, 3]));
        assert_eq!(u.coordinates(&[1, 0, 0, 0]), None);
    }
}
