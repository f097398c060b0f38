//! Exhaustive, duplicate-free subspace enumeration.
//!
//! Subspaces are generated directly in canonical form: pick a strictly
//! increasing set of pivot columns, then run an odometer over the free
//! entries of the corresponding RREF shape. Every subspace appears exactly
//! once, in an order that depends only on (dim, k, q), so repeated runs
//! produce identical sequences.

use crate::error::{Error, Result};
use crate::field::FieldSpec;
use crate::matrix::MatrixGF;
use crate::subspace::Subspace;

/// Iterator over all k-dimensional RREF matrices with `dim` columns.
struct RrefShapes {
    field: FieldSpec,
    dim: usize,
    k: usize,
    pivots: Vec<usize>,
    free_positions: Vec<(usize, usize)>,
    free_values: Vec<u64>,
    started: bool,
    done: bool,
}

impl RrefShapes {
    fn new(field: FieldSpec, dim: usize, k: usize) -> Self {
        let done = k > dim;
        let pivots: Vec<usize> = (0..k).collect();
        let mut it = RrefShapes {
            field,
            dim,
            k,
            pivots,
            free_positions: Vec::new(),
            free_values: Vec::new(),
            started: false,
            done,
        };
        if !it.done {
            it.reset_free_slots();
        }
        it
    }

    /// In an RREF with pivot set P, entry (r, c) is free iff c > P[r] and
    /// c is not itself a pivot column.
    fn reset_free_slots(&mut self) {
        self.free_positions.clear();
        for (r, &p) in self.pivots.iter().enumerate() {
            for c in p + 1..self.dim {
                if !self.pivots.contains(&c) {
                    self.free_positions.push((r, c));
                }
            }
        }
        self.free_values = vec![0; self.free_positions.len()];
    }

    fn advance_pivots(&mut self) -> bool {
        // next k-combination of 0..dim in lexicographic order
        let k = self.k;
        if k == 0 {
            return false;
        }
        let mut i = k;
        loop {
            if i == 0 {
                return false;
            }
            i -= 1;
            if self.pivots[i] < self.dim - (k - i) {
                self.pivots[i] += 1;
                for j in i + 1..k {
                    self.pivots[j] = self.pivots[j - 1] + 1;
                }
                return true;
            }
        }
    }

    fn advance_values(&mut self) -> bool {
        let q = self.field.modulus();
        for slot in self.free_values.iter_mut().rev() {
            *slot += 1;
            if *slot < q {
                return true;
            }
            *slot = 0;
        }
        false
    }

    fn current(&self) -> MatrixGF {
        let mut m = MatrixGF::zeros(self.field, self.k, self.dim);
        for (r, &p) in self.pivots.iter().enumerate() {
            m[(r, p)] = 1;
        }
        for (&(r, c), &v) in self.free_positions.iter().zip(&self.free_values) {
            m[(r, c)] = v;
        }
        m
    }
}

impl Iterator for RrefShapes {
    type Item = MatrixGF;

    fn next(&mut self) -> Option<MatrixGF> {
        if self.done {
            return None;
        }
        if !self.started {
            self.started = true;
            return Some(self.current());
        }
        if self.advance_values() {
            return Some(self.current());
        }
        if self.advance_pivots() {
            self.reset_free_slots();
            return Some(self.current());
        }
        self.done = true;
        None
    }
}

/// Streams every k-dimensional subspace of `ambient` exactly once.
///
/// Internally subspaces are enumerated in the coordinates of the ambient
/// RREF basis and mapped back, so `ambient` may be any subspace of F_q^d.
pub fn enumerate_subspaces<'a>(
    ambient: &'a Subspace,
    k: usize,
) -> Result<impl Iterator<Item = Subspace> + 'a> {
    if k > ambient.dim() {
        return Err(Error::SubspaceDimOutOfRange {
            k,
            max: ambient.dim(),
        });
    }
    let field = ambient.field();
    let it = RrefShapes::new(field, ambient.dim(), k).map(move |coords| {
        let rows: Vec<Vec<u64>> = coords
            .row_vectors()
            .map(|r| ambient.from_coordinates(r))
            .collect();
        Subspace::from_generators(field, ambient.ambient_dim(), &rows)
            .expect("coordinate rows have ambient length")
    });
    Ok(it)
}

/// Streams every k-dimensional subspace between `lower` and `ambient`.
///
/// Such subspaces correspond one-to-one to (k - dim lower)-dimensional
/// subspaces of a complement of `lower` inside `ambient`, which keeps the
/// stream duplicate-free by construction.
pub fn enumerate_superspaces<'a>(
    lower: &Subspace,
    k: usize,
    ambient: &'a Subspace,
) -> Result<Box<dyn Iterator<Item = Subspace> + 'a>> {
    if k > ambient.dim() {
        return Err(Error::SubspaceDimOutOfRange {
            k,
            max: ambient.dim(),
        });
    }
    if k < lower.dim() {
        return Ok(Box::new(std::iter::empty()));
    }
    let field = ambient.field();
    let ambient_dim = ambient.ambient_dim();
    // express `lower` in ambient coordinates and find its free coordinates
    let coord_rows: Vec<Vec<u64>> = lower
        .basis()
        .row_vectors()
        .map(|r| {
            ambient
                .coordinates(r)
                .expect("lower subspace must be contained in the ambient")
        })
        .collect();
    let lower_coords = MatrixGF::from_rows(field, ambient.dim(), &coord_rows)
        .expect("coordinate rows")
        .rref();
    let pivots = lower_coords.pivot_columns();
    let free: Vec<usize> = (0..ambient.dim()).filter(|c| !pivots.contains(c)).collect();
    let extra = k - lower.dim();
    if extra > free.len() {
        return Ok(Box::new(std::iter::empty()));
    }
    let base_rows: Vec<Vec<u64>> = lower.basis().row_vectors().map(|r| r.to_vec()).collect();
    let ambient = ambient.clone();
    let it = RrefShapes::new(field, free.len(), extra).map(move |coords| {
        let mut rows = base_rows.clone();
        for r in coords.row_vectors() {
            let mut padded = vec![0u64; ambient.dim()];
            for (&fc, &v) in free.iter().zip(r) {
                padded[fc] = v;
            }
            rows.push(ambient.from_coordinates(&padded));
        }
        Subspace::from_generators(field, ambient_dim, &rows).expect("rows have ambient length")
    });
    Ok(Box::new(it))
}
