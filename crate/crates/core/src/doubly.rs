//! Doubly indexed flags: arrays (V_{i,j}) with V_{i,j} ⊆ A_i of dimension
//! kappa[i][j], nested in both indices. The maps phi and psi identify them
//! with the homogeneous stable flags of one orbit.

use std::collections::HashMap;

use crate::enumerate::enumerate_superspaces;
use crate::error::{Error, Result};
use crate::flags::{is_homogeneous, is_x_stable, PartialFlag};
use crate::nilpotent::NilpotentOperator;
use crate::strata::KappaMatrix;
use crate::subspace::Subspace;

/// An m×n grid of subspaces, nested along rows and columns, with row i
/// contained in the base flag member A_i.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct DoublyIndexedFlag {
    grid: Vec<Vec<Subspace>>,
}

impl DoublyIndexedFlag {
    pub fn grid(&self) -> &[Vec<Subspace>] {
        &self.grid
    }

    pub fn rows(&self) -> usize {
        self.grid.len()
    }

    pub fn cols(&self) -> usize {
        self.grid.first().map_or(0, Vec::len)
    }

    pub fn space(&self, i: usize, j: usize) -> &Subspace {
        &self.grid[i][j]
    }

    /// The kappa matrix this flag realizes: the grid of dimensions.
    pub fn kappa(&self) -> KappaMatrix {
        KappaMatrix::new(
            self.grid
                .iter()
                .map(|row| row.iter().map(Subspace::dim).collect())
                .collect(),
        )
    }

    /// Checks the defining conditions: row i inside A_i, nested both ways.
    pub fn validate(&self, op: &NilpotentOperator) -> Result<()> {
        let m = self.rows();
        let n = self.cols();
        if m != op.order() {
            return Err(Error::InvalidDoublyFlag);
        }
        for i in 0..m {
            let a_i = &op.a_flag().spaces[i];
            for j in 0..n {
                let v = &self.grid[i][j];
                if !a_i.contains(v)? {
                    return Err(Error::InvalidDoublyFlag);
                }
                if i + 1 < m && !self.grid[i + 1][j].contains(v)? {
                    return Err(Error::InvalidDoublyFlag);
                }
                if j + 1 < n && !self.grid[i][j + 1].contains(v)? {
                    return Err(Error::InvalidDoublyFlag);
                }
            }
        }
        Ok(())
    }
}

/// The canonical point of the variety of doubly indexed flags: order a
/// basis of A_m so that the A_i basis vectors come first (greedy extension
/// along the base flag, which follows the Jordan-label order), then let
/// V_{i,j} be the span of the first kappa[i][j] vectors.
pub fn base_point(op: &NilpotentOperator, kappa: &KappaMatrix) -> Result<DoublyIndexedFlag> {
    kappa.validate(op.d_dims())?;
    let field = op.field();
    let d = op.dim();
    let m = kappa.rows();
    let n = kappa.cols();

    let mut ordered: Vec<Vec<u64>> = Vec::new();
    let mut span = Subspace::zero(field, d);
    for a_i in &op.a_flag().spaces {
        for row in a_i.basis().row_vectors() {
            if !span.contains_vector(row) {
                ordered.push(row.to_vec());
                span = span
                    .sum(&Subspace::from_generators(field, d, &[row.to_vec()])?)
                    .expect("same ambient");
            }
        }
    }

    let grid = (0..m)
        .map(|i| {
            (0..n)
                .map(|j| {
                    Subspace::from_generators(field, d, &ordered[..kappa.entry(i, j)])
                        .expect("prefix rows have ambient length")
                })
                .collect()
        })
        .collect();
    Ok(DoublyIndexedFlag { grid })
}

/// psi: assembles the partial flag W_j = ⊕_i lift(V_{i,j}), where the lift
/// inverts x^{m-i} from A_i back up to the graded piece E_{m-i+1}.
///
/// The output is x-stable, homogeneous, and has orbit signature
/// alpha_from_kappa of the input's kappa matrix.
pub fn psi(op: &NilpotentOperator, flag: &DoublyIndexedFlag) -> Result<PartialFlag> {
    flag.validate(op)?;
    let m = flag.rows();
    let n = flag.cols();
    let mut spaces = Vec::with_capacity(n);
    for j in 0..n {
        let mut w = Subspace::zero(op.field(), op.dim());
        let mut expect = 0usize;
        for i in 0..m {
            let lifted = flag.space(i, j).image(&op.lift_from_base(i + 1))?;
            expect += flag.space(i, j).dim();
            w = w.sum(&lifted)?;
        }
        // the lifts land in distinct graded pieces, so the sum is direct
        debug_assert_eq!(w.dim(), expect);
        spaces.push(w);
    }
    PartialFlag::new(spaces)
}

/// phi: sends an x-stable homogeneous flag to its doubly indexed shadow,
/// V_{i,j} = x^{m-i}(V_j ∩ ker x^{m-i+1}). Inverse to [`psi`].
pub fn phi(op: &NilpotentOperator, flag: &PartialFlag) -> Result<DoublyIndexedFlag> {
    if !is_x_stable(flag, op) {
        return Err(Error::NotStable);
    }
    if !is_homogeneous(flag, op) {
        return Err(Error::NotHomogeneous);
    }
    let m = op.order();
    let grid = (0..m)
        .map(|i| {
            let power = op.matrix().pow(m - (i + 1));
            let ker = op.kernel_power(m - i);
            flag.spaces()
                .iter()
                .map(|v| {
                    v.intersect(&ker)
                        .expect("same ambient")
                        .image(&power)
                        .expect("operator power is square")
                })
                .collect()
        })
        .collect();
    Ok(DoublyIndexedFlag { grid })
}

/// Enumerates every doubly indexed flag for the given kappa matrix,
/// column by column: each cell ranges over the subspaces of A_i of the
/// prescribed dimension containing the union of its upper and left
/// neighbours.
pub fn enumerate_doubly_flags(
    op: &NilpotentOperator,
    kappa: &KappaMatrix,
) -> Result<Vec<DoublyIndexedFlag>> {
    kappa.validate(op.d_dims())?;
    let m = kappa.rows();
    let n = kappa.cols();
    let mut out = Vec::new();
    let mut grid: Vec<Vec<Subspace>> = vec![Vec::new(); m];

    fn recurse(
        cell: usize,
        m: usize,
        n: usize,
        op: &NilpotentOperator,
        kappa: &KappaMatrix,
        grid: &mut Vec<Vec<Subspace>>,
        out: &mut Vec<DoublyIndexedFlag>,
    ) {
        if cell == m * n {
            out.push(DoublyIndexedFlag { grid: grid.clone() });
            return;
        }
        let j = cell / m;
        let i = cell % m;
        let mut lower = Subspace::zero(op.field(), op.dim());
        if i > 0 {
            lower = lower.sum(&grid[i - 1][j]).expect("same ambient");
        }
        if j > 0 {
            lower = lower.sum(&grid[i][j - 1]).expect("same ambient");
        }
        let ambient = &op.a_flag().spaces[i];
        if kappa.entry(i, j) > ambient.dim() {
            return;
        }
        let candidates =
            enumerate_superspaces(&lower, kappa.entry(i, j), ambient).expect("kappa was validated");
        for s in candidates {
            grid[i].push(s);
            recurse(cell + 1, m, n, op, kappa, grid, out);
            grid[i].pop();
        }
    }

    if m == 0 || n == 0 {
        out.push(DoublyIndexedFlag {
            grid: vec![Vec::new(); m],
        });
        return Ok(out);
    }
    recurse(0, m, n, op, kappa, &mut grid, &mut out);
    Ok(out)
}

/// The rank-condition membership test of the Schubert variety: the flag
/// (with dimension vector equal to kappa's last row) belongs iff
/// dim(A_i ∩ V_j) ≥ kappa[i][j] for all i, j.
pub fn schubert_membership(
    op: &NilpotentOperator,
    flag: &PartialFlag,
    kappa: &KappaMatrix,
) -> Result<bool> {
    let m = kappa.rows();
    let target: Vec<usize> = (0..kappa.cols()).map(|j| kappa.entry(m - 1, j)).collect();
    if flag.dims() != target {
        return Err(Error::InvalidDimensionVector {
            dims: flag.dims(),
            max: op.dim(),
        });
    }
    for (i, a_i) in op.a_flag().spaces.iter().enumerate() {
        for (j, v) in flag.spaces().iter().enumerate() {
            if a_i.intersect(v)?.dim() < kappa.entry(i, j) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Projects a doubly indexed flag to its last row (V_{m,1}, …, V_{m,n}),
/// the partial flag inside A_m it resolves.
pub fn project_to_last_row(flag: &DoublyIndexedFlag) -> PartialFlag {
    let spaces = match flag.grid.last() {
        Some(row) => row.clone(),
        None => Vec::new(),
    };
    PartialFlag::from_nested_unchecked(spaces)
}

/// Preimage counts of the last-row projection over one kappa class,
/// keyed by the projected flag.
pub fn projection_fibers(
    op: &NilpotentOperator,
    kappa: &KappaMatrix,
) -> Result<HashMap<PartialFlag, usize>> {
    let mut fibers = HashMap::new();
    for f in enumerate_doubly_flags(op, kappa)? {
        *fibers.entry(project_to_last_row(&f)).or_insert(0) += 1;
    }
    Ok(fibers)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::flags::orbit_signature;
    use crate::nilpotent::nilpotent_from_parts;
    use crate::strata::{alpha_from_kappa, enumerate_alpha, stratum_invariants};

    fn op(parts: &[usize], q: u64) -> NilpotentOperator {
        nilpotent_from_parts(parts, q).unwrap()
    }

    fn kappa(rows: &[&[usize]]) -> KappaMatrix {
        KappaMatrix::new(rows.iter().map(|r| r.to_vec()).collect())
    }

    #[test]
    fn base_point_extremes() {
        let x = op(&[2, 1], 2);

        let zero = kappa(&[&[0, 0], &[0, 0]]);
        let f = base_point(&x, &zero).unwrap();
        assert!(f.grid().iter().flatten().all(|s| s.is_zero()));

        let full = kappa(&[&[1, 1], &[2, 2]]);
        let f = base_point(&x, &full).unwrap();
        for (i, row) in f.grid().iter().enumerate() {
            for s in row {
                assert_eq!(s, &x.a_flag().spaces[i]);
            }
        }
    }

    #[test]
    fn base_point_for_two_one() {
        let x = op(&[2, 1], 2);
        let f = base_point(&x, &kappa(&[&[0, 1], &[1, 1]])).unwrap();
        let a1 = &x.a_flag().spaces[0];
        assert!(f.space(0, 0).is_zero());
        assert_eq!(f.space(0, 1), a1);
        assert_eq!(f.space(1, 0), a1);
        assert_eq!(f.space(1, 1), a1);
        f.validate(&x).unwrap();
        assert_eq!(f.kappa(), kappa(&[&[0, 1], &[1, 1]]));
    }

    #[test]
    fn psi_of_base_points_has_the_right_signature() {
        let x = op(&[2, 1], 2);

        let k1 = kappa(&[&[0, 1], &[1, 1]]);
        let w = psi(&x, &base_point(&x, &k1).unwrap()).unwrap();
        assert!(is_x_stable(&w, &x));
        assert!(is_homogeneous(&w, &x));
        assert_eq!(orbit_signature(&w, &x), alpha_from_kappa(&k1));
        // W_1 = span{e^(1)_1}, W_2 = span{e^(1)_1, e^(1)_2}
        let e0 = Subspace::from_generators(x.field(), 3, &[vec![1, 0, 0]]).unwrap();
        let plane =
            Subspace::from_generators(x.field(), 3, &[vec![1, 0, 0], vec![0, 1, 0]]).unwrap();
        assert_eq!(w.spaces()[0], e0);
        assert_eq!(w.spaces()[1], plane);

        let k2 = kappa(&[&[0, 0], &[1, 2]]);
        let w = psi(&x, &base_point(&x, &k2).unwrap()).unwrap();
        assert_eq!(orbit_signature(&w, &x), alpha_from_kappa(&k2));
        assert_eq!(w.spaces()[1], x.kernel_power(1));
    }

    #[test]
    fn psi_of_zero_kappa_is_the_zero_flag() {
        let x = op(&[2, 2], 3);
        let k = kappa(&[&[0, 0], &[0, 0]]);
        let w = psi(&x, &base_point(&x, &k).unwrap()).unwrap();
        assert!(w.spaces().iter().all(|s| s.is_zero()));
    }

    #[test]
    fn phi_is_the_identity_reindexing_for_zero_operator() {
        let x = op(&[1, 1], 2);
        let amb = x.ambient();
        for flag in crate::flags::enumerate_partial_flags(&amb, &[1]).unwrap() {
            let f = phi(&x, &flag).unwrap();
            assert_eq!(f.rows(), 1);
            assert_eq!(f.space(0, 0), &flag.spaces()[0]);
        }
    }

    #[test]
    fn phi_rejects_unstable_and_inhomogeneous_flags() {
        let x = op(&[2, 1], 2);
        let unstable = PartialFlag::new(vec![Subspace::from_generators(
            x.field(),
            3,
            &[vec![0, 1, 0]],
        )
        .unwrap()])
        .unwrap();
        assert_eq!(phi(&x, &unstable), Err(Error::NotStable));

        // span{e^(1)_2 + e^(2)_1, e^(1)_1} is stable but not homogeneous
        let mixed = PartialFlag::new(vec![Subspace::from_generators(
            x.field(),
            3,
            &[vec![0, 1, 1], vec![1, 0, 0]],
        )
        .unwrap()])
        .unwrap();
        assert!(is_x_stable(&mixed, &x));
        assert_eq!(phi(&x, &mixed), Err(Error::NotHomogeneous));
    }

    #[test]
    fn doubly_flag_counts_match_poincare_values() {
        let x = op(&[2, 1], 2);
        assert_eq!(
            enumerate_doubly_flags(&x, &kappa(&[&[0, 0], &[1, 2]]))
                .unwrap()
                .len(),
            3
        );
        assert_eq!(
            enumerate_doubly_flags(&x, &kappa(&[&[0, 1], &[1, 1]]))
                .unwrap()
                .len(),
            1
        );
        assert_eq!(
            enumerate_doubly_flags(&x, &kappa(&[&[0, 0], &[0, 0]]))
                .unwrap()
                .len(),
            1
        );
    }

    #[test]
    fn phi_psi_roundtrip_exhaustively_for_two_one() {
        let x = op(&[2, 1], 2);
        for alpha in enumerate_alpha(&[1, 2], x.l_dims()) {
            let inv = stratum_invariants(&x, &alpha).unwrap();
            for f in enumerate_doubly_flags(&x, &inv.kappa).unwrap() {
                let w = psi(&x, &f).unwrap();
                assert!(is_x_stable(&w, &x) && is_homogeneous(&w, &x));
                assert_eq!(orbit_signature(&w, &x), alpha);
                assert_eq!(phi(&x, &w).unwrap(), f);
            }
        }
    }

    #[test]
    fn schubert_membership_trivial_cases() {
        let x = op(&[2, 2], 2);
        let zero = kappa(&[&[0], &[0]]);
        // any zero-dimensional flag trivially belongs
        let f = PartialFlag::new(vec![Subspace::zero(x.field(), 4)]).unwrap();
        assert!(schubert_membership(&x, &f, &zero).unwrap());

        let k = kappa(&[&[1], &[2]]);
        let wrong_dims = PartialFlag::new(vec![Subspace::zero(x.field(), 4)]).unwrap();
        assert!(schubert_membership(&x, &wrong_dims, &k).is_err());
    }

    #[test]
    fn schubert_membership_under_extreme_rank_conditions() {
        // kappa[i][j] = min(d_i, k_j) admits exactly the flags meeting
        // every A_i as much as dimensions allow
        let x = op(&[2, 1], 2);
        let d = x.d_dims().to_vec();
        let dims = [1usize, 2];
        let extreme = KappaMatrix::new(
            (0..d.len())
                .map(|i| dims.iter().map(|&kj| d[i].min(kj)).collect())
                .collect(),
        );
        let ambient = x.kernel_power(x.order()); // flags range over all of A
        for flag in crate::flags::enumerate_partial_flags(&ambient, &dims).unwrap() {
            let expected = x.a_flag().spaces.iter().enumerate().all(|(i, a_i)| {
                flag.spaces()
                    .iter()
                    .all(|v| a_i.intersect(v).unwrap().dim() == d[i].min(v.dim()))
            });
            assert_eq!(schubert_membership(&x, &flag, &extreme).unwrap(), expected);
        }
    }
}
