//! Partial flags, their enumeration, and the operator-side tests:
//! stability, orbit signature, homogeneity and homogenization.

use crate::enumerate::enumerate_superspaces;
use crate::error::{Error, Result};
use crate::nilpotent::NilpotentOperator;
use crate::strata::AlphaMatrix;
use crate::subspace::Subspace;

/// A nested chain V_1 ⊆ … ⊆ V_n inside a fixed ambient space.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PartialFlag {
    spaces: Vec<Subspace>,
}

impl PartialFlag {
    pub fn new(spaces: Vec<Subspace>) -> Result<Self> {
        for w in spaces.windows(2) {
            if !w[1].contains(&w[0])? {
                return Err(Error::InvalidDoublyFlag);
            }
        }
        Ok(PartialFlag { spaces })
    }

    pub(crate) fn from_nested_unchecked(spaces: Vec<Subspace>) -> Self {
        PartialFlag { spaces }
    }

    pub fn spaces(&self) -> &[Subspace] {
        &self.spaces
    }

    pub fn len(&self) -> usize {
        self.spaces.len()
    }

    pub fn is_empty(&self) -> bool {
        self.spaces.is_empty()
    }

    pub fn dims(&self) -> Vec<usize> {
        self.spaces.iter().map(|s| s.dim()).collect()
    }
}

fn validate_dims(dims: &[usize], max: usize) -> Result<()> {
    let increasing = dims.windows(2).all(|w| w[0] <= w[1]);
    let in_range = dims.iter().all(|&k| k <= max);
    if increasing && in_range {
        Ok(())
    } else {
        Err(Error::InvalidDimensionVector {
            dims: dims.to_vec(),
            max,
        })
    }
}

/// Lazily streams every flag in `ambient` with the given dimension vector,
/// exactly once and in a deterministic order: each member ranges over the
/// superspaces of its predecessor.
pub struct FlagStream<'a> {
    ambient: &'a Subspace,
    dims: Vec<usize>,
    // one candidate iterator per level, paired with the prefix it extends
    levels: Vec<Box<dyn Iterator<Item = Subspace> + 'a>>,
    prefix: Vec<Subspace>,
    exhausted: bool,
}

impl<'a> FlagStream<'a> {
    fn candidates(&self, level: usize) -> Box<dyn Iterator<Item = Subspace> + 'a> {
        let lower = if level == 0 {
            Subspace::zero(self.ambient.field(), self.ambient.ambient_dim())
        } else {
            self.prefix[level - 1].clone()
        };
        enumerate_superspaces(&lower, self.dims[level], self.ambient)
            .expect("dimension vector was validated")
    }
}

impl Iterator for FlagStream<'_> {
    type Item = PartialFlag;

    fn next(&mut self) -> Option<PartialFlag> {
        if self.exhausted {
            return None;
        }
        if self.dims.is_empty() {
            self.exhausted = true;
            return Some(PartialFlag { spaces: Vec::new() });
        }
        loop {
            let level = self.prefix.len();
            if level == self.dims.len() {
                // a full flag is ready; emit it and backtrack one level
                let flag = PartialFlag {
                    spaces: self.prefix.clone(),
                };
                self.prefix.pop();
                return Some(flag);
            }
            if self.levels.len() == level {
                let it = self.candidates(level);
                self.levels.push(it);
            }
            match self.levels[level].next() {
                Some(s) => self.prefix.push(s),
                None => {
                    self.levels.pop();
                    if self.prefix.pop().is_none() {
                        self.exhausted = true;
                        return None;
                    }
                }
            }
        }
    }
}

/// Streams every flag with dimension vector `dims` inside `ambient`.
pub fn enumerate_partial_flags<'a>(
    ambient: &'a Subspace,
    dims: &[usize],
) -> Result<FlagStream<'a>> {
    validate_dims(dims, ambient.dim())?;
    Ok(FlagStream {
        ambient,
        dims: dims.to_vec(),
        levels: Vec::new(),
        prefix: Vec::new(),
        exhausted: false,
    })
}

/// Depth-first visit of all flags whose members all satisfy `keep`,
/// pruning a whole subtree as soon as one member fails.
///
/// Membership predicates of interest (stability, in practice) hold for a
/// flag iff they hold for each member, so the pruned walk visits exactly
/// the flags where every member passes.
pub fn visit_flags_filtered(
    ambient: &Subspace,
    dims: &[usize],
    keep: &dyn Fn(&Subspace) -> bool,
    visit: &mut dyn FnMut(&PartialFlag),
) -> Result<()> {
    validate_dims(dims, ambient.dim())?;
    fn recurse(
        ambient: &Subspace,
        dims: &[usize],
        keep: &dyn Fn(&Subspace) -> bool,
        prefix: &mut Vec<Subspace>,
        visit: &mut dyn FnMut(&PartialFlag),
    ) {
        let level = prefix.len();
        if level == dims.len() {
            let flag = PartialFlag {
                spaces: prefix.clone(),
            };
            visit(&flag);
            return;
        }
        let lower = if level == 0 {
            Subspace::zero(ambient.field(), ambient.ambient_dim())
        } else {
            prefix[level - 1].clone()
        };
        let candidates =
            enumerate_superspaces(&lower, dims[level], ambient).expect("validated dims");
        for s in candidates {
            if keep(&s) {
                prefix.push(s);
                recurse(ambient, dims, keep, prefix, visit);
                prefix.pop();
            }
        }
    }
    recurse(ambient, dims, keep, &mut Vec::new(), visit);
    Ok(())
}

/// True iff x maps every member of the flag into itself.
pub fn is_x_stable(flag: &PartialFlag, x: &NilpotentOperator) -> bool {
    flag.spaces.iter().all(|v| is_stable_member(v, x))
}

/// Stability of a single subspace: x(V) ⊆ V.
pub fn is_stable_member(v: &Subspace, x: &NilpotentOperator) -> bool {
    v.basis()
        .row_vectors()
        .all(|row| v.contains_vector(&x.matrix().apply(row)))
}

/// The orbit signature of a flag: the m×n matrix of intersection
/// dimensions with the kernel filtration, alpha[i][j] = dim(V_j ∩ ker x^i).
pub fn orbit_signature(flag: &PartialFlag, x: &NilpotentOperator) -> AlphaMatrix {
    let m = x.order();
    let entries = (1..=m)
        .map(|i| {
            let ker = x.kernel_power(i);
            flag.spaces
                .iter()
                .map(|v| v.intersect(&ker).expect("same ambient").dim())
                .collect()
        })
        .collect();
    AlphaMatrix::new(entries)
}

/// True iff every member splits along the graded pieces:
/// sum_i dim(V_j ∩ E_i) = dim V_j for all j.
pub fn is_homogeneous(flag: &PartialFlag, x: &NilpotentOperator) -> bool {
    flag.spaces.iter().all(|v| is_homogeneous_member(v, x))
}

fn is_homogeneous_member(v: &Subspace, x: &NilpotentOperator) -> bool {
    let graded: usize = x
        .graded_pieces()
        .pieces
        .iter()
        .map(|e| v.intersect(e).expect("same ambient").dim())
        .sum();
    graded == v.dim()
}

/// Replaces each member by its homogeneous shadow, built from the kernel
/// filtration: walk i = 1..m, extend a basis of V ∩ ker x^{i-1} to one of
/// V ∩ ker x^i (echelon order, so the result is deterministic), and project
/// the new vectors onto E_i along the other graded pieces.
///
/// The output has the same dimension vector and the same orbit signature,
/// is homogeneous, and inherits stability.
pub fn homogenize(flag: &PartialFlag, x: &NilpotentOperator) -> PartialFlag {
    let spaces = flag
        .spaces
        .iter()
        .map(|v| homogenize_member(v, x))
        .collect();
    PartialFlag { spaces }
}

fn homogenize_member(v: &Subspace, x: &NilpotentOperator) -> Subspace {
    let d = x.dim();
    let field = x.field();
    let mut projections: Vec<Vec<u64>> = Vec::with_capacity(v.dim());
    let mut span = Subspace::zero(field, d); // V ∩ ker x^{i-1}, grown in place
    for i in 1..=x.order() {
        let cur = v.intersect(&x.kernel_power(i)).expect("same ambient");
        for row in cur.basis().row_vectors() {
            if !span.contains_vector(row) {
                projections.push(x.project_to_height(row, i));
                span = span
                    .sum(&Subspace::from_generators(field, d, &[row.to_vec()]).unwrap())
                    .unwrap();
            }
        }
        span = cur;
    }
    Subspace::from_generators(field, d, &projections).expect("projections have ambient length")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::nilpotent::nilpotent_from_parts;
    use crate::qpoly::gaussian_binomial;

    fn op(parts: &[usize], q: u64) -> NilpotentOperator {
        nilpotent_from_parts(parts, q).unwrap()
    }

    fn span(x: &NilpotentOperator, rows: &[Vec<u64>]) -> Subspace {
        Subspace::from_generators(x.field(), x.dim(), rows).unwrap()
    }

    #[test]
    fn flag_counts_follow_the_product_formula() {
        let x = op(&[1, 1, 1], 2);
        let amb = x.ambient();
        let flags: Vec<_> = enumerate_partial_flags(&amb, &[1, 2]).unwrap().collect();
        assert_eq!(flags.len(), 21); // (q^2+q+1)(q+1) at q = 2

        for dims in [vec![0], vec![3], vec![1, 1, 2]] {
            let n = enumerate_partial_flags(&amb, &dims).unwrap().count();
            let mut expected: i128 = 1;
            let mut upper = 3usize;
            for j in (0..dims.len()).rev() {
                expected *= gaussian_binomial(upper, dims[j]).eval(2);
                upper = dims[j];
            }
            assert_eq!(n as i128, expected, "dims {dims:?}");
        }
    }

    #[test]
    fn empty_dimension_vector_yields_one_empty_flag() {
        let x = op(&[2, 1], 2);
        let amb = x.ambient();
        let flags: Vec<_> = enumerate_partial_flags(&amb, &[]).unwrap().collect();
        assert_eq!(flags.len(), 1);
        assert!(flags[0].is_empty());
    }

    #[test]
    fn decreasing_dims_are_rejected() {
        let x = op(&[2, 1], 2);
        let amb = x.ambient();
        assert!(enumerate_partial_flags(&amb, &[2, 1]).is_err());
    }

    #[test]
    fn everything_is_stable_under_zero() {
        let x = op(&[1, 1], 3);
        let amb = x.ambient();
        for flag in enumerate_partial_flags(&amb, &[1]).unwrap() {
            assert!(is_x_stable(&flag, &x));
        }
    }

    #[test]
    fn line_outside_kernel_is_unstable() {
        let x = op(&[2, 1], 2);
        // e^(1)_2 is not in ker x and its line is not x-stable
        let v = span(&x, &[vec![0, 1, 0]]);
        let flag = PartialFlag::new(vec![v]).unwrap();
        assert!(!is_x_stable(&flag, &x));
    }

    #[test]
    fn kernel_flag_members_are_stable() {
        let x = op(&[3, 2], 2);
        let spaces = vec![x.kernel_power(1), x.kernel_power(2)];
        let flag = PartialFlag::new(spaces).unwrap();
        assert!(is_x_stable(&flag, &x));
    }

    #[test]
    fn signature_under_zero_operator_is_the_dimension_vector() {
        let x = op(&[1, 1, 1], 2);
        let amb = x.ambient();
        for flag in enumerate_partial_flags(&amb, &[1, 2]).unwrap() {
            let alpha = orbit_signature(&flag, &x);
            assert_eq!(alpha.entries(), &[vec![1, 2]]);
        }
    }

    #[test]
    fn signatures_for_two_one() {
        let x = op(&[2, 1], 2);
        // (line in ker x, ker x): alpha = [[1,2],[1,2]]
        let line = span(&x, &[vec![1, 0, 0]]);
        let flag = PartialFlag::new(vec![line, x.kernel_power(1)]).unwrap();
        assert_eq!(
            orbit_signature(&flag, &x).entries(),
            &[vec![1, 2], vec![1, 2]]
        );

        // (image of x, plane containing im x but different from ker x):
        // alpha = [[1,1],[1,2]]
        let im = x.ambient().image(x.matrix()).unwrap();
        let plane = span(&x, &[vec![1, 0, 0], vec![0, 1, 0]]);
        assert_ne!(plane, x.kernel_power(1));
        assert!(plane.contains(&im).unwrap());
        let flag = PartialFlag::new(vec![im, plane]).unwrap();
        assert_eq!(
            orbit_signature(&flag, &x).entries(),
            &[vec![1, 1], vec![1, 2]]
        );
    }

    #[test]
    fn homogeneity_tests() {
        let zero = op(&[1, 1], 2);
        let amb = zero.ambient();
        // m = 1: everything is homogeneous
        for flag in enumerate_partial_flags(&amb, &[1]).unwrap() {
            assert!(is_homogeneous(&flag, &zero));
        }

        let x = op(&[2, 1], 2);
        let mixed = PartialFlag::new(vec![span(&x, &[vec![1, 1, 0]])]).unwrap();
        assert!(!is_homogeneous(&mixed, &x));
        let coord = PartialFlag::new(vec![span(&x, &[vec![0, 1, 0], vec![0, 0, 1]])]).unwrap();
        assert!(is_homogeneous(&coord, &x));
    }

    #[test]
    fn homogenize_projects_a_mixed_line() {
        let x = op(&[2, 1], 2);
        // V = span{e^(1)_2 + e^(2)_1} meets ker x trivially
        let v = span(&x, &[vec![0, 1, 1]]);
        assert!(v.intersect(&x.kernel_power(1)).unwrap().is_zero());
        let flag = PartialFlag::new(vec![v]).unwrap();
        let hom = homogenize(&flag, &x);
        assert_eq!(hom.spaces()[0], span(&x, &[vec![0, 1, 0]]));
        assert_eq!(orbit_signature(&hom, &x), orbit_signature(&flag, &x));
    }

    #[test]
    fn homogenize_fixes_homogeneous_flags_and_zero_operator() {
        let zero = op(&[1, 1, 1], 3);
        let amb = zero.ambient();
        for flag in enumerate_partial_flags(&amb, &[1, 2]).unwrap() {
            assert_eq!(homogenize(&flag, &zero), flag);
        }

        let x = op(&[2, 2], 2);
        let coord =
            PartialFlag::new(vec![span(&x, &[vec![1, 0, 0, 0], vec![0, 1, 0, 0]])]).unwrap();
        assert!(is_homogeneous(&coord, &x));
        assert_eq!(homogenize(&coord, &x), coord);
    }

    #[test]
    fn homogenize_exhaustive_invariants_over_f2() {
        // idempotent, signature-preserving, dimension-preserving, and
        // stability-preserving, for every flag at small scale
        for parts in [vec![2, 1], vec![2, 2], vec![3, 1]] {
            let x = op(&parts, 2);
            let amb = x.ambient();
            let dims = vec![1, 2];
            for flag in enumerate_partial_flags(&amb, &dims).unwrap() {
                let hom = homogenize(&flag, &x);
                assert_eq!(hom.dims(), flag.dims());
                assert!(is_homogeneous(&hom, &x));
                assert_eq!(homogenize(&hom, &x), hom);
                assert_eq!(orbit_signature(&hom, &x), orbit_signature(&flag, &x));
                if is_x_stable(&flag, &x) {
                    assert!(is_x_stable(&hom, &x));
                }
            }
        }
    }

    #[test]
    fn filtered_visit_agrees_with_post_filtering() {
        let x = op(&[2, 1], 2);
        let amb = x.ambient();
        let mut seen = Vec::new();
        visit_flags_filtered(&amb, &[1, 2], &|s| is_stable_member(s, &x), &mut |f| {
            seen.push(f.clone())
        })
        .unwrap();
        let expected: Vec<_> = enumerate_partial_flags(&amb, &[1, 2])
            .unwrap()
            .filter(|f| is_x_stable(f, &x))
            .collect();
        assert_eq!(seen, expected);
        assert_eq!(seen.len(), 5);
    }
}
