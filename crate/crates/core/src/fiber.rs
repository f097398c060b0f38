//! Rank of the vector bundle from a stratum onto its fixed-point set.
//!
//! The computation happens at the canonical base point xi = psi(base_point):
//! n_P is the algebra of maps that strictly lower the kernel filtration,
//! v ⊆ n_P the subalgebra stabilizing every member of xi, and the bundle
//! fiber is the fixed subspace of conjugation by (1 + x) acting on n_P / v.
//! A unipotent element fixes a flag iff its logarithm stabilizes each
//! member, which turns the whole question into one integer linear system.
//!
//! All matrices involved have integer entries, so ranks are computed with
//! fraction-free elimination over the rationals; the answer is therefore
//! independent of the working characteristic, and the finite-field counts
//! cross-check it empirically.

use crate::error::Result;
use crate::nilpotent::NilpotentOperator;
use crate::strata::{kappa_from_alpha, AlphaMatrix};

/// Fiber dimension of the bundle from the stratum of `alpha` onto its
/// fixed-point set.
pub fn fiber_dimension(op: &NilpotentOperator, alpha: &AlphaMatrix) -> Result<usize> {
    let kappa = kappa_from_alpha(alpha)?;
    let xi = crate::doubly::psi(op, &crate::doubly::base_point(op, &kappa)?)?;

    let d = op.dim();
    let heights: Vec<usize> = op.labels().iter().map(|l| l.height).collect();

    // the base point is a coordinate flag: record which coordinates span
    // each member
    let coord_sets: Vec<Vec<bool>> = xi
        .spaces()
        .iter()
        .map(|w| {
            let mut set = vec![false; d];
            for row in w.basis().row_vectors() {
                let nonzero: Vec<usize> = (0..d).filter(|&c| row[c] != 0).collect();
                assert!(
                    nonzero.len() == 1 && row[nonzero[0]] == 1,
                    "base point members are spanned by standard basis vectors"
                );
                set[nonzero[0]] = true;
            }
            set
        })
        .collect();

    // basis of n_P: entry positions (r, c) strictly lowering the height
    let positions: Vec<(usize, usize)> = (0..d)
        .flat_map(|r| (0..d).map(move |c| (r, c)))
        .filter(|&(r, c)| heights[r] < heights[c])
        .collect();
    let in_n_p = |r: usize, c: usize| heights[r] < heights[c];

    // v: positions whose elementary matrix maps every member into itself
    let in_v = |r: usize, c: usize| in_n_p(r, c) && coord_sets.iter().all(|set| !set[c] || set[r]);
    let dim_v = positions.iter().filter(|&&(r, c)| in_v(r, c)).count();

    // integer matrices of x, 1 + x and (1 + x)^{-1} = sum (-x)^t
    let x_int = int_matrix(op);
    let p = add(&identity(d), &x_int);
    let mut p_inv = identity(d);
    let mut power = x_int.clone();
    let mut sign = -1i64;
    while power.iter().flatten().any(|&a| a != 0) {
        p_inv = add(&p_inv, &scale(&power, sign));
        power = mul(&power, &x_int);
        sign = -sign;
    }
    debug_assert_eq!(mul(&p, &p_inv), identity(d));

    // T(z) = (1+x) z (1+x)^{-1} - z, restricted to the n_P basis; for an
    // elementary matrix E_rc, (P E_rc Pinv)[u][w] = P[u][r] * Pinv[c][w]
    let mut constraints: Vec<Vec<i128>> = Vec::new();
    for u in 0..d {
        for w in 0..d {
            if in_v(u, w) {
                continue; // this coordinate is unconstrained inside v
            }
            let row: Vec<i128> = positions
                .iter()
                .map(|&(r, c)| {
                    let mut t = p[u][r] * p_inv[c][w];
                    if (u, w) == (r, c) {
                        t -= 1;
                    }
                    t as i128
                })
                .collect();
            if row.iter().any(|&a| a != 0) {
                constraints.push(row);
            }
        }
    }

    let solution_dim = positions.len() - rank_exact(constraints);
    debug_assert!(solution_dim >= dim_v);
    Ok(solution_dim - dim_v)
}

type IntMatrix = Vec<Vec<i64>>;

fn int_matrix(op: &NilpotentOperator) -> IntMatrix {
    let d = op.dim();
    let mut out = vec![vec![0i64; d]; d];
    for r in 0..d {
        for c in 0..d {
            out[r][c] = op.matrix()[(r, c)] as i64;
        }
    }
    out
}

fn identity(d: usize) -> IntMatrix {
    let mut out = vec![vec![0i64; d]; d];
    for (i, row) in out.iter_mut().enumerate() {
        row[i] = 1;
    }
    out
}

fn add(a: &IntMatrix, b: &IntMatrix) -> IntMatrix {
    a.iter()
        .zip(b)
        .map(|(ra, rb)| ra.iter().zip(rb).map(|(x, y)| x + y).collect())
        .collect()
}

fn scale(a: &IntMatrix, s: i64) -> IntMatrix {
    a.iter()
        .map(|r| r.iter().map(|x| x * s).collect())
        .collect()
}

fn mul(a: &IntMatrix, b: &IntMatrix) -> IntMatrix {
    let d = a.len();
    let mut out = vec![vec![0i64; d]; d];
    for r in 0..d {
        for k in 0..d {
            if a[r][k] == 0 {
                continue;
            }
            for c in 0..d {
                out[r][c] += a[r][k] * b[k][c];
            }
        }
    }
    out
}

/// Rank over the rationals by fraction-free Gaussian elimination, with a
/// gcd reduction per row to keep the integers small.
fn rank_exact(mut rows: Vec<Vec<i128>>) -> usize {
    let cols = rows.first().map_or(0, Vec::len);
    let mut rank = 0;
    for col in 0..cols {
        let Some(pivot) = (rank..rows.len()).find(|&r| rows[r][col] != 0) else {
            continue;
        };
        rows.swap(rank, pivot);
        let head = rows[rank].clone();
        for row in rows.iter_mut().skip(rank + 1) {
            if row[col] == 0 {
                continue;
            }
            let (a, b) = (head[col], row[col]);
            for (x, &h) in row.iter_mut().zip(&head) {
                *x = *x * a - h * b;
            }
            let g = row
                .iter()
                .fold(0i128, |acc, &v| gcd(acc, v.unsigned_abs() as i128));
            if g > 1 {
                for x in row.iter_mut() {
                    *x /= g;
                }
            }
        }
        rank += 1;
        if rank == rows.len() {
            break;
        }
    }
    rank
}

fn gcd(a: i128, b: i128) -> i128 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}
