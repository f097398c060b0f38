//! Orbit matrices and per-stratum invariants.
//!
//! A parabolic orbit of flags is labelled by the matrix of intersection
//! dimensions with the kernel filtration (alpha). Each admissible alpha is
//! equivalent to a doubly-monotone kappa matrix; differencing kappa yields
//! the delta/epsilon matrices whose Grassmannians form the iterated bundle
//! base of the stratum's fixed-point set.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fiber::fiber_dimension;
use crate::nilpotent::NilpotentOperator;
use crate::qpoly::{gaussian_binomial, QPolynomial};

/// The m×n orbit matrix alpha[i][j] = dim(V_j ∩ ker x^i) (indices 0-based
/// in code, 1-based in the definitions below).
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct AlphaMatrix {
    entries: Vec<Vec<usize>>,
}

/// The m×n matrix kappa prescribing dim V_{i,j} inside the base flag
/// member A_i; weakly increasing in both indices, bounded by d_i.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct KappaMatrix {
    entries: Vec<Vec<usize>>,
}

impl AlphaMatrix {
    pub fn new(entries: Vec<Vec<usize>>) -> Self {
        debug_assert!(entries.windows(2).all(|w| w[0].len() == w[1].len()));
        AlphaMatrix { entries }
    }

    pub fn entries(&self) -> &[Vec<usize>] {
        &self.entries
    }

    /// Number of kernel-filtration steps (m).
    pub fn rows(&self) -> usize {
        self.entries.len()
    }

    /// Number of flag members (n).
    pub fn cols(&self) -> usize {
        self.entries.first().map_or(0, Vec::len)
    }

    /// Condition: entries weakly increase in both indices and the last row
    /// equals the dimension vector.
    pub fn is_monotone_with_dims(&self, k: &[usize]) -> bool {
        let m = self.rows();
        let n = self.cols();
        if n != k.len() {
            return false;
        }
        for i in 0..m {
            for j in 0..n {
                if i + 1 < m && self.entries[i][j] > self.entries[i + 1][j] {
                    return false;
                }
                if j + 1 < n && self.entries[i][j] > self.entries[i][j + 1] {
                    return false;
                }
            }
        }
        m == 0 || self.entries[m - 1] == k
    }

    /// Condition: row increments dominate pairwise — for 2 ≤ i ≤ i' and
    /// j' ≤ j, alpha[i'][j'] - alpha[i'-1][j'] ≤ alpha[i][j] - alpha[i-1][j]
    /// ≤ alpha[1][j].
    pub fn has_monotone_increments(&self) -> bool {
        let m = self.rows();
        let n = self.cols();
        let inc = |i: usize, j: usize| -> i64 {
            // 1-based row i >= 2
            self.entries[i - 1][j] as i64 - self.entries[i - 2][j] as i64
        };
        for j in 0..n {
            for i in 2..=m {
                if inc(i, j) > self.entries[0][j] as i64 {
                    return false;
                }
                for jp in 0..=j {
                    for ip in i..=m {
                        if inc(ip, jp) > inc(i, j) {
                            return false;
                        }
                    }
                }
            }
        }
        true
    }

    /// Condition: each row increment fits inside the corresponding kernel
    /// layer — alpha[i][j] - alpha[i-1][j] ≤ l_i - l_{i-1}, and the first
    /// row is bounded by l_1.
    pub fn respects_kernel_layers(&self, l: &[usize]) -> bool {
        let m = self.rows();
        if l.len() != m {
            return false;
        }
        for j in 0..self.cols() {
            if m > 0 && self.entries[0][j] > l[0] {
                return false;
            }
            for i in 1..m {
                if self.entries[i][j] as i64 - self.entries[i - 1][j] as i64
                    > l[i] as i64 - l[i - 1] as i64
                {
                    return false;
                }
            }
        }
        true
    }

    /// All three admissibility conditions at once. By the nonemptiness
    /// theorem these are exactly the orbits that meet the stable locus.
    pub fn is_admissible(&self, k: &[usize], l: &[usize]) -> bool {
        self.is_monotone_with_dims(k)
            && self.has_monotone_increments()
            && self.respects_kernel_layers(l)
    }

    /// The dimension vector encoded in the last row.
    pub fn dims(&self) -> Vec<usize> {
        self.entries.last().cloned().unwrap_or_default()
    }
}

impl KappaMatrix {
    pub fn new(entries: Vec<Vec<usize>>) -> Self {
        debug_assert!(entries.windows(2).all(|w| w[0].len() == w[1].len()));
        KappaMatrix { entries }
    }

    pub fn entries(&self) -> &[Vec<usize>] {
        &self.entries
    }

    pub fn rows(&self) -> usize {
        self.entries.len()
    }

    pub fn cols(&self) -> usize {
        self.entries.first().map_or(0, Vec::len)
    }

    pub fn entry(&self, i: usize, j: usize) -> usize {
        self.entries[i][j]
    }

    /// Checks the defining conditions against a base dimension vector d:
    /// weakly increasing in both indices, with row i bounded by d_i.
    pub fn validate(&self, d: &[usize]) -> Result<()> {
        let m = self.rows();
        let n = self.cols();
        if d.len() != m {
            return Err(Error::InvalidKappa);
        }
        for i in 0..m {
            for j in 0..n {
                if self.entries[i][j] > d[i] {
                    return Err(Error::InvalidKappa);
                }
                if i + 1 < m && self.entries[i][j] > self.entries[i + 1][j] {
                    return Err(Error::InvalidKappa);
                }
                if j + 1 < n && self.entries[i][j] > self.entries[i][j + 1] {
                    return Err(Error::InvalidKappa);
                }
            }
        }
        Ok(())
    }

    /// Column sums, which recover the dimension vector of the flags.
    pub fn column_sums(&self) -> Vec<usize> {
        (0..self.cols())
            .map(|j| self.entries.iter().map(|row| row[j]).sum())
            .collect()
    }
}

/// kappa[i][j] = alpha[m-i+1][j] - alpha[m-i][j] for i ≤ m-1, and
/// kappa[m][j] = alpha[1][j] (1-based). Fails on a non-monotone alpha.
pub fn kappa_from_alpha(alpha: &AlphaMatrix) -> Result<KappaMatrix> {
    let m = alpha.rows();
    let n = alpha.cols();
    let a = alpha.entries();
    let mut out = vec![vec![0usize; n]; m];
    for j in 0..n {
        for i in 1..=m {
            out[i - 1][j] = if i < m {
                a[m - i][j]
                    .checked_sub(a[m - i - 1][j])
                    .ok_or(Error::InadmissibleAlpha)?
            } else {
                a[0][j]
            };
        }
    }
    Ok(KappaMatrix::new(out))
}

/// alpha[i][j] = sum of kappa[h][j] over the last i rows (1-based), the
/// inverse of [`kappa_from_alpha`].
pub fn alpha_from_kappa(kappa: &KappaMatrix) -> AlphaMatrix {
    let m = kappa.rows();
    let n = kappa.cols();
    let entries = (1..=m)
        .map(|i| {
            (0..n)
                .map(|j| (m - i..m).map(|h| kappa.entry(h, j)).sum())
                .collect()
        })
        .collect();
    AlphaMatrix::new(entries)
}

/// delta[i][j] = kappa[i][j] - kappa[i-1][j] (first row kept as is);
/// epsilon[i][j] = kappa[i][j+1] - kappa[i][j], last column d_i - kappa[i][n].
/// A negative difference signals an invalid kappa.
pub fn delta_epsilon(kappa: &KappaMatrix, d: &[usize]) -> Result<(DiffGrid, DiffGrid)> {
    let m = kappa.rows();
    let n = kappa.cols();
    if d.len() != m {
        return Err(Error::InvalidKappa);
    }
    let mut delta = vec![vec![0usize; n]; m];
    let mut epsilon = vec![vec![0usize; n]; m];
    for i in 0..m {
        for j in 0..n {
            let below = if i == 0 { 0 } else { kappa.entry(i - 1, j) };
            delta[i][j] = kappa
                .entry(i, j)
                .checked_sub(below)
                .ok_or(Error::NegativeEntry { i, j })?;
            let right = if j + 1 < n {
                kappa.entry(i, j + 1)
            } else {
                d[i]
            };
            epsilon[i][j] = right
                .checked_sub(kappa.entry(i, j))
                .ok_or(Error::NegativeEntry { i, j })?;
        }
    }
    Ok((delta, epsilon))
}

/// Depth-first enumeration of every admissible orbit matrix for the given
/// dimension vector and kernel dimensions, pruned cell by cell and returned
/// in lexicographic (row-major) order.
pub fn enumerate_alpha(k: &[usize], l: &[usize]) -> Vec<AlphaMatrix> {
    let m = l.len();
    let n = k.len();
    if m == 0 {
        // zero-dimensional ambient: only the empty flag exists
        return if k.iter().all(|&kj| kj == 0) {
            vec![AlphaMatrix::new(Vec::new())]
        } else {
            Vec::new()
        };
    }
    let mut cur = vec![vec![0usize; n]; m];
    let mut out = Vec::new();

    fn fill(
        cell: usize,
        m: usize,
        n: usize,
        k: &[usize],
        l: &[usize],
        cur: &mut Vec<Vec<usize>>,
        out: &mut Vec<AlphaMatrix>,
    ) {
        if cell == m * n {
            let alpha = AlphaMatrix::new(cur.clone());
            // pruning is exact, but keep the literal conditions as the gate
            if alpha.is_admissible(k, l) {
                out.push(alpha);
            }
            return;
        }
        // cells are visited column by column, top to bottom
        let j = cell / m;
        let i = cell % m;

        let mut lo = 0usize;
        let mut hi = k[j];
        if i > 0 {
            lo = lo.max(cur[i - 1][j]);
        }
        if j > 0 {
            lo = lo.max(cur[i][j - 1]);
        }
        if i > 0 && j > 0 {
            // increments grow along a row: alpha[i][j] - alpha[i-1][j]
            // must be at least alpha[i][j-1] - alpha[i-1][j-1]
            lo = lo.max(cur[i - 1][j] + (cur[i][j - 1] - cur[i - 1][j - 1]));
        }
        if i == 0 {
            hi = hi.min(l[0]);
        } else {
            // increments shrink down a column and fit the kernel layer
            let prev_inc = if i == 1 {
                cur[0][j]
            } else {
                cur[i - 1][j] - cur[i - 2][j]
            };
            hi = hi.min(cur[i - 1][j] + prev_inc);
            hi = hi.min(cur[i - 1][j] + (l[i] - l[i - 1]));
        }
        if i == m - 1 {
            // last row is pinned to the dimension vector
            if k[j] < lo || k[j] > hi {
                return;
            }
            lo = k[j];
            hi = k[j];
        }
        for v in lo..=hi {
            cur[i][j] = v;
            fill(cell + 1, m, n, k, l, cur, out);
        }
        cur[i][j] = 0;
    }

    fill(0, m, n, k, l, &mut cur, &mut out);
    out.sort();
    out
}

/// An m×n grid of nonnegative integers; the shape of the delta and
/// epsilon difference matrices.
pub type DiffGrid = Vec<Vec<usize>>;

/// A Grassmannian factor Grass_sub(amb) of the iterated bundle base.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct GrassSymbol {
    pub sub: usize,
    pub amb: usize,
}

/// Everything the stratum of an admissible orbit matrix carries: the kappa
/// matrix, its difference matrices, the ordered Grassmannian base, the
/// fixed-point-set dimension and Poincaré polynomial, and the rank of the
/// vector bundle onto the fixed points.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StratumInvariants {
    pub alpha: AlphaMatrix,
    pub kappa: KappaMatrix,
    pub delta: DiffGrid,
    pub epsilon: DiffGrid,
    pub base: Vec<GrassSymbol>,
    pub dimension: usize,
    pub poincare: QPolynomial,
    pub fiber_dim: usize,
}

/// Assembles the invariants of one stratum. The base factors are listed
/// in the bundle order (G_{m,1}, …, G_{1,1}, G_{m,2}, …, G_{1,n}).
pub fn stratum_invariants(
    op: &NilpotentOperator,
    alpha: &AlphaMatrix,
) -> Result<StratumInvariants> {
    let k = alpha.dims();
    if !alpha.is_admissible(&k, op.l_dims()) {
        return Err(Error::InadmissibleAlpha);
    }
    let kappa = kappa_from_alpha(alpha)?;
    let (delta, epsilon) = delta_epsilon(&kappa, op.d_dims())?;
    let m = kappa.rows();
    let n = kappa.cols();

    let mut base = Vec::with_capacity(m * n);
    let mut dimension = 0usize;
    let mut poincare = QPolynomial::one();
    for j in 0..n {
        for i in (0..m).rev() {
            let (s, e) = (delta[i][j], epsilon[i][j]);
            base.push(GrassSymbol { sub: s, amb: s + e });
            dimension += s * e;
            poincare = poincare.mul(&gaussian_binomial(s + e, s));
        }
    }
    debug_assert_eq!(poincare.degree().unwrap_or(0), dimension);

    let fiber_dim = fiber_dimension(op, alpha)?;
    Ok(StratumInvariants {
        alpha: alpha.clone(),
        kappa,
        delta,
        epsilon,
        base,
        dimension,
        poincare,
        fiber_dim,
    })
}
