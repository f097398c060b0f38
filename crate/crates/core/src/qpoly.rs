//! Exact integer polynomials in a formal variable q.
//!
//! These are the point-count generating functions of the strata: products
//! of Gaussian binomials. Coefficients are kept exact; evaluation widens to
//! i128 so even the largest desk-scale counts cannot overflow.

use serde::{Deserialize, Serialize};

/// Coefficients stored lowest degree first, trailing zeros trimmed.
/// The zero polynomial is the empty coefficient list.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct QPolynomial {
    coeffs: Vec<i64>,
}

impl QPolynomial {
    pub fn zero() -> Self {
        QPolynomial { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        QPolynomial { coeffs: vec![1] }
    }

    pub fn monomial(coeff: i64, degree: usize) -> Self {
        if coeff == 0 {
            return Self::zero();
        }
        let mut coeffs = vec![0; degree + 1];
        coeffs[degree] = coeff;
        QPolynomial { coeffs }
    }

    pub fn from_coeffs(mut coeffs: Vec<i64>) -> Self {
        while coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        QPolynomial { coeffs }
    }

    pub fn coeffs(&self) -> &[i64] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn add(&self, rhs: &QPolynomial) -> QPolynomial {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let mut out = vec![0i64; n];
        for (i, slot) in out.iter_mut().enumerate() {
            let a = self.coeffs.get(i).copied().unwrap_or(0);
            let b = rhs.coeffs.get(i).copied().unwrap_or(0);
            *slot = a.checked_add(b).expect("coefficient overflow");
        }
        QPolynomial::from_coeffs(out)
    }

    pub fn mul(&self, rhs: &QPolynomial) -> QPolynomial {
        if self.is_zero() || rhs.is_zero() {
            return QPolynomial::zero();
        }
        let mut out = vec![0i64; self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in rhs.coeffs.iter().enumerate() {
                let prod = a.checked_mul(b).expect("coefficient overflow");
                out[i + j] = out[i + j].checked_add(prod).expect("coefficient overflow");
            }
        }
        QPolynomial::from_coeffs(out)
    }

    /// Exact evaluation by Horner's rule.
    pub fn eval(&self, x: i64) -> i128 {
        let mut acc: i128 = 0;
        for &c in self.coeffs.iter().rev() {
            acc = acc
                .checked_mul(x as i128)
                .and_then(|a| a.checked_add(c as i128))
                .expect("evaluation overflow");
        }
        acc
    }
}

impl std::fmt::Display for QPolynomial {
    /// Pretty form, highest degree first: "q^4+q^3+2q^2+q+1".
    fn fmt(&self, out: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.is_zero() {
            return write!(out, "0");
        }
        let mut first = true;
        for (deg, &c) in self.coeffs.iter().enumerate().rev() {
            if c == 0 {
                continue;
            }
            if first {
                if c < 0 {
                    write!(out, "-")?;
                }
                first = false;
            } else {
                write!(out, "{}", if c < 0 { "-" } else { "+" })?;
            }
            let a = c.unsigned_abs();
            match deg {
                0 => write!(out, "{a}")?,
                _ => {
                    if a != 1 {
                        write!(out, "{a}")?;
                    }
                    if deg == 1 {
                        write!(out, "q")?;
                    } else {
                        write!(out, "q^{deg}")?;
                    }
                }
            }
        }
        Ok(())
    }
}

/// The Gaussian binomial coefficient [n choose k]_q as an exact polynomial:
/// the number of k-dimensional subspaces of F_q^n, as a polynomial in q.
///
/// Computed by the q-Pascal recurrence
/// [n k] = [n-1 k-1] + q^k [n-1 k], which never leaves Z[q].
/// Out-of-range k yields the zero polynomial.
pub fn gaussian_binomial(n: usize, k: usize) -> QPolynomial {
    if k > n {
        return QPolynomial::zero();
    }
    // row-by-row DP over the q-Pascal triangle
    let mut row = vec![QPolynomial::one()];
    for m in 1..=n {
        let mut next = Vec::with_capacity(m + 1);
        next.push(QPolynomial::one());
        for j in 1..m {
            let shifted = QPolynomial::monomial(1, j).mul(&row[j]);
            next.push(row[j - 1].add(&shifted));
        }
        next.push(QPolynomial::one());
        row = next;
    }
    row[k].clone()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn choose_zero_is_one() {
        for n in 0..6 {
            assert_eq!(gaussian_binomial(n, 0), QPolynomial::one());
            assert_eq!(gaussian_binomial(n, n), QPolynomial::one());
        }
    }

    #[test]
    fn two_choose_one_counts_lines() {
        let p = gaussian_binomial(2, 1);
        assert_eq!(p.coeffs(), &[1, 1]); // q + 1
        assert_eq!(p.eval(2), 3);
    }

    #[test]
    fn four_choose_two() {
        let p = gaussian_binomial(4, 2);
        assert_eq!(p.coeffs(), &[1, 1, 2, 1, 1]); // q^4+q^3+2q^2+q+1
        assert_eq!(p.eval(2), 35);
        assert_eq!(p.to_string(), "q^4+q^3+2q^2+q+1");
    }

    #[test]
    fn out_of_range_is_zero() {
        assert!(gaussian_binomial(3, 4).is_zero());
    }

    #[test]
    fn symmetry_and_degree() {
        for n in 0..=8usize {
            for k in 0..=n {
                let p = gaussian_binomial(n, k);
                assert_eq!(p, gaussian_binomial(n, n - k), "n={n} k={k}");
                assert_eq!(p.degree(), Some(k * (n - k)), "n={n} k={k}");
                assert!(p.coeffs().iter().all(|&c| c >= 0));
            }
        }
    }

    #[test]
    fn specialization_at_one_is_binomial() {
        // [n k]_1 = n choose k
        let binom = |n: i128, k: i128| -> i128 { (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1)) };
        for n in 0..=8usize {
            for k in 0..=n {
                assert_eq!(gaussian_binomial(n, k).eval(1), binom(n as i128, k as i128));
            }
        }
    }

    #[test]
    fn display_edge_cases() {
        assert_eq!(QPolynomial::zero().to_string(), "0");
        assert_eq!(QPolynomial::one().to_string(), "1");
        assert_eq!(QPolynomial::from_coeffs(vec![0, 1]).to_string(), "q");
        assert_eq!(
            QPolynomial::from_coeffs(vec![2, 0, 3]).to_string(),
            "3q^2+2"
        );
    }
}
