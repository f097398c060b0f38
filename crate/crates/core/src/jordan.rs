//! Jordan types: partitions recording nilpotent block sizes.

use crate::error::{Error, Result};

/// A weakly decreasing partition of positive integers.
///
/// The empty partition is legal and describes the zero-dimensional space.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct JordanType {
    parts: Vec<usize>,
}

impl JordanType {
    pub fn new(parts: Vec<usize>) -> Result<Self> {
        let decreasing = parts.windows(2).all(|w| w[0] >= w[1]);
        let positive = parts.iter().all(|&p| p > 0);
        if decreasing && positive {
            Ok(JordanType { parts })
        } else {
            Err(Error::InvalidPartition(parts))
        }
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    /// Ambient dimension d = sum of the parts.
    pub fn dim(&self) -> usize {
        self.parts.iter().sum()
    }

    /// Nilpotent order m = largest part (0 for the empty partition).
    pub fn order(&self) -> usize {
        self.parts.first().copied().unwrap_or(0)
    }

    /// The conjugate partition; its partial sums are the kernel dimensions.
    pub fn conjugate(&self) -> Vec<usize> {
        (1..=self.order())
            .map(|i| self.parts.iter().filter(|&&p| p >= i).count())
            .collect()
    }

    /// Kernel dimensions l_i = dim ker x^i = sum of the first i conjugate parts.
    pub fn kernel_dims(&self) -> Vec<usize> {
        let mut acc = 0;
        self.conjugate()
            .into_iter()
            .map(|c| {
                acc += c;
                acc
            })
            .collect()
    }
}

impl std::fmt::Display for JordanType {
    fn fmt(&self, out: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let parts: Vec<String> = self.parts.iter().map(|p| p.to_string()).collect();
        write!(out, "({})", parts.join(","))
    }
}
