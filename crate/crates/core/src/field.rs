//! Prime field arithmetic on `u64` residues.

use crate::error::{Error, Result};

/// A prime field F_q, identified by its modulus.
///
/// Elements are represented as residues in `0..q`. Only prime moduli are
/// accepted: a single modular reduction then covers all arithmetic, and
/// every nonzero residue is invertible.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FieldSpec {
    q: u64,
}

impl FieldSpec {
    pub fn new(q: u64) -> Result<Self> {
        if is_prime(q) {
            Ok(FieldSpec { q })
        } else {
            Err(Error::NotPrime(q))
        }
    }

    pub fn modulus(self) -> u64 {
        self.q
    }

    #[inline]
    pub fn reduce(self, a: u64) -> u64 {
        a % self.q
    }

    #[inline]
    pub fn add(self, a: u64, b: u64) -> u64 {
        let s = a + b;
        if s >= self.q {
            s - self.q
        } else {
            s
        }
    }

    #[inline]
    pub fn sub(self, a: u64, b: u64) -> u64 {
        if a >= b {
            a - b
        } else {
            a + self.q - b
        }
    }

    #[inline]
    pub fn neg(self, a: u64) -> u64 {
        if a == 0 {
            0
        } else {
            self.q - a
        }
    }

    #[inline]
    pub fn mul(self, a: u64, b: u64) -> u64 {
        // q stays at desk scale, but widen anyway so any prime < 2^32 is safe
        ((a as u128 * b as u128) % self.q as u128) as u64
    }

    /// Multiplicative inverse of a nonzero residue.
    pub fn inv(self, a: u64) -> u64 {
        assert!(a != 0, "zero has no inverse");
        // extended Euclid on (a, q)
        let (mut r0, mut r1) = (a as i128, self.q as i128);
        let (mut s0, mut s1) = (1i128, 0i128);
        while r1 != 0 {
            let k = r0 / r1;
            (r0, r1) = (r1, r0 - k * r1);
            (s0, s1) = (s1, s0 - k * s1);
        }
        debug_assert_eq!(r0, 1);
        s0.rem_euclid(self.q as i128) as u64
    }

    /// All field elements, in ascending order.
    pub fn elements(self) -> impl Iterator<Item = u64> {
        0..self.q
    }
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n.is_multiple_of(2) {
        return n == 2;
    }
    let mut d = 3;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}
