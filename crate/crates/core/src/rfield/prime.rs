use crate::error::{Error, Result};

/// Smallest supported characteristic.
pub const MIN_PRIME: u32 = 3;
/// Largest supported characteristic. Coefficient growth of rational
/// functions makes anything bigger impractical.
pub const MAX_PRIME: u32 = 31;

/// The characteristic `p` of the prime field `F_p`.
///
/// Residues are plain `u32` values in `0..p`. With `p <= 31` any sum of
/// fewer than four million products fits in a `u32` before reduction.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Prime(u32);

impl Prime {
    pub fn new(p: u32) -> Result<Self> {
        if !(MIN_PRIME..=MAX_PRIME).contains(&p) || !is_prime(p) {
            return Err(Error::UnsupportedPrime(p));
        }
        Ok(Prime(p))
    }

    #[inline]
    pub fn get(self) -> u32 {
        self.0
    }

    #[inline]
    pub fn reduce(self, v: u64) -> u32 {
        (v % self.0 as u64) as u32
    }

    /// Reduces a signed integer into `0..p`.
    pub fn reduce_signed(self, v: i64) -> u32 {
        v.rem_euclid(self.0 as i64) as u32
    }

    #[inline]
    pub fn add(self, a: u32, b: u32) -> u32 {
        let s = a + b;
        if s >= self.0 {
            s - self.0
        } else {
            s
        }
    }

    #[inline]
    pub fn sub(self, a: u32, b: u32) -> u32 {
        if a >= b {
            a - b
        } else {
            a + self.0 - b
        }
    }

    #[inline]
    pub fn neg(self, a: u32) -> u32 {
        if a == 0 {
            0
        } else {
            self.0 - a
        }
    }

    #[inline]
    pub fn mul(self, a: u32, b: u32) -> u32 {
        (a * b) % self.0
    }

    /// Multiplicative inverse by Fermat. Panics on zero.
    pub fn inv(self, a: u32) -> u32 {
        assert!(!a.is_multiple_of(self.0), "inverse of zero in F_{}", self.0);
        self.pow(a, self.0 - 2)
    }

    pub fn pow(self, a: u32, mut e: u32) -> u32 {
        let mut base = a % self.0;
        let mut acc = 1;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    /// Binomial coefficients `C(n, k) mod p` for `0 <= k <= n`.
    pub fn binomial_row(self, n: usize) -> Vec<u32> {
        let mut row = vec![1u32];
        for _ in 0..n {
            let mut next = vec![1u32; row.len() + 1];
            for k in 1..row.len() {
                next[k] = self.add(row[k - 1], row[k]);
            }
            row = next;
        }
        row
    }
}

impl std::fmt::Display for Prime {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.0)
    }
}

fn is_prime(n: u32) -> bool {
    if n < 2 {
        return false;
    }
    (2..).take_while(|d| d * d <= n).all(|d| !n.is_multiple_of(d))
}
