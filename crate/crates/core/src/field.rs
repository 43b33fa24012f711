use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// The field with `q` elements, `q` a prime below `2^32` so that products
/// of canonical residues fit in a `u64`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct PrimeField {
    q: u64,
}

pub const DEFAULT_PRIME: u64 = 32003;
pub const CROSS_CHECK_PRIME: u64 = 2;

impl PrimeField {
    pub fn new(q: u64) -> Result<Self> {
        if q >= 1 << 32 || !is_prime(q) {
            return Err(Error::NotPrime(q));
        }
        Ok(PrimeField { q })
    }

    pub fn modulus(self) -> u64 {
        self.q
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
        a * b % self.q
    }

    pub fn pow(self, mut base: u64, mut exp: u64) -> u64 {
        let mut acc = 1 % self.q;
        base %= self.q;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            exp >>= 1;
        }
        acc
    }

    /// Multiplicative inverse; `a` must be nonzero.
    pub fn inv(self, a: u64) -> u64 {
        assert!(a % self.q != 0, "inverse of zero in F_{}", self.q);
        self.pow(a, self.q - 2)
    }

    pub fn from_i64(self, a: i64) -> u64 {
        a.rem_euclid(self.q as i64) as u64
    }

    /// `(-1)^k` as a field element.
    pub fn sign(self, k: usize) -> u64 {
        if k % 2 == 0 {
            1 % self.q
        } else {
            self.neg(1)
        }
    }

    /// Centered representative in `(-q/2, q/2]`, for display.
    pub fn centered(self, a: u64) -> i64 {
        if a > self.q / 2 {
            a as i64 - self.q as i64
        } else {
            a as i64
        }
    }
}

fn is_prime(q: u64) -> bool {
    if q < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= q {
        if q % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_composites() {
        assert!(PrimeField::new(1).is_err());
        assert!(PrimeField::new(32004).is_err());
        assert!(PrimeField::new(4294967311).is_err());
        assert!(PrimeField::new(2).is_ok());
        assert!(PrimeField::new(32003).is_ok());
        assert!(PrimeField::new(4294967291).is_ok());
    }

    #[test]
    fn field_axioms_small() {
        for q in [2u64, 3, 5, 7, 13] {
            let f = PrimeField::new(q).unwrap();
            for a in 0..q {
                assert_eq!(f.add(a, f.neg(a)), 0);
                if a != 0 {
                    assert_eq!(f.mul(a, f.inv(a)), 1);
                }
                for b in 0..q {
                    assert_eq!(f.sub(f.add(a, b), b), a);
                    for c in 0..q {
                        assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
                    }
                }
            }
        }
    }

    #[test]
    fn large_prime_no_overflow() {
        let f = PrimeField::new(4294967291).unwrap();
        let a = 4294967290;
        assert_eq!(f.mul(a, a), 1);
        assert_eq!(f.mul(a, f.inv(a)), 1);
    }

    #[test]
    fn signs_and_lifts() {
        let f = PrimeField::new(7).unwrap();
        assert_eq!(f.sign(3), 6);
        assert_eq!(f.from_i64(-1), 6);
        assert_eq!(f.centered(6), -1);
        let two = PrimeField::new(2).unwrap();
        assert_eq!(two.sign(1), 1);
    }
}
