use serde::Serialize;

use crate::error::{invalid, Result};

/// Field element, always reduced into `0..q`.
pub type FieldElem = u32;

/// `GF(q)` for a prime `q < 2^32`, so products fit in a `u64`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct PrimeField {
    q: u32,
}

pub const DEFAULT_PRIME: u32 = 2_147_483_647;

pub fn is_prime(q: u64) -> bool {
    if q < 2 {
        return false;
    }
    if q % 2 == 0 {
        return q == 2;
    }
    let mut f = 3u64;
    while f * f <= q {
        if q % f == 0 {
            return false;
        }
        f += 2;
    }
    true
}

impl Default for PrimeField {
    fn default() -> Self {
        PrimeField { q: DEFAULT_PRIME }
    }
}

impl PrimeField {
    pub fn new(q: u64) -> Result<Self> {
        if q > u32::MAX as u64 {
            return invalid(format!("prime {q} does not fit in 32 bits"));
        }
        if !is_prime(q) {
            return invalid(format!("modulus {q} is not prime"));
        }
        Ok(PrimeField { q: q as u32 })
    }

    pub fn modulus(&self) -> u32 {
        self.q
    }

    pub fn reduce(&self, x: u64) -> FieldElem {
        (x % self.q as u64) as u32
    }

    pub fn from_i64(&self, x: i64) -> FieldElem {
        x.rem_euclid(self.q as i64) as u32
    }

    pub fn add(&self, a: FieldElem, b: FieldElem) -> FieldElem {
        let s = a as u64 + b as u64;
        if s >= self.q as u64 {
            (s - self.q as u64) as u32
        } else {
            s as u32
        }
    }

    pub fn sub(&self, a: FieldElem, b: FieldElem) -> FieldElem {
        if a >= b {
            a - b
        } else {
            (a as u64 + self.q as u64 - b as u64) as u32
        }
    }

    pub fn neg(&self, a: FieldElem) -> FieldElem {
        if a == 0 {
            0
        } else {
            self.q - a
        }
    }

    pub fn mul(&self, a: FieldElem, b: FieldElem) -> FieldElem {
        ((a as u64 * b as u64) % self.q as u64) as u32
    }

    pub fn pow(&self, mut a: FieldElem, mut e: u64) -> FieldElem {
        let mut r = 1 % self.q;
        while e > 0 {
            if e & 1 == 1 {
                r = self.mul(r, a);
            }
            a = self.mul(a, a);
            e >>= 1;
        }
        r
    }

    /// Inverse by Fermat; panics on zero.
    pub fn inv(&self, a: FieldElem) -> FieldElem {
        assert!(a != 0, "inverse of zero in GF({})", self.q);
        self.pow(a, self.q as u64 - 2)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn primality() {
        assert!(is_prime(2) && is_prime(3) && is_prime(65537) && is_prime(DEFAULT_PRIME as u64));
        assert!(!is_prime(1) && !is_prime(91) && !is_prime(4_294_967_297));
        assert!(PrimeField::new(91).is_err());
        assert!(PrimeField::new(1 << 40).is_err());
        assert!(PrimeField::new(4_294_967_291).is_ok());
    }

    #[test]
    fn arithmetic() {
        let f = PrimeField::new(7).unwrap();
        assert_eq!(f.add(5, 4), 2);
        assert_eq!(f.sub(2, 5), 4);
        assert_eq!(f.neg(3), 4);
        assert_eq!(f.neg(0), 0);
        assert_eq!(f.mul(3, 5), 1);
        assert_eq!(f.inv(3), 5);
        assert_eq!(f.from_i64(-3), 4);
        let g = PrimeField::default();
        for a in [1u32, 2, 12345, DEFAULT_PRIME - 1] {
            assert_eq!(g.mul(a, g.inv(a)), 1);
        }
        let big = PrimeField::new(4_294_967_291).unwrap();
        let a = 4_294_967_290;
        assert_eq!(big.mul(a, a), 1);
        assert_eq!(big.add(a, a), 4_294_967_289);
    }
}
