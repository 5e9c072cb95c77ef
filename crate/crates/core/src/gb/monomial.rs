use std::cmp::Ordering;
use std::fmt;

use crate::error::{invalid, Result};

pub const MAX_VARS: usize = 16;

/// Power product in at most `MAX_VARS` variables with small exponents.
///
/// `Ord` is degree reverse lexicographic with the last variable least.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct Monomial {
    exps: [u8; MAX_VARS],
    nvars: u8,
    deg: u16,
}

impl Monomial {
    pub fn one(nvars: usize) -> Self {
        assert!(nvars <= MAX_VARS, "at most {MAX_VARS} variables");
        Monomial { exps: [0; MAX_VARS], nvars: nvars as u8, deg: 0 }
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        Self::var_pow(nvars, i, 1)
    }

    pub fn var_pow(nvars: usize, i: usize, e: u8) -> Self {
        let mut m = Self::one(nvars);
        assert!(i < nvars);
        m.exps[i] = e;
        m.deg = e as u16;
        m
    }

    pub fn from_exponents(exps: &[u8]) -> Result<Self> {
        if exps.len() > MAX_VARS {
            return invalid(format!("{} variables exceed the limit of {MAX_VARS}", exps.len()));
        }
        let mut m = Self::one(exps.len());
        m.exps[..exps.len()].copy_from_slice(exps);
        m.deg = exps.iter().map(|&e| e as u16).sum();
        Ok(m)
    }

    pub fn nvars(&self) -> usize {
        self.nvars as usize
    }

    pub fn degree(&self) -> u32 {
        self.deg as u32
    }

    pub fn exponents(&self) -> &[u8] {
        &self.exps[..self.nvars as usize]
    }

    pub fn exp(&self, i: usize) -> u8 {
        self.exps[i]
    }

    /// Exponent of the least variable.
    pub fn last_exp(&self) -> u8 {
        self.exps[self.nvars as usize - 1]
    }

    /// Same monomial with the least variable removed.
    pub fn strip_last(&self) -> Self {
        let mut m = *self;
        let k = m.nvars as usize - 1;
        m.deg -= m.exps[k] as u16;
        m.exps[k] = 0;
        m.nvars -= 1;
        m
    }

    /// Same monomial viewed in `nvars` variables; new variables get exponent zero.
    pub fn embed(&self, nvars: usize) -> Self {
        assert!(nvars >= self.nvars as usize && nvars <= MAX_VARS);
        let mut m = *self;
        m.nvars = nvars as u8;
        m
    }

    pub fn mul(&self, other: &Self) -> Self {
        debug_assert_eq!(self.nvars, other.nvars);
        let mut m = *self;
        for i in 0..self.nvars as usize {
            m.exps[i] = self.exps[i].checked_add(other.exps[i]).expect("exponent overflow");
        }
        m.deg = self.deg + other.deg;
        m
    }

    pub fn mul_var(&self, i: usize) -> Self {
        let mut m = *self;
        m.exps[i] = m.exps[i].checked_add(1).expect("exponent overflow");
        m.deg += 1;
        m
    }

    pub fn divides(&self, other: &Self) -> bool {
        self.deg <= other.deg && (0..self.nvars as usize).all(|i| self.exps[i] <= other.exps[i])
    }

    /// `other / self`, if `self` divides `other`.
    pub fn quotient_of(&self, other: &Self) -> Option<Self> {
        if !self.divides(other) {
            return None;
        }
        let mut m = *other;
        for i in 0..self.nvars as usize {
            m.exps[i] -= self.exps[i];
        }
        m.deg -= self.deg;
        Some(m)
    }

    pub fn lcm(&self, other: &Self) -> Self {
        let mut m = *self;
        for i in 0..self.nvars as usize {
            m.exps[i] = self.exps[i].max(other.exps[i]);
        }
        m.deg = m.exps.iter().map(|&e| e as u16).sum();
        m
    }

    pub fn coprime(&self, other: &Self) -> bool {
        (0..self.nvars as usize).all(|i| self.exps[i] == 0 || other.exps[i] == 0)
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.deg.cmp(&other.deg).then_with(|| {
            for i in (0..self.nvars.max(other.nvars) as usize).rev() {
                if self.exps[i] != other.exps[i] {
                    return other.exps[i].cmp(&self.exps[i]);
                }
            }
            Ordering::Equal
        })
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.deg == 0 {
            return write!(f, "1");
        }
        let mut first = true;
        for (i, &e) in self.exponents().iter().enumerate() {
            if e == 0 {
                continue;
            }
            if !first {
                write!(f, "*")?;
            }
            first = false;
            write!(f, "x{}", i + 1)?;
            if e > 1 {
                write!(f, "^{e}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}
