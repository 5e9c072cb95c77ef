//! Exact integer polynomial arithmetic and binomial-determinant combinatorics.
//!
//! Everything here works in the ring Z[t] with dense coefficient vectors.
//! Degrees stay in the low hundreds for every parameter set we care about,
//! so schoolbook multiplication is all that is needed.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{invalid, Error, Result};

/// Largest matrix accepted by [`poly_det`].
pub const MAX_DET_SIZE: usize = 16;

/// Binomial coefficient with the combinatorial convention:
/// `C(a, b) = 0` whenever `b < 0`, `a < 0` or `b > a`.
pub fn binomial(a: i64, b: i64) -> BigInt {
    if b < 0 || a < 0 || b > a {
        return BigInt::zero();
    }
    let b = b.min(a - b);
    let mut acc = BigInt::one();
    for i in 0..b {
        acc *= a - i;
        acc /= i + 1;
    }
    acc
}

/// Dense univariate polynomial over Z, lowest degree first, trailing zeros trimmed.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct IntPoly {
    coeffs: Vec<BigInt>,
}

impl IntPoly {
    pub fn zero() -> Self {
        IntPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        IntPoly::constant(BigInt::one())
    }

    pub fn constant(c: BigInt) -> Self {
        IntPoly::from_coeffs(vec![c])
    }

    /// `c * t^k`
    pub fn monomial(c: BigInt, k: usize) -> Self {
        let mut coeffs = vec![BigInt::zero(); k + 1];
        coeffs[k] = c;
        IntPoly::from_coeffs(coeffs)
    }

    pub fn from_coeffs(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        IntPoly { coeffs }
    }

    pub fn from_i64s(coeffs: &[i64]) -> Self {
        IntPoly::from_coeffs(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<BigInt> {
        self.coeffs
    }

    /// Coefficient of `t^k`; zero beyond the degree.
    pub fn coeff(&self, k: usize) -> BigInt {
        self.coeffs.get(k).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Index of the lowest non-zero coefficient.
    pub fn valuation(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    /// Value at `t = 1`, i.e. the sum of the coefficients.
    pub fn eval_at_one(&self) -> BigInt {
        self.coeffs.iter().sum()
    }

    pub fn eval(&self, x: &BigInt) -> BigInt {
        self.coeffs
            .iter()
            .rev()
            .fold(BigInt::zero(), |acc, c| acc * x + c)
    }

    /// Largest coefficient together with the least index attaining it.
    pub fn max_coeff(&self) -> Option<(usize, &BigInt)> {
        let mut best: Option<(usize, &BigInt)> = None;
        for (i, c) in self.coeffs.iter().enumerate() {
            if best.is_none_or(|(_, b)| c > b) {
                best = Some((i, c));
            }
        }
        best
    }

    /// Number of non-zero terms.
    pub fn term_count(&self) -> usize {
        self.coeffs.iter().filter(|c| !c.is_zero()).count()
    }

    /// Multiply by `t^k`.
    pub fn shift(&self, k: usize) -> Self {
        if self.is_zero() {
            return IntPoly::zero();
        }
        let mut coeffs = vec![BigInt::zero(); k];
        coeffs.extend(self.coeffs.iter().cloned());
        IntPoly { coeffs }
    }

    /// Divide by `t^k`, failing if the low coefficients are not all zero.
    pub fn unshift(&self, k: usize) -> Option<Self> {
        if self.coeffs.iter().take(k).any(|c| !c.is_zero()) {
            return None;
        }
        Some(IntPoly::from_coeffs(self.coeffs.iter().skip(k).cloned().collect()))
    }

    /// Substitute `t -> t^k`.
    pub fn inflate(&self, k: usize) -> Self {
        assert!(k >= 1, "inflation factor must be positive");
        if self.is_zero() {
            return IntPoly::zero();
        }
        let mut coeffs = vec![BigInt::zero(); (self.coeffs.len() - 1) * k + 1];
        for (i, c) in self.coeffs.iter().enumerate() {
            coeffs[i * k] = c.clone();
        }
        IntPoly { coeffs }
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        IntPoly::from_coeffs(self.coeffs.iter().map(|a| a * c).collect())
    }

    /// Multiply by `1 + t + ... + t^(r-1)` using a sliding window sum.
    pub fn mul_geo(&self, r: usize) -> Self {
        assert!(r >= 1, "geometric factor needs at least one term");
        if self.is_zero() {
            return IntPoly::zero();
        }
        let len = self.coeffs.len() + r - 1;
        let mut out = Vec::with_capacity(len);
        let mut window = BigInt::zero();
        for k in 0..len {
            if let Some(c) = self.coeffs.get(k) {
                window += c;
            }
            if k >= r {
                window -= &self.coeffs[k - r];
            }
            out.push(window.clone());
        }
        IntPoly::from_coeffs(out)
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = IntPoly::one();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Exact quotient `self / divisor` in Z[t], or `None` if the division
    /// leaves a remainder or requires non-integer coefficients.
    pub fn div_exact(&self, divisor: &IntPoly) -> Option<Self> {
        let dd = divisor.degree()?;
        if self.is_zero() {
            return Some(IntPoly::zero());
        }
        let nd = self.degree()?;
        if nd < dd {
            return None;
        }
        let lead = &divisor.coeffs[dd];
        let mut rem = self.coeffs.clone();
        let mut quot = vec![BigInt::zero(); nd - dd + 1];
        for k in (0..=nd - dd).rev() {
            let top = &rem[k + dd];
            if top.is_zero() {
                continue;
            }
            let (q, r) = top.div_rem(lead);
            if !r.is_zero() {
                return None;
            }
            for (i, c) in divisor.coeffs.iter().enumerate() {
                rem[k + i] -= &q * c;
            }
            quot[k] = q;
        }
        if rem.iter().any(|c| !c.is_zero()) {
            return None;
        }
        Some(IntPoly::from_coeffs(quot))
    }

    pub fn all_non_negative(&self) -> bool {
        self.coeffs.iter().all(|c| !c.is_negative())
    }
}

impl fmt::Debug for IntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list()
            .entries(self.coeffs.iter().map(|c| c.to_string()))
            .finish()
    }
}

impl fmt::Display for IntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let (sign, mag) = if c.is_negative() { ("-", -c) } else { ("+", c.clone()) };
            if first {
                if sign == "-" {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            first = false;
            match (k, mag.is_one()) {
                (0, _) => write!(f, "{mag}")?,
                (1, true) => write!(f, "t")?,
                (1, false) => write!(f, "{mag}*t")?,
                (_, true) => write!(f, "t^{k}")?,
                (_, false) => write!(f, "{mag}*t^{k}")?,
            }
        }
        Ok(())
    }
}

impl Add for &IntPoly {
    type Output = IntPoly;
    fn add(self, rhs: &IntPoly) -> IntPoly {
        let len = self.coeffs.len().max(rhs.coeffs.len());
        IntPoly::from_coeffs((0..len).map(|k| self.coeff(k) + rhs.coeff(k)).collect())
    }
}

impl Sub for &IntPoly {
    type Output = IntPoly;
    fn sub(self, rhs: &IntPoly) -> IntPoly {
        let len = self.coeffs.len().max(rhs.coeffs.len());
        IntPoly::from_coeffs((0..len).map(|k| self.coeff(k) - rhs.coeff(k)).collect())
    }
}

impl Neg for &IntPoly {
    type Output = IntPoly;
    fn neg(self) -> IntPoly {
        IntPoly { coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }
}

impl Mul for &IntPoly {
    type Output = IntPoly;
    fn mul(self, rhs: &IntPoly) -> IntPoly {
        if self.is_zero() || rhs.is_zero() {
            return IntPoly::zero();
        }
        let mut out = vec![BigInt::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        IntPoly::from_coeffs(out)
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for IntPoly {
            type Output = IntPoly;
            fn $m(self, rhs: IntPoly) -> IntPoly {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

/// `1 + t + ... + t^(r-1)`.
pub fn geo(r: i64) -> Result<IntPoly> {
    if r < 1 {
        return invalid(format!("geo needs r >= 1, got {r}"));
    }
    Ok(IntPoly::from_coeffs(vec![BigInt::one(); r as usize]))
}

/// Row-major matrix of integer polynomials.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntPolyMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<IntPoly>,
}

impl IntPolyMatrix {
    pub fn new(rows: usize, cols: usize, entries: Vec<IntPoly>) -> Result<Self> {
        if entries.len() != rows * cols {
            return invalid(format!(
                "matrix of shape {rows}x{cols} needs {} entries, got {}",
                rows * cols,
                entries.len()
            ));
        }
        Ok(IntPolyMatrix { rows, cols, entries })
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> IntPoly) -> Self {
        let mut entries = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                entries.push(f(i, j));
            }
        }
        IntPolyMatrix { rows, cols, entries }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &IntPoly {
        &self.entries[i * self.cols + j]
    }

    fn check_square(&self) -> Result<usize> {
        if self.rows != self.cols {
            return invalid(format!("determinant of non-square {}x{} matrix", self.rows, self.cols));
        }
        if self.rows > MAX_DET_SIZE {
            return invalid(format!("determinant size {} exceeds {MAX_DET_SIZE}", self.rows));
        }
        Ok(self.rows)
    }
}

/// The `m x m` matrix with entries `sum_{k=0}^{m} C(x-i,k) C(y-j,k) t^(stride*k)`
/// for `1 <= i, j <= m`.
pub fn binomial_product_matrix(m: usize, x: i64, y: i64, stride: usize) -> IntPolyMatrix {
    IntPolyMatrix::from_fn(m, m, |i, j| {
        let (i, j) = (i as i64 + 1, j as i64 + 1);
        let coeffs = (0..=m as i64)
            .map(|k| binomial(x - i, k) * binomial(y - j, k))
            .collect();
        IntPoly::from_coeffs(coeffs).inflate(stride.max(1))
    })
}

/// Determinant by fraction-free (Bareiss) elimination in Z[t].
pub fn poly_det(m: &IntPolyMatrix) -> Result<IntPoly> {
    let n = m.check_square()?;
    if n == 0 {
        return Ok(IntPoly::one());
    }
    let mut a: Vec<Vec<IntPoly>> = (0..n)
        .map(|i| (0..n).map(|j| m.get(i, j).clone()).collect())
        .collect();
    let mut negate = false;
    let mut prev = IntPoly::one();
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            let Some(swap) = (k + 1..n).find(|&r| !a[r][k].is_zero()) else {
                return Ok(IntPoly::zero());
            };
            a.swap(k, swap);
            negate = !negate;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = &(&a[i][j] * &a[k][k]) - &(&a[i][k] * &a[k][j]);
                a[i][j] = num.div_exact(&prev).ok_or_else(|| {
                    Error::InternalInconsistency("Bareiss step was not an exact division".into())
                })?;
            }
        }
        prev = a[k][k].clone();
    }
    let det = a[n - 1][n - 1].clone();
    Ok(if negate { -&det } else { det })
}

/// Determinant by Laplace expansion along the first row. Exponential in the
/// size; kept as an independent check on [`poly_det`].
pub fn poly_det_cofactor(m: &IntPolyMatrix) -> Result<IntPoly> {
    let n = m.check_square()?;
    let rows: Vec<usize> = (0..n).collect();
    let cols: Vec<usize> = (0..n).collect();
    Ok(laplace(m, &rows, &cols))
}

fn laplace(m: &IntPolyMatrix, rows: &[usize], cols: &[usize]) -> IntPoly {
    match rows.len() {
        0 => IntPoly::one(),
        1 => m.get(rows[0], cols[0]).clone(),
        _ => {
            let mut acc = IntPoly::zero();
            for (pos, &c) in cols.iter().enumerate() {
                let entry = m.get(rows[0], c);
                if entry.is_zero() {
                    continue;
                }
                let rest: Vec<usize> = cols.iter().copied().filter(|&x| x != c).collect();
                let term = entry * &laplace(m, &rows[1..], &rest);
                acc = if pos % 2 == 0 { &acc + &term } else { &acc - &term };
            }
            acc
        }
    }
}

/// Minor of the infinite Pascal matrix `(C(i, j))_{i,j >= 0}` on the given
/// strictly ascending row and column index sets.
pub fn pascal_minor(rows: &[i64], cols: &[i64]) -> Result<BigInt> {
    if rows.len() != cols.len() {
        return invalid(format!(
            "pascal_minor needs equally many rows and columns, got {} and {}",
            rows.len(),
            cols.len()
        ));
    }
    for (name, idx) in [("rows", rows), ("cols", cols)] {
        if idx.iter().any(|&v| v < 0) || idx.windows(2).any(|w| w[0] >= w[1]) {
            return invalid(format!("{name} must be non-negative and strictly ascending"));
        }
    }
    let k = rows.len();
    let mat = IntPolyMatrix::from_fn(k, k, |i, j| IntPoly::constant(binomial(rows[i], cols[j])));
    Ok(poly_det(&mat)?.coeff(0))
}

/// `sum_{k=0}^{m} C(x-m-1+k, k) C(y-m-1+k, k) t^k`, the closed form of
/// `det(binomial_product_matrix(m, x, y, 1)) / t^C(m,2)`.
pub fn cauchy_binet_rhs(m: i64, x: i64, y: i64) -> Result<IntPoly> {
    if m < 1 {
        return invalid(format!("cauchy_binet_rhs needs m >= 1, got {m}"));
    }
    Ok(IntPoly::from_coeffs(
        (0..=m)
            .map(|k| binomial(x - m - 1 + k, k) * binomial(y - m - 1 + k, k))
            .collect(),
    ))
}
