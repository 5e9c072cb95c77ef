use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::field::{FieldElem, PrimeField};
use super::monomial::{Monomial, MAX_VARS};
use super::poly::FieldMPoly;
use crate::error::{invalid, Error, Result};
use crate::hilbert::SystemParams;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Mode {
    /// `p` dense degree-`d` polynomials plus the maximal minors of an
    /// independent `p x (n-1)` matrix of dense degree-`(d-1)` polynomials.
    Generic,
    /// `p` dense degree-`d` polynomials plus the maximal minors of their
    /// partial derivatives in `x_2, ..., x_n`.
    CriticalPoint,
}

impl FromStr for Mode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "generic" => Ok(Mode::Generic),
            "critical-point" | "critical_point" => Ok(Mode::CriticalPoint),
            other => invalid(format!("unknown mode {other:?}; expected generic or critical-point")),
        }
    }
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Mode::Generic => "generic",
            Mode::CriticalPoint => "critical-point",
        })
    }
}

/// All monomials of total degree at most `deg` in `nvars` variables.
pub fn monomials_up_to(nvars: usize, deg: u32) -> Vec<Monomial> {
    let mut out = vec![Monomial::one(nvars)];
    let mut layer = vec![Monomial::one(nvars)];
    for _ in 0..deg {
        let mut next = Vec::new();
        for m in &layer {
            // Only raise variables at or after the last non-zero one, so each
            // monomial is produced once.
            let start = (0..nvars).rev().find(|&i| m.exp(i) > 0).unwrap_or(0);
            for i in start..nvars {
                next.push(m.mul_var(i));
            }
        }
        out.extend_from_slice(&next);
        layer = next;
    }
    out
}

fn dense_poly(field: &PrimeField, rng: &mut ChaCha8Rng, nvars: usize, deg: u32) -> FieldMPoly {
    let q = field.modulus();
    let terms: Vec<_> = monomials_up_to(nvars, deg).into_iter().map(|m| (m, rng.gen_range(0..q))).collect();
    FieldMPoly::from_terms(field, nvars, terms)
}

/// All maximal minors of a `p x c` matrix, `p <= c`, by Laplace expansion
/// along the first row with memoized sub-minors. Minors are listed in
/// lexicographic order of their column sets.
pub fn maximal_minors(field: &PrimeField, matrix: &[Vec<FieldMPoly>]) -> Vec<FieldMPoly> {
    let p = matrix.len();
    let c = matrix.first().map_or(0, |r| r.len());
    assert!(p >= 1 && p <= c && c <= 64, "need 1 <= rows <= cols <= 64");
    let nvars = matrix[0][0].nvars();
    let mut memo: HashMap<u64, FieldMPoly> = HashMap::new();

    // Determinant of rows `p - popcount(cols) ..` on the column set `cols`.
    fn minor(
        field: &PrimeField,
        matrix: &[Vec<FieldMPoly>],
        cols: u64,
        nvars: usize,
        memo: &mut HashMap<u64, FieldMPoly>,
    ) -> FieldMPoly {
        if cols == 0 {
            return FieldMPoly::term(field, 1, Monomial::one(nvars));
        }
        if let Some(v) = memo.get(&cols) {
            return v.clone();
        }
        let row = matrix.len() - cols.count_ones() as usize;
        let mut acc = FieldMPoly::zero(nvars);
        let mut sign_negative = false;
        for j in 0..64 {
            if cols & (1 << j) == 0 {
                continue;
            }
            let sub = minor(field, matrix, cols & !(1 << j), nvars, memo);
            let prod = matrix[row][j].mul(field, &sub);
            acc = if sign_negative { acc.sub(field, &prod) } else { acc.add(field, &prod) };
            sign_negative = !sign_negative;
        }
        memo.insert(cols, acc.clone());
        acc
    }

    let mut out = Vec::new();
    let mut subset: Vec<usize> = (0..p).collect();
    loop {
        let mask = subset.iter().fold(0u64, |m, &j| m | 1 << j);
        out.push(minor(field, matrix, mask, nvars, &mut memo));
        // Next p-subset of 0..c in lexicographic order.
        let Some(i) = (0..p).rev().find(|&i| subset[i] < c - p + i) else { break };
        subset[i] += 1;
        for k in i + 1..p {
            subset[k] = subset[k - 1] + 1;
        }
    }
    out
}

/// A seeded random determinantal system in `n` variables.
pub fn gen_system(params: &SystemParams, seed: u64, mode: Mode, field: &PrimeField) -> Result<Vec<FieldMPoly>> {
    let n = params.n as usize;
    if n > MAX_VARS - 1 {
        return invalid(format!("n = {n} exceeds the supported {} variables", MAX_VARS - 1));
    }
    if params.d as usize * params.p as usize > 255 {
        return invalid("minor degree does not fit the exponent width");
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let p = params.p as usize;
    let f: Vec<FieldMPoly> = (0..p).map(|_| dense_poly(field, &mut rng, n, params.d)).collect();
    let matrix: Vec<Vec<FieldMPoly>> = match mode {
        Mode::Generic => (0..p)
            .map(|_| (0..n - 1).map(|_| dense_poly(field, &mut rng, n, params.d - 1)).collect())
            .collect(),
        Mode::CriticalPoint => f.iter().map(|fi| (1..n).map(|j| fi.derivative(field, j)).collect()).collect(),
    };
    let mut system = f;
    system.extend(maximal_minors(field, &matrix));
    Ok(system)
}

/// Append a least variable `y` and the relation `y - sum lambda_j x_j` with
/// distinct non-zero seeded `lambda`.
pub fn extend_primitive(system: &[FieldMPoly], seed: u64, field: &PrimeField) -> Result<(Vec<FieldMPoly>, Vec<FieldElem>)> {
    let Some(first) = system.first() else {
        return invalid("cannot extend an empty system");
    };
    let n = first.nvars();
    if n + 1 > MAX_VARS {
        return invalid("no room for an extra variable");
    }
    if (field.modulus() as usize) <= n + 1 {
        return invalid("field too small for distinct non-zero multipliers");
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x5eed_1a3b_da00_0001);
    let mut lambda: Vec<FieldElem> = Vec::with_capacity(n);
    while lambda.len() < n {
        let c = rng.gen_range(1..field.modulus());
        if !lambda.contains(&c) {
            lambda.push(c);
        }
    }
    let mut out: Vec<FieldMPoly> = system.iter().map(|f| f.embed(n + 1)).collect();
    let mut terms = vec![(Monomial::var(n + 1, n), 1)];
    terms.extend(lambda.iter().enumerate().map(|(j, &c)| (Monomial::var(n + 1, j), field.neg(c))));
    out.push(FieldMPoly::from_terms(field, n + 1, terms));
    Ok((out, lambda))
}
