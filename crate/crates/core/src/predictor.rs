//! Sparse-FGLM cost parameters predicted from `(d, p, n)` alone.
//!
//! `m` (the number of non-trivial columns of the multiplication matrix) is
//! computed three ways: exactly as the largest coefficient of `H`, from the
//! closed form valid for `d = 2` and large `n`, and from the asymptotic
//! formula for `d >= 3`. Cost figures are dominant-term model estimates with
//! all constants set to one; they are not operation counts of a real run.

use num_bigint::BigInt;
use num_traits::{One, ToPrimitive, Zero};
use serde::Serialize;

use crate::error::{invalid, Result};
use crate::hilbert::{hilbert_binomial, SystemParams};
use crate::numfmt;
use crate::series::binomial;

/// Fractional bits carried by the fixed-point evaluation of the asymptotic formula.
const FIXED_BITS: u64 = 192;

/// pi * 10^62, truncated.
const PI_SCALED: &str = "314159265358979323846264338327950288419716939937510582097494459";
const PI_SCALE_DIGITS: u32 = 62;

pub fn ideal_degree(params: &SystemParams) -> BigInt {
    params.ideal_degree()
}

/// Largest coefficient of `H`.
pub fn m_exact(params: &SystemParams) -> BigInt {
    let h = hilbert_binomial(params);
    h.max_coeff().map(|(_, c)| c.clone()).unwrap_or_default()
}

/// `sum_{k=0}^{p-1} C(n-p-1+k, k) C(p, floor(3p/2) - 1 - k)`, the value of the
/// coefficient of `H` at degree `floor(3p/2) - 1` when `d = 2`.
pub fn m_closed_d2(params: &SystemParams) -> Result<BigInt> {
    if params.d != 2 {
        return invalid(format!("closed form for m requires d = 2, got d = {}", params.d));
    }
    let (p, n) = (params.p as i64, params.n as i64);
    let top = 3 * p / 2 - 1;
    Ok((0..p)
        .map(|k| binomial(n - p - 1 + k, k) * binomial(p, top - k))
        .sum())
}

/// Asymptotic estimate of `m` for `d >= 3`.
#[derive(Clone, Debug, PartialEq)]
pub struct AsymptoticEstimate {
    pub real: f64,
    /// Ceiling of the real value, the integer estimate reported for `m`.
    pub ceiling: BigInt,
}

/// `floor(sqrt(6 / (r * s * pi)) * 2^FIXED_BITS)`
fn fixed_sqrt_ratio(r: &BigInt, s: &BigInt) -> BigInt {
    let pi: BigInt = PI_SCALED.parse().expect("pi constant");
    let numerator = BigInt::from(6) * BigInt::from(10).pow(PI_SCALE_DIGITS) << (2 * FIXED_BITS);
    (numerator / (r * s * pi)).sqrt()
}

fn fixed_to_f64(x: &BigInt) -> f64 {
    let bits = x.bits();
    if bits <= 1000 {
        return x.to_f64().unwrap_or(f64::INFINITY) / 2f64.powi(FIXED_BITS as i32);
    }
    let shift = bits - 64;
    (x >> shift).to_f64().unwrap_or(f64::INFINITY) * 2f64.powi(shift as i32 - FIXED_BITS as i32)
}

/// `(1/sqrt((n-p) pi)) sqrt(6/((d-1)^2-1)) d^p (d-1)^(n-p) C(n-2, p-1)`.
///
/// The integer factors are exact; only the square-root factor is evaluated
/// in fixed point, with far more than 64 bits of precision.
pub fn m_asymptotic(params: &SystemParams) -> Result<AsymptoticEstimate> {
    if params.d < 3 {
        return invalid(format!(
            "asymptotic formula for m requires d >= 3, got d = {}; use the d = 2 closed form",
            params.d
        ));
    }
    let (d, p, n) = (params.d, params.p, params.n);
    let exact_part = BigInt::from(d).pow(p)
        * BigInt::from(d - 1).pow(n - p)
        * binomial(n as i64 - 2, p as i64 - 1);
    let r = BigInt::from((d - 1) * (d - 1) - 1);
    let s = BigInt::from(n - p);
    let fixed = exact_part * fixed_sqrt_ratio(&r, &s);
    let unit = BigInt::one() << FIXED_BITS;
    let ceiling = (&fixed + &unit - BigInt::one()) >> FIXED_BITS;
    Ok(AsymptoticEstimate { real: fixed_to_f64(&fixed), ceiling })
}

/// Natural log of the estimate `q^s sqrt(6 / ((q^2 - 1) pi s))` for the
/// central coefficient of `(1 + t + ... + t^(q-1))^s`, where `q` counts terms.
pub fn central_coeff_asymptotic_ln(q_terms: u32, s: u32) -> Result<f64> {
    if q_terms < 2 || s < 1 {
        return invalid(format!("central coefficient estimate needs q >= 2, s >= 1; got q = {q_terms}, s = {s}"));
    }
    let (q, s) = (q_terms as f64, s as f64);
    Ok(s * q.ln() + 0.5 * (6.0 / ((q * q - 1.0) * std::f64::consts::PI * s)).ln())
}

/// The estimate itself; overflows to infinity for large `s`, use the log form there.
pub fn central_coeff_asymptotic(q_terms: u32, s: u32) -> Result<f64> {
    Ok(central_coeff_asymptotic_ln(q_terms, s)?.exp())
}

/// Natural log of a positive big integer.
pub fn ln_big(x: &BigInt) -> f64 {
    let bits = x.bits();
    if bits <= 64 {
        return x.to_f64().unwrap_or(0.0).ln();
    }
    let shift = bits - 64;
    (x >> shift).to_f64().unwrap_or(0.0).ln() + shift as f64 * std::f64::consts::LN_2
}

/// Ratio of two big integers as a float, accurate for operands of any size.
pub fn ratio(num: &BigInt, den: &BigInt) -> f64 {
    let shift = num.bits().max(den.bits()).saturating_sub(900);
    let n = (num >> shift).to_f64().unwrap_or(f64::NAN);
    let d = (den >> shift).to_f64().unwrap_or(f64::NAN);
    n / d
}

/// Density counting one unit entry for every trivial column: `(mD + (D - m)) / D^2`.
pub fn adjusted_density(m: &BigInt, degree: &BigInt) -> f64 {
    ratio(&(m * degree + (degree - m)), &(degree * degree))
}

/// Least `n0 <= n_max` such that the `d = 2` closed form equals the exact
/// value for every `n` in `n0..=n_max`.
pub fn d2_threshold(p: u32, n_max: u32) -> Option<u32> {
    let mut n0 = None;
    for n in (p + 1..=n_max).rev() {
        let params = SystemParams::new(2, p, n).ok()?;
        if m_closed_d2(&params).ok()? == m_exact(&params) {
            n0 = Some(n);
        } else {
            break;
        }
    }
    n0
}

/// Every predicted quantity for one parameter set.
#[derive(Clone, Debug, Serialize)]
pub struct PredictionReport {
    pub params: SystemParams,
    #[serde(rename = "D", serialize_with = "numfmt::ser_big")]
    pub degree: BigInt,
    #[serde(serialize_with = "numfmt::ser_big")]
    pub m_exact: BigInt,
    #[serde(serialize_with = "numfmt::ser_big_opt")]
    pub m_closed_d2: Option<BigInt>,
    #[serde(serialize_with = "numfmt::ser_real_opt")]
    pub m_asymptotic_real: Option<f64>,
    #[serde(serialize_with = "numfmt::ser_big_opt")]
    pub m_asymptotic_int: Option<BigInt>,
    /// Formula-based `m`: the closed form for `d = 2`, the asymptotic ceiling otherwise.
    #[serde(serialize_with = "numfmt::ser_big")]
    pub m_formula: BigInt,
    #[serde(serialize_with = "numfmt::ser_real")]
    pub density_theoretical: f64,
    #[serde(serialize_with = "numfmt::ser_real")]
    pub density_adjusted: f64,
    #[serde(serialize_with = "numfmt::ser_real")]
    pub density_asymptotic: f64,
    #[serde(serialize_with = "numfmt::ser_real")]
    pub density_asymptotic_adjusted: f64,
    #[serde(serialize_with = "numfmt::ser_real")]
    pub sparse_fglm_cost: f64,
    #[serde(serialize_with = "numfmt::ser_real")]
    pub fglm_cost: f64,
    #[serde(serialize_with = "numfmt::ser_real")]
    pub gain_exact: f64,
    #[serde(serialize_with = "numfmt::ser_real")]
    pub gain_closed: f64,
    pub cost_kind: &'static str,
}

pub fn cost_model(params: &SystemParams) -> PredictionReport {
    let degree = ideal_degree(params);
    let m = m_exact(params);
    let closed = m_closed_d2(params).ok();
    let asym = m_asymptotic(params).ok();
    let m_formula = match (&closed, &asym) {
        (Some(c), _) => c.clone(),
        (None, Some(a)) => a.ceiling.clone(),
        (None, None) => BigInt::zero(),
    };
    let (d, p, n) = (params.d as f64, params.p as f64, params.n as f64);
    let deg_f = degree.to_f64().unwrap_or(f64::INFINITY);
    let m_f = m.to_f64().unwrap_or(f64::INFINITY);
    let log_d = deg_f.log2();
    PredictionReport {
        params: *params,
        density_theoretical: ratio(&m, &degree),
        density_adjusted: adjusted_density(&m, &degree),
        density_asymptotic: ratio(&m_formula, &degree),
        density_asymptotic_adjusted: adjusted_density(&m_formula, &degree),
        sparse_fglm_cost: m_f * deg_f * deg_f + n * deg_f * log_d * log_d,
        fglm_cost: n * deg_f * deg_f * deg_f,
        gain_exact: ratio(&m, &(&degree * BigInt::from(params.n))),
        gain_closed: (n - p).sqrt() / (n * n * (d - 1.0)),
        cost_kind: "model estimate",
        m_asymptotic_real: asym.as_ref().map(|a| a.real),
        m_asymptotic_int: asym.map(|a| a.ceiling),
        m_closed_d2: closed,
        m_formula,
        m_exact: m,
        degree,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hilbert::HilbertProfile;
    use crate::series::IntPoly;

    fn params(d: u32, p: u32, n: u32) -> SystemParams {
        SystemParams::new(d, p, n).unwrap()
    }

    fn big(v: i64) -> BigInt {
        BigInt::from(v)
    }

    #[test]
    fn ideal_degree_values() {
        assert_eq!(ideal_degree(&params(2, 4, 9)), big(896));
        assert_eq!(ideal_degree(&params(3, 3, 6)), big(2160));
        assert_eq!(ideal_degree(&params(6, 2, 5)), big(18000));
        assert_eq!(ideal_degree(&params(3, 2, 3)), big(36));
    }

    #[test]
    fn m_exact_values() {
        assert_eq!(m_exact(&params(3, 2, 3)), big(8));
        assert_eq!(m_exact(&params(4, 2, 3)), big(15));
        assert_eq!(m_exact(&params(4, 2, 5)), big(266));
    }

    #[test]
    fn closed_form_values() {
        assert_eq!(m_closed_d2(&params(2, 1, 2)).unwrap(), big(1));
        assert_eq!(m_closed_d2(&params(2, 4, 9)).unwrap(), big(275));
        assert_eq!(m_closed_d2(&params(2, 4, 11)).unwrap(), big(623));
        assert_eq!(m_exact(&params(2, 4, 9)), big(275));
        assert_eq!(m_exact(&params(2, 4, 11)), big(623));
        assert!(m_closed_d2(&params(3, 2, 3)).is_err());
    }

    #[test]
    fn closed_form_threshold() {
        for p in 1..=5 {
            let n0 = d2_threshold(p, 20).expect("threshold exists");
            assert!(n0 <= 3 * p + 2, "p={p} n0={n0}");
        }
        assert_eq!(d2_threshold(4, 20), Some(8));
    }

    #[test]
    fn sigma_for_quadrics() {
        for p in 1..=5u32 {
            for n in 3 * p + 2..=20 {
                let prof = HilbertProfile::new(params(2, p, n));
                assert_eq!(prof.sigma as u32, (3 * p / 2).saturating_sub(1), "p={p} n={n}");
            }
        }
    }

    #[test]
    fn asymptotic_values() {
        let a = m_asymptotic(&params(4, 2, 3)).unwrap();
        assert!((a.real - 23.4529).abs() < 1e-3);
        assert_eq!(a.ceiling, big(24));
        let a = m_asymptotic(&params(4, 2, 4)).unwrap();
        assert!((a.real - 99.50).abs() < 0.01);
        assert_eq!(a.ceiling, big(100));
        let a = m_asymptotic(&params(4, 2, 5)).unwrap();
        assert!((a.real - 365.6).abs() < 0.05);
        assert_eq!(a.ceiling, big(366));
        let a = m_asymptotic(&params(4, 2, 6)).unwrap();
        assert_eq!(a.ceiling, big(1267));
        assert!((ratio(&a.ceiling, &big(6480)) - 0.1955246914).abs() < 1e-10);
        assert!(m_asymptotic(&params(2, 2, 5)).is_err());
    }

    #[test]
    fn asymptotic_matches_plain_float_evaluation() {
        for (d, p, n) in [(3, 3, 6), (5, 2, 9), (8, 4, 12)] {
            let a = m_asymptotic(&params(d, p, n)).unwrap();
            let df = d as f64;
            let plain = 1.0 / (((n - p) as f64) * std::f64::consts::PI).sqrt()
                * (6.0 / ((df - 1.0).powi(2) - 1.0)).sqrt()
                * df.powi(p as i32)
                * (df - 1.0).powi((n - p) as i32)
                * binomial(n as i64 - 2, p as i64 - 1).to_f64().unwrap();
            assert!(((a.real - plain) / plain).abs() < 1e-12);
        }
    }

    #[test]
    fn central_estimate_against_exact_expansion() {
        let exact = crate::series::geo(3).unwrap().pow(10).coeff(10);
        assert_eq!(exact, big(8953));
        let est = central_coeff_asymptotic(3, 10).unwrap();
        assert!((est - 9123.6).abs() < 0.1, "{est}");
        assert!(((est - 8953.0) / 8953.0).abs() < 0.02);

        // q = 2, s = 20: the central binomial C(20, 10) = 184756.
        let est = central_coeff_asymptotic(2, 20).unwrap();
        let exact = IntPoly::from_i64s(&[1, 1]).pow(20).coeff(10);
        assert_eq!(exact, big(184756));
        // The estimate overshoots by roughly 1/(4s) for two-term factors.
        let rel = (est - 184756.0) / 184756.0;
        assert!((rel - 1.0 / 80.0).abs() < 5e-4, "{rel}");

        // q = 2, s = 10000 against the exact central binomial.
        let ln_exact = ln_big(&binomial(10000, 5000));
        let ln_est = central_coeff_asymptotic_ln(2, 10000).unwrap();
        assert!((ln_est - ln_exact).exp_m1().abs() < 1e-3);
        assert!(central_coeff_asymptotic(1, 5).is_err());
    }

    #[test]
    fn cost_model_values() {
        let r = cost_model(&params(3, 2, 3));
        assert_eq!((r.degree.clone(), r.m_exact.clone()), (big(36), big(8)));
        assert!((r.density_theoretical - 8.0 / 36.0).abs() < 1e-15);
        let r = cost_model(&params(2, 4, 9));
        assert!((r.gain_exact - 275.0 / (9.0 * 896.0)).abs() < 1e-15);
        assert_eq!(r.m_formula, big(275));
        let r = cost_model(&params(4, 2, 5));
        assert!((r.gain_closed - 3f64.sqrt() / 75.0).abs() < 1e-15);
        assert_eq!(r.m_asymptotic_int, Some(big(366)));
        assert!((r.sparse_fglm_cost - (266.0 * 1728.0f64.powi(2) + 5.0 * 1728.0 * 1728f64.log2().powi(2))).abs() < 1.0);
    }

    #[test]
    fn density_invariants() {
        for (d, p, n) in [(2, 1, 2), (3, 2, 3), (2, 4, 9), (8, 4, 20), (5, 3, 7)] {
            let r = cost_model(&params(d, p, n));
            assert!(r.m_exact > BigInt::zero() && r.m_exact <= r.degree);
            let deg = r.degree.to_f64().unwrap();
            assert!(r.density_theoretical <= r.density_adjusted);
            let bound = r.density_theoretical + (1.0 - r.density_theoretical) / deg;
            assert!(r.density_adjusted <= bound * (1.0 + 1e-15));
        }
    }

    #[test]
    fn big_helpers() {
        let x = BigInt::from(10).pow(400);
        assert!((ln_big(&x) - 400.0 * 10f64.ln()).abs() < 1e-9);
        assert!((ratio(&(&x * 3), &(&x * 4)) - 0.75).abs() < 1e-15);
    }
}
