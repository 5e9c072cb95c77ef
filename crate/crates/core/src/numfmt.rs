//! Deterministic number formatting shared by JSON, CSV and text output.
//!
//! Big integers are written as exact decimal JSON numbers. Reals are written
//! with ten significant digits.

use num_bigint::BigInt;
use serde::Serializer;
use serde_json::Number;

pub const REAL_SIG_DIGITS: usize = 10;

/// Format `x` with ten significant digits, in positional notation for
/// moderate magnitudes and scientific notation otherwise.
pub fn format_real(x: f64) -> String {
    if x == 0.0 {
        return "0".to_string();
    }
    if !x.is_finite() {
        return x.to_string();
    }
    // Round once in scientific form so the exponent reflects the rounded value.
    let sci = format!("{:.*e}", REAL_SIG_DIGITS - 1, x);
    let (_, exp) = sci.split_once('e').expect("scientific format");
    let exp: i32 = exp.parse().expect("exponent");
    if (-5..15).contains(&exp) {
        let decimals = (REAL_SIG_DIGITS as i32 - 1 - exp).max(0) as usize;
        format!("{:.*}", decimals, x)
    } else {
        sci
    }
}

/// Round to ten significant digits.
pub fn round_real(x: f64) -> f64 {
    format_real(x).parse().unwrap_or(x)
}

fn real_number(x: f64) -> Option<Number> {
    if !x.is_finite() {
        return None;
    }
    format_real(x).parse().ok()
}

pub fn ser_real<S: Serializer>(x: &f64, s: S) -> Result<S::Ok, S::Error> {
    match real_number(*x) {
        Some(n) => s.serialize_some(&n),
        None => s.serialize_none(),
    }
}

pub fn ser_real_opt<S: Serializer>(x: &Option<f64>, s: S) -> Result<S::Ok, S::Error> {
    match x.and_then(real_number) {
        Some(n) => s.serialize_some(&n),
        None => s.serialize_none(),
    }
}

pub fn big_number(x: &BigInt) -> Number {
    x.to_string().parse().expect("integer literal is a JSON number")
}

pub fn ser_big<S: Serializer>(x: &BigInt, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_some(&big_number(x))
}

pub fn ser_big_opt<S: Serializer>(x: &Option<BigInt>, s: S) -> Result<S::Ok, S::Error> {
    match x {
        Some(v) => s.serialize_some(&big_number(v)),
        None => s.serialize_none(),
    }
}

pub fn ser_big_vec<S: Serializer>(xs: &[BigInt], s: S) -> Result<S::Ok, S::Error> {
    s.collect_seq(xs.iter().map(big_number))
}
