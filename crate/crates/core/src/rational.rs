//! Exact rational scalars and the small amount of formatting glue they need.

use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

/// The scalar type used everywhere: arbitrary-precision rationals.
pub type Rational = BigRational;

/// A point (or row) of rationals.
pub type Point = Vec<Rational>;

pub fn int(value: i64) -> Rational {
    Rational::from_integer(BigInt::from(value))
}

pub fn frac(numer: i64, denom: i64) -> Rational {
    Rational::new(BigInt::from(numer), BigInt::from(denom))
}

pub fn point(values: &[i64]) -> Point {
    values.iter().map(|&v| int(v)).collect()
}

pub fn dot(a: &[Rational], b: &[Rational]) -> Rational {
    debug_assert_eq!(a.len(), b.len());
    a.iter()
        .zip(b)
        .fold(Rational::zero(), |acc, (x, y)| acc + x * y)
}

/// Inner product of a rational weight with a non-negative integer exponent.
pub fn dot_exponent(weight: &[Rational], exponent: &[u32]) -> Rational {
    debug_assert_eq!(weight.len(), exponent.len());
    weight
        .iter()
        .zip(exponent)
        .filter(|(_, &e)| e != 0)
        .fold(Rational::zero(), |acc, (w, &e)| acc + w * BigInt::from(e))
}

/// `p/q` for proper rationals, the bare integer otherwise.
pub fn format_rational(value: &Rational) -> String {
    if value.is_integer() {
        value.numer().to_string()
    } else {
        format!("{}/{}", value.numer(), value.denom())
    }
}

/// Parses `p`, `-p` or `p/q`. Returns `None` for anything else, including a zero denominator.
pub fn parse_rational(text: &str) -> Option<Rational> {
    let text = text.trim();
    let (numer, denom) = match text.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (text, "1"),
    };
    let numer = BigInt::from_str(numer).ok()?;
    let denom = BigInt::from_str(denom).ok()?;
    if denom.is_zero() {
        return None;
    }
    Some(Rational::new(numer, denom))
}

/// JSON encoding of a rational: integers that fit in an `i64` become numbers, all else strings.
pub fn rational_to_json(value: &Rational) -> serde_json::Value {
    if value.is_integer() {
        if let Some(v) = value.numer().to_i64() {
            return serde_json::Value::from(v);
        }
    }
    serde_json::Value::String(format_rational(value))
}

pub fn rational_from_json(value: &serde_json::Value) -> Option<Rational> {
    match value {
        serde_json::Value::Number(n) => n.as_i64().map(int),
        serde_json::Value::String(s) => parse_rational(s),
        _ => None,
    }
}

pub fn gcd_u32(a: u32, b: u32) -> u32 {
    a.gcd(&b)
}

pub fn lcm_u64(a: u64, b: u64) -> u64 {
    a.lcm(&b)
}

/// Scales a rational vector to a primitive integer vector with the same direction.
/// The zero vector is returned unchanged.
pub fn primitive_integer(v: &[Rational]) -> Vec<BigInt> {
    let denom_lcm = v.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    let ints: Vec<BigInt> = v.iter().map(|x| (x * &denom_lcm).to_integer()).collect();
    let g = ints.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    if g.is_zero() {
        return ints;
    }
    ints.into_iter().map(|x| x / &g).collect()
}

pub fn is_integral(v: &[Rational]) -> bool {
    v.iter().all(|x| x.is_integer())
}
