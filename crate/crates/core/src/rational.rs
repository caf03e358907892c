//! Exact rational helpers shared by every module.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

pub use num_rational::BigRational as Rational;

pub fn int(v: i64) -> Rational {
    Rational::from_integer(BigInt::from(v))
}

pub fn ratio(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

pub fn big(v: impl Into<BigInt>) -> Rational {
    Rational::from_integer(v.into())
}

/// Exact sum by pairwise reduction, so intermediate denominators stay balanced.
pub fn sum<'a>(values: impl IntoIterator<Item = &'a Rational>) -> Rational {
    let mut level: Vec<Rational> = values.into_iter().cloned().collect();
    while level.len() > 1 {
        let mut next = Vec::with_capacity(level.len().div_ceil(2));
        let mut it = level.into_iter();
        while let Some(a) = it.next() {
            next.push(match it.next() {
                Some(b) => a + b,
                None => a,
            });
        }
        level = next;
    }
    level.pop().unwrap_or_else(Rational::zero)
}

pub fn pow2(k: u32) -> BigInt {
    BigInt::one() << k
}

/// Floor of an exact rational (rounds toward negative infinity).
pub fn floor(q: &Rational) -> BigInt {
    q.numer().div_floor(q.denom())
}

pub fn ceil(q: &Rational) -> BigInt {
    -((-q.numer()).div_floor(q.denom()))
}

/// Natural logarithm of a positive big integer, accurate to f64 precision
/// even when the value exceeds the f64 range.
pub fn ln_bigint(v: &BigInt) -> f64 {
    assert!(v.is_positive(), "ln of non-positive integer");
    let bits = v.bits();
    if bits <= 1000 {
        return v.to_f64().unwrap().ln();
    }
    let shift = bits - 64;
    let top = (v >> shift).to_f64().unwrap();
    top.ln() + shift as f64 * std::f64::consts::LN_2
}

pub fn ln_rational(q: &Rational) -> f64 {
    ln_bigint(q.numer()) - ln_bigint(q.denom())
}

/// Parses `a`, `-a`, `a/b` into an exact rational.
pub fn parse_rational(s: &str) -> Option<Rational> {
    let s = s.trim();
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().ok()?;
            let d: BigInt = d.trim().parse().ok()?;
            if d.is_zero() {
                return None;
            }
            Some(Rational::new(n, d))
        }
        None => s.parse::<BigInt>().ok().map(Rational::from_integer),
    }
}

pub fn format_rational(q: &Rational) -> String {
    if q.denom().is_one() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

/// JSON integers: plain numbers when they fit an i64, decimal strings otherwise.
pub fn int_to_json(v: &BigInt) -> serde_json::Value {
    match v.to_i64() {
        Some(x) => serde_json::Value::from(x),
        None => serde_json::Value::from(v.to_string()),
    }
}

fn int_from_json(v: &serde_json::Value) -> Option<BigInt> {
    match v {
        serde_json::Value::Number(n) => n.as_i64().map(BigInt::from),
        serde_json::Value::String(s) => s.parse().ok(),
        _ => None,
    }
}

pub fn rational_to_json(q: &Rational) -> serde_json::Value {
    serde_json::Value::Array(vec![int_to_json(q.numer()), int_to_json(q.denom())])
}

pub fn rational_from_json(v: &serde_json::Value) -> Option<Rational> {
    let pair = v.as_array()?;
    if pair.len() != 2 {
        return None;
    }
    let num = int_from_json(&pair[0])?;
    let den = int_from_json(&pair[1])?;
    if den.is_zero() {
        return None;
    }
    Some(Rational::new(num, den))
}

/// Serde adapter storing a rational as a `[num, den]` pair.
pub mod serde_pair {
    use super::*;

    pub fn serialize<S: Serializer>(q: &Rational, s: S) -> Result<S::Ok, S::Error> {
        rational_to_json(q).serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Rational, D::Error> {
        let v = serde_json::Value::deserialize(d)?;
        rational_from_json(&v).ok_or_else(|| D::Error::custom("expected [num, den] pair"))
    }
}

/// Serde adapter for a vector of `[num, den]` pairs.
pub mod serde_pairs {
    use super::*;

    pub fn serialize<S: Serializer>(qs: &[Rational], s: S) -> Result<S::Ok, S::Error> {
        let v: Vec<serde_json::Value> = qs.iter().map(rational_to_json).collect();
        v.serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<Rational>, D::Error> {
        let v = Vec::<serde_json::Value>::deserialize(d)?;
        v.iter().map(|p| rational_from_json(p).ok_or_else(|| D::Error::custom("expected [num, den] pair"))).collect()
    }
}
