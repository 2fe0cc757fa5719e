//! JSON helpers for exact rationals.
//!
//! Rationals are written as `{"num": n, "den": d}`. Components that fit in an
//! `i64` are emitted as JSON numbers, larger ones as decimal strings; both
//! forms are accepted on input.

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use serde_json::{json, Value};

use crate::Rational;

pub fn bigint_to_value(n: &BigInt) -> Value {
    match n.to_i64() {
        Some(v) => json!(v),
        None => Value::String(n.to_string()),
    }
}

pub fn bigint_from_value(v: &Value) -> Option<BigInt> {
    match v {
        Value::Number(n) => n.as_i64().map(BigInt::from),
        Value::String(s) => s.parse().ok(),
        _ => None,
    }
}

pub fn rational_to_value(r: &Rational) -> Value {
    json!({ "num": bigint_to_value(r.numer()), "den": bigint_to_value(r.denom()) })
}

pub fn rational_from_value(v: &Value) -> Option<Rational> {
    let num = bigint_from_value(v.get("num")?)?;
    let den = bigint_from_value(v.get("den")?)?;
    if den.is_zero() {
        return None;
    }
    Some(Rational::new(num, den))
}

/// `#[serde(with = "crate::json::rational")]`
pub mod rational {
    use super::*;

    pub fn serialize<S: Serializer>(r: &Rational, s: S) -> Result<S::Ok, S::Error> {
        rational_to_value(r).serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Rational, D::Error> {
        let v = Value::deserialize(d)?;
        rational_from_value(&v).ok_or_else(|| D::Error::custom("expected {num, den} rational"))
    }
}

/// `#[serde(with = "crate::json::rational_vec")]`
pub mod rational_vec {
    use super::*;

    pub fn serialize<S: Serializer>(rs: &[Rational], s: S) -> Result<S::Ok, S::Error> {
        Value::Array(rs.iter().map(rational_to_value).collect()).serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<Rational>, D::Error> {
        let v = Vec::<Value>::deserialize(d)?;
        v.iter()
            .map(|x| rational_from_value(x).ok_or_else(|| D::Error::custom("expected {num, den} rational")))
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat;

    #[test]
    fn small_and_big_components() {
        let r = rat(-3, 4);
        assert_eq!(rational_to_value(&r), json!({"num": -3, "den": 4}));
        let big = Rational::from_integer(BigInt::from(10).pow(30));
        let v = rational_to_value(&big);
        assert!(v["num"].is_string());
        assert_eq!(rational_from_value(&v), Some(big));
    }

    #[test]
    fn rejects_zero_denominator() {
        assert_eq!(rational_from_value(&json!({"num": 1, "den": 0})), None);
    }
}
