//! Exact rational helpers and the `"num/den"` string encoding used by the JSON formats.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serializer};

use crate::error::{Error, Result};

pub type Rational = BigRational;

pub fn rat(num: i64, den: i64) -> Rational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

pub fn int(value: i64) -> Rational {
    BigRational::from_integer(BigInt::from(value))
}

pub fn from_big(value: &BigInt) -> Rational {
    BigRational::from_integer(value.clone())
}

/// Formats as `num/den`, always with an explicit denominator.
pub fn to_fraction_string(value: &Rational) -> String {
    format!("{}/{}", value.numer(), value.denom())
}

/// Compact display form: integers without the `/1`.
pub fn display(value: &Rational) -> String {
    if value.denom().is_one() {
        value.numer().to_string()
    } else {
        to_fraction_string(value)
    }
}

/// Parses `p/q` or a bare integer `p`. Decimal points are rejected.
pub fn parse_fraction(text: &str) -> Result<Rational> {
    let text = text.trim();
    let (num, den) = match text.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (text, "1"),
    };
    let parse = |s: &str| {
        s.parse::<BigInt>()
            .map_err(|_| Error::Parse(format!("`{text}` is not a rational of the form p/q")))
    };
    let num = parse(num)?;
    let den = parse(den)?;
    if den.is_zero() {
        return Err(Error::Parse(format!("`{text}` has zero denominator")));
    }
    Ok(BigRational::new(num, den))
}

/// Ceiling of a rational as a big integer.
pub fn ceil(value: &Rational) -> BigInt {
    value.ceil().to_integer()
}

pub fn is_nonnegative(value: &Rational) -> bool {
    !value.is_negative()
}

pub(crate) fn serialize<S: Serializer>(value: &Rational, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&to_fraction_string(value))
}

pub(crate) fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Rational, D::Error> {
    let text = String::deserialize(d)?;
    parse_fraction(&text).map_err(serde::de::Error::custom)
}

pub(crate) mod vec {
    use super::*;
    use serde::ser::SerializeSeq;

    pub fn serialize<S: Serializer>(values: &[Rational], s: S) -> Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(values.len()))?;
        for v in values {
            seq.serialize_element(&to_fraction_string(v))?;
        }
        seq.end()
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<Rational>, D::Error> {
        let texts = Vec::<String>::deserialize(d)?;
        texts
            .iter()
            .map(|t| parse_fraction(t).map_err(serde::de::Error::custom))
            .collect()
    }
}

pub(crate) mod option {
    use super::*;

    pub fn serialize<S: Serializer>(value: &Option<Rational>, s: S) -> Result<S::Ok, S::Error> {
        match value {
            Some(v) => s.serialize_str(&to_fraction_string(v)),
            None => s.serialize_none(),
        }
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Option<Rational>, D::Error> {
        let text = Option::<String>::deserialize(d)?;
        text.map(|t| parse_fraction(&t).map_err(serde::de::Error::custom))
            .transpose()
    }
}

/// Big integers as raw JSON numbers of arbitrary size.
pub(crate) fn bigint_json(value: &BigInt) -> serde_json::Value {
    serde_json::Value::Number(
        value
            .to_string()
            .parse()
            .expect("decimal integer is a valid JSON number"),
    )
}
