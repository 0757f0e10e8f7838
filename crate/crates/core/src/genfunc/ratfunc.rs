//! Rational functions with integer coefficients in canonical form.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_integer::Integer;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::poly::Poly;
use crate::error::{Error, Result};
use crate::rational::{bigint_json, Rational};

/// `num / den` with `gcd(num, den) = 1`, no common integer content, and the lowest-degree
/// nonzero coefficient of `den` positive. Zero is `0 / 1`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RationalFunction {
    num: Poly,
    den: Poly,
}

impl RationalFunction {
    pub fn new(num: Poly, den: Poly) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DimensionMismatch(
                "rational function with zero denominator".into(),
            ));
        }
        Ok(Self::canonical(num, den))
    }

    fn canonical(num: Poly, den: Poly) -> Self {
        if num.is_zero() {
            return Self {
                num: Poly::zero(),
                den: Poly::one(),
            };
        }
        let g = num.gcd(&den);
        let mut num = num.div_exact(&g).expect("gcd divides numerator");
        let mut den = den.div_exact(&g).expect("gcd divides denominator");
        let mut content = num.content().gcd(&den.content());
        if den.trailing().is_some_and(Signed::is_negative) {
            content = -content;
        }
        num = num.div_scalar(&content);
        den = den.div_scalar(&content);
        Self { num, den }
    }

    pub fn from_poly(p: Poly) -> Self {
        Self::canonical(p, Poly::one())
    }

    pub fn numerator(&self) -> &Poly {
        &self.num
    }

    pub fn denominator(&self) -> &Poly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    /// `1 / self`; `None` for zero.
    pub fn recip(&self) -> Option<Self> {
        (!self.is_zero()).then(|| Self::canonical(self.den.clone(), self.num.clone()))
    }

    /// Coefficient of `z^n` in the expansion at `z = 0`, by power-series long division.
    pub fn series_coeff(&self, n: usize) -> Result<Rational> {
        Ok(self.series(n + 1)?.pop().expect("n + 1 terms"))
    }

    /// First `count` Maclaurin coefficients.
    pub fn series(&self, count: usize) -> Result<Vec<Rational>> {
        let d0 = self.den.coeff(0);
        if d0.is_zero() {
            return Err(Error::SeriesPole);
        }
        let d0 = BigRational::from_integer(d0);
        let mut out: Vec<Rational> = Vec::with_capacity(count);
        for k in 0..count {
            let mut acc = BigRational::from_integer(self.num.coeff(k));
            let top = self.den.degree().unwrap_or(0).min(k);
            for i in 1..=top {
                acc -= BigRational::from_integer(self.den.coeff(i)) * &out[k - i];
            }
            out.push(acc / &d0);
        }
        Ok(out)
    }

    /// Integer series coefficients, when `den(0) = ±1` guarantees integrality.
    pub fn integer_series(&self, count: usize) -> Result<Vec<BigInt>> {
        Ok(self
            .series(count)?
            .into_iter()
            .map(|c| {
                debug_assert!(c.is_integer());
                c.to_integer()
            })
            .collect())
    }

    pub fn to_json_value(&self) -> serde_json::Value {
        serde_json::to_value(self).expect("rational function serializes")
    }

    pub fn from_json_value(value: &serde_json::Value) -> Result<Self> {
        let field = |name: &str| -> Result<Poly> {
            let arr = value
                .get(name)
                .and_then(|v| v.as_array())
                .ok_or_else(|| Error::Parse(format!("missing array `{name}`")))?;
            let coeffs = arr
                .iter()
                .map(|c| {
                    c.to_string()
                        .parse::<BigInt>()
                        .map_err(|_| Error::Parse(format!("`{c}` is not an integer")))
                })
                .collect::<Result<Vec<_>>>()?;
            Ok(Poly::new(coeffs))
        };
        Self::new(field("num")?, field("den")?)
    }
}

/// Equality as rational functions: `a.num · b.den = b.num · a.den`.
pub fn rf_equal(a: &RationalFunction, b: &RationalFunction) -> bool {
    &a.num * &b.den == &b.num * &a.den
}

impl Add for &RationalFunction {
    type Output = RationalFunction;

    fn add(self, rhs: &RationalFunction) -> RationalFunction {
        RationalFunction::canonical(
            &(&self.num * &rhs.den) + &(&rhs.num * &self.den),
            &self.den * &rhs.den,
        )
    }
}

impl Sub for &RationalFunction {
    type Output = RationalFunction;

    fn sub(self, rhs: &RationalFunction) -> RationalFunction {
        self + &(-rhs)
    }
}

impl Mul for &RationalFunction {
    type Output = RationalFunction;

    fn mul(self, rhs: &RationalFunction) -> RationalFunction {
        RationalFunction::canonical(&self.num * &rhs.num, &self.den * &rhs.den)
    }
}

impl Div for &RationalFunction {
    type Output = RationalFunction;

    /// Panics when dividing by zero.
    fn div(self, rhs: &RationalFunction) -> RationalFunction {
        self * &rhs.recip().expect("division by the zero rational function")
    }
}

impl Neg for &RationalFunction {
    type Output = RationalFunction;

    fn neg(self) -> RationalFunction {
        RationalFunction {
            num: -&self.num,
            den: self.den.clone(),
        }
    }
}

impl fmt::Display for RationalFunction {
    /// `(num)/(den)`, e.g. `(z)/(1 - z^2)`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})/({})", self.num, self.den)
    }
}

impl fmt::Debug for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RationalFunction({self})")
    }
}

impl Serialize for RationalFunction {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Raw {
            num: Vec<serde_json::Value>,
            den: Vec<serde_json::Value>,
        }
        Raw {
            num: self.num.coeffs().iter().map(bigint_json).collect(),
            den: self.den.coeffs().iter().map(bigint_json).collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for RationalFunction {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let value = serde_json::Value::deserialize(d)?;
        Self::from_json_value(&value).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::int;
    use proptest::prelude::*;

    fn rf(num: &[i64], den: &[i64]) -> RationalFunction {
        RationalFunction::new(Poly::from_i64s(num), Poly::from_i64s(den)).unwrap()
    }

    #[test]
    fn canonical_form() {
        let a = rf(&[0, -1], &[-1, 0, 1]);
        assert_eq!(a.to_string(), "(z)/(1 - z^2)");
        let b = rf(&[2, 2], &[4, 0, -4]);
        assert_eq!(b.to_string(), "(1)/(2 - 2z)");
        assert_eq!(rf(&[0], &[5, 1]).to_string(), "(0)/(1)");
    }

    #[test]
    fn equality() {
        assert!(rf_equal(&rf(&[0, 1], &[1, 0, -1]), &rf(&[0, -1], &[-1, 0, 1])));
        assert!(!rf_equal(&rf(&[1], &[1, -1]), &rf(&[1], &[1, 1])));
    }

    #[test]
    fn series() {
        let geo = rf(&[1], &[1, -1]);
        assert_eq!(geo.series_coeff(7).unwrap(), int(1));
        let odd = rf(&[0, 1], &[1, 0, -1]);
        assert_eq!(odd.series_coeff(6).unwrap(), int(0));
        assert_eq!(odd.series_coeff(7).unwrap(), int(1));
        let fib = rf(&[1, 1], &[1, -1, -1]);
        assert_eq!(
            fib.integer_series(6).unwrap(),
            [1, 2, 3, 5, 8, 13].map(BigInt::from)
        );
        assert_eq!(rf(&[1], &[0, 1]).series_coeff(0), Err(Error::SeriesPole));
    }

    #[test]
    fn json_round_trip() {
        let a = rf(&[1, 1], &[1, -1, -1]);
        let text = serde_json::to_string(&a).unwrap();
        assert_eq!(text, r#"{"num":[1,1],"den":[1,-1,-1]}"#);
        let back: RationalFunction = serde_json::from_str(&text).unwrap();
        assert_eq!(back, a);
        assert!(serde_json::from_str::<RationalFunction>(r#"{"num":[1],"den":[]}"#).is_err());
    }

    fn small_rf() -> impl Strategy<Value = RationalFunction> {
        (
            proptest::collection::vec(-4i64..=4, 0..4),
            proptest::collection::vec(-4i64..=4, 1..4),
        )
            .prop_filter_map("nonzero denominator", |(n, d)| {
                RationalFunction::new(Poly::from_i64s(&n), Poly::from_i64s(&d)).ok()
            })
    }

    fn is_canonical(x: &RationalFunction) -> bool {
        let g = x.num.gcd(&x.den);
        g.degree() == Some(0)
            && g.coeff(0) == BigInt::from(1)
            && x.den.trailing().is_some_and(|c| c.is_positive())
    }

    proptest! {
        #[test]
        fn arithmetic_stays_canonical(a in small_rf(), b in small_rf()) {
            for x in [&a + &b, &a - &b, &a * &b] {
                prop_assert!(is_canonical(&x), "{x}");
            }
            prop_assert!(rf_equal(&(&(&a + &b) - &b), &a));
            if !b.is_zero() {
                let q = &a / &b;
                prop_assert!(is_canonical(&q));
                prop_assert!(rf_equal(&(&q * &b), &a));
            }
        }
    }
}
