//! Scalar abstraction shared by the numeric kernels.
//!
//! The closed-form and product formulas are written once over [`Scalar`] and
//! evaluated either exactly (`BigRational`, `Rational64`) or approximately
//! (`f32`, `f64`). Structural questions (reducibility, condensation,
//! positivity) are only ever answered with the exact type.

use std::fmt::Debug;

use num_bigint::BigInt;
use num_rational::{BigRational, Rational64};
use num_traits::{Num, One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Exact arbitrary-precision rational.
pub type Rational = BigRational;

/// Field-like scalar the coefficient formulas are evaluated in.
pub trait Scalar: Num + Clone + Debug + PartialOrd {
    /// `true` when arithmetic in this type is exact.
    const EXACT: bool;

    fn from_rational(q: &Rational) -> Self;

    fn from_int(n: i64) -> Self {
        Self::from_rational(&int(n))
    }
}

impl Scalar for BigRational {
    const EXACT: bool = true;

    fn from_rational(q: &Rational) -> Self {
        q.clone()
    }
}

impl Scalar for Rational64 {
    const EXACT: bool = true;

    fn from_rational(q: &Rational) -> Self {
        let n = q.numer().to_i64().expect("numerator fits in i64");
        let d = q.denom().to_i64().expect("denominator fits in i64");
        Rational64::new(n, d)
    }
}

impl Scalar for f64 {
    const EXACT: bool = false;

    fn from_rational(q: &Rational) -> Self {
        q.to_f64().unwrap_or(f64::NAN)
    }
}

impl Scalar for f32 {
    const EXACT: bool = false;

    fn from_rational(q: &Rational) -> Self {
        q.to_f32().unwrap_or(f32::NAN)
    }
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn rat(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

/// Divides, refusing a zero denominator (exact types would panic, floats would
/// silently produce infinities).
pub(crate) fn checked_div<F: Scalar>(num: F, den: F, what: &str) -> Result<F> {
    if den.is_zero() {
        return Err(Error::Internal(format!("vanishing denominator in {what}")));
    }
    Ok(num / den)
}

/// `"num/den"` rendering used by every machine-readable output.
pub fn format_ratio(q: &Rational) -> String {
    format!("{}/{}", q.numer(), q.denom())
}

/// Human rendering: integers without a denominator.
pub fn format_short(q: &Rational) -> String {
    if q.denom().is_one() {
        q.numer().to_string()
    } else {
        format_ratio(q)
    }
}

/// Parses `"a"`, `"-a"`, `"a/b"`.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let t = s.trim();
    let bad = || Error::ParseRational(s.to_string());
    let (n, d) = match t.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (t, "1"),
    };
    let n: BigInt = n.parse().map_err(|_| bad())?;
    let d: BigInt = d.parse().map_err(|_| bad())?;
    if d.is_zero() {
        return Err(bad());
    }
    Ok(Rational::new(n, d))
}

pub fn is_nonneg_integer(q: &Rational) -> bool {
    q.is_integer() && !q.is_negative()
}

/// Serde adapter: a rational as a `"num/den"` string.
pub mod serde_ratio {
    use super::{format_ratio, parse_rational, Rational};
    use serde::{de::Error as _, Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(q: &Rational, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&format_ratio(q))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Rational, D::Error> {
        let s = String::deserialize(d)?;
        parse_rational(&s).map_err(D::Error::custom)
    }
}

/// Serde adapter for `Vec<Rational>`.
pub mod serde_ratio_vec {
    use super::{format_ratio, parse_rational, Rational};
    use serde::{de::Error as _, ser::SerializeSeq, Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(v: &[Rational], s: S) -> Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(v.len()))?;
        for q in v {
            seq.serialize_element(&format_ratio(q))?;
        }
        seq.end()
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<Rational>, D::Error> {
        let v = Vec::<String>::deserialize(d)?;
        v.iter()
            .map(|s| parse_rational(s).map_err(D::Error::custom))
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_format() {
        assert_eq!(parse_rational("-3/2").unwrap(), rat(-3, 2));
        assert_eq!(parse_rational(" 6 ").unwrap(), int(6));
        assert_eq!(parse_rational("4/8").unwrap(), rat(1, 2));
        assert_eq!(format_ratio(&int(6)), "6/1");
        assert_eq!(format_short(&int(6)), "6");
        assert_eq!(format_short(&rat(-3, 2)), "-3/2");
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("x").is_err());
        assert!(parse_rational("").is_err());
    }

    #[test]
    fn conversions_agree() {
        let q = rat(-7, 4);
        assert_eq!(f64::from_rational(&q), -1.75);
        assert_eq!(Rational64::from_rational(&q), Rational64::new(-7, 4));
        assert!(<f64 as Scalar>::from_int(3) == 3.0);
    }
}
