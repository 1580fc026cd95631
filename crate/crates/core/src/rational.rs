//! Exact rational helpers.
//!
//! All distances are stored as [`Rational`] values. The textual form is
//! `p/q` (or plain `p` for integers), which is what the file formats and
//! reports use.

use num::bigint::BigInt;
use num::{One, Signed, Zero};
use std::str::FromStr;

use crate::error::Error;

pub type Rational = num::BigRational;

/// Shorthand for `n / d` with small integer parts.
pub fn ratio(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Parses `p/q`, `p`, or a finite decimal such as `0.25`.
pub fn parse_rational(text: &str) -> Result<Rational, Error> {
    let s = text.trim();
    if s.is_empty() {
        return Err(Error::Malformed("empty rational literal".into()));
    }
    if let Some((int_part, frac_part)) = s.split_once('.') {
        let digits = format!("{int_part}{frac_part}");
        let num = BigInt::from_str(&digits)
            .map_err(|_| Error::Malformed(format!("cannot parse `{s}` as a rational")))?;
        let den = num::pow(BigInt::from(10), frac_part.len());
        return Ok(Rational::new(num, den));
    }
    Rational::from_str(s).map_err(|_| Error::Malformed(format!("cannot parse `{s}` as a rational")))
}

/// Renders as `p/q`, or `p` when the denominator is one.
pub fn format_rational(r: &Rational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

pub fn abs_diff(a: &Rational, b: &Rational) -> Rational {
    (a - b).abs()
}

pub fn min_of<'a>(values: impl IntoIterator<Item = &'a Rational>) -> Option<Rational> {
    values.into_iter().min().cloned()
}

pub fn max_or_zero<'a>(values: impl IntoIterator<Item = &'a Rational>) -> Rational {
    values.into_iter().max().cloned().unwrap_or_else(Rational::zero)
}

/// Serde adapter writing rationals as `p/q` strings.
pub mod as_string {
    use super::*;
    use serde::{de, Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(r: &Rational, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&format_rational(r))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Rational, D::Error> {
        let text = String::deserialize(d)?;
        parse_rational(&text).map_err(de::Error::custom)
    }
}

pub mod option_as_string {
    use super::*;
    use serde::Serializer;

    pub fn serialize<S: Serializer>(r: &Option<Rational>, s: S) -> Result<S::Ok, S::Error> {
        match r {
            Some(r) => s.serialize_str(&format_rational(r)),
            None => s.serialize_none(),
        }
    }
}

pub mod vec_as_string {
    use super::*;
    use serde::ser::SerializeSeq;
    use serde::Serializer;

    pub fn serialize<S: Serializer>(rs: &[Rational], s: S) -> Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(rs.len()))?;
        for r in rs {
            seq.serialize_element(&format_rational(r))?;
        }
        seq.end()
    }
}
