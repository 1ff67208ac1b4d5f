//! Exact rational numbers and their text format.
//!
//! Rationals are written `num/den` or `num` with an optional leading minus.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

/// Exact rational scalar used throughout the crate.
pub type Q = BigRational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseRationalError {
    #[error("empty rational literal")]
    Empty,
    #[error("invalid rational literal `{0}`")]
    Invalid(String),
    #[error("zero denominator in `{0}`")]
    ZeroDenominator(String),
}

/// Builds `num/den`. Panics on a zero denominator.
pub fn rat(num: i64, den: i64) -> Q {
    Q::new(BigInt::from(num), BigInt::from(den))
}

pub fn int(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

pub fn parse_rational(text: &str) -> Result<Q, ParseRationalError> {
    let s = text.trim();
    if s.is_empty() {
        return Err(ParseRationalError::Empty);
    }
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let valid = |p: &str, allow_sign: bool| {
        let digits = if allow_sign { p.strip_prefix('-').unwrap_or(p) } else { p };
        !digits.is_empty() && digits.bytes().all(|b| b.is_ascii_digit())
    };
    if !valid(num, true) || !valid(den, false) {
        return Err(ParseRationalError::Invalid(s.to_string()));
    }
    let n: BigInt = num.parse().map_err(|_| ParseRationalError::Invalid(s.to_string()))?;
    let d: BigInt = den.parse().map_err(|_| ParseRationalError::Invalid(s.to_string()))?;
    if d.is_zero() {
        return Err(ParseRationalError::ZeroDenominator(s.to_string()));
    }
    Ok(Q::new(n, d))
}

/// Canonical text form: `n` for integers, `n/d` otherwise.
pub fn format_rational(q: &Q) -> String {
    if q.denom().is_one() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

/// Wrapper giving a `Display` impl in the canonical text form.
pub struct DisplayQ<'a>(pub &'a Q);

impl fmt::Display for DisplayQ<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&format_rational(self.0))
    }
}

pub fn to_f64(q: &Q) -> f64 {
    q.to_f64().unwrap_or_else(|| {
        // extreme magnitudes: fall back to a ratio of truncated floats
        let n = q.numer().to_f64().unwrap_or(f64::NAN);
        let d = q.denom().to_f64().unwrap_or(f64::NAN);
        n / d
    })
}

pub fn lcm_u64(a: u64, b: u64) -> u64 {
    a.lcm(&b)
}

/// Denominator of a rational as a machine integer.
pub fn denom_u64(q: &Q) -> u64 {
    q.denom().to_u64().expect("denominator does not fit in u64")
}

/// Whether `q` is `1/n` for some integer `n >= 1`.
pub fn is_unit_fraction(q: &Q) -> bool {
    q.is_positive() && q.numer().is_one()
}

pub fn serialize_q<S: serde::Serializer>(q: &Q, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&format_rational(q))
}

pub fn deserialize_q<'de, D: serde::Deserializer<'de>>(d: D) -> Result<Q, D::Error> {
    let text = <String as serde::Deserialize>::deserialize(d)?;
    parse_rational(&text).map_err(serde::de::Error::custom)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_and_formats() {
        assert_eq!(parse_rational("3/8").unwrap(), rat(3, 8));
        assert_eq!(parse_rational("-6/4").unwrap(), rat(-3, 2));
        assert_eq!(parse_rational(" 7 ").unwrap(), int(7));
        assert_eq!(format_rational(&rat(-3, 2)), "-3/2");
        assert_eq!(format_rational(&int(5)), "5");
    }

    #[test]
    fn rejects_garbage() {
        assert!(matches!(parse_rational("1/0"), Err(ParseRationalError::ZeroDenominator(_))));
        assert!(matches!(parse_rational("a/2"), Err(ParseRationalError::Invalid(_))));
        assert!(matches!(parse_rational("1/-2"), Err(ParseRationalError::Invalid(_))));
        assert_eq!(parse_rational(""), Err(ParseRationalError::Empty));
    }

    #[test]
    fn unit_fractions() {
        assert!(is_unit_fraction(&rat(1, 5)));
        assert!(is_unit_fraction(&int(1)));
        assert!(!is_unit_fraction(&rat(2, 5)));
        assert!(!is_unit_fraction(&rat(-1, 5)));
    }
}
