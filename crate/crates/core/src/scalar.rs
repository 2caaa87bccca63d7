//! Exact rational scalars.
//!
//! The base ring is the field of rationals. Every coefficient in the crate
//! is a [`Scalar`]; there is no floating point anywhere.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

pub type Scalar = BigRational;

pub fn int(n: i64) -> Scalar {
    Scalar::from_integer(BigInt::from(n))
}

pub fn frac(n: i64, d: i64) -> Scalar {
    Scalar::new(BigInt::from(n), BigInt::from(d))
}

pub fn zero() -> Scalar {
    Scalar::zero()
}

pub fn one() -> Scalar {
    Scalar::one()
}

/// Parses `-?[0-9]+(/[1-9][0-9]*)?` into a reduced rational.
pub fn parse_rational(text: &str) -> Option<Scalar> {
    let (neg, body) = match text.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, text),
    };
    let (num, den) = match body.split_once('/') {
        Some((n, d)) => (n, Some(d)),
        None => (body, None),
    };
    if num.is_empty() || !num.bytes().all(|b| b.is_ascii_digit()) {
        return None;
    }
    let mut value = Scalar::from_integer(num.parse::<BigInt>().ok()?);
    if let Some(d) = den {
        if d.is_empty() || d.starts_with('0') || !d.bytes().all(|b| b.is_ascii_digit()) {
            return None;
        }
        value /= Scalar::from_integer(d.parse::<BigInt>().ok()?);
    }
    Some(if neg { -value } else { value })
}

/// Canonical text form: `n` for integers, `n/d` otherwise.
pub fn format_rational(x: &Scalar) -> String {
    if x.is_integer() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

/// Bit length of numerator plus denominator; the pivot heuristic in
/// elimination prefers small entries.
pub fn bit_size(x: &Scalar) -> u64 {
    x.numer().abs().bits() + x.denom().bits()
}

pub fn parse_vector(items: &[String]) -> Option<Vec<Scalar>> {
    items.iter().map(|s| parse_rational(s)).collect()
}

pub fn format_vector(v: &[Scalar]) -> Vec<String> {
    v.iter().map(format_rational).collect()
}

pub fn is_zero_vector(v: &[Scalar]) -> bool {
    v.iter().all(Zero::is_zero)
}

pub fn is_negative(x: &Scalar) -> bool {
    x.is_negative()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_canonical_forms() {
        assert_eq!(parse_rational("3/2"), Some(frac(3, 2)));
        assert_eq!(parse_rational("-4/6"), Some(frac(-2, 3)));
        assert_eq!(parse_rational("0"), Some(zero()));
        assert_eq!(parse_rational("-0"), Some(zero()));
        assert_eq!(parse_rational("17"), Some(int(17)));
    }

    #[test]
    fn rejects_outside_grammar() {
        for bad in ["", "-", "1/0", "1/02", "+1", "1.5", "a", "1/", "/2", "1/-2", " 1"] {
            assert_eq!(parse_rational(bad), None, "{bad:?}");
        }
    }

    #[test]
    fn formats_reduced() {
        assert_eq!(format_rational(&frac(6, 4)), "3/2");
        assert_eq!(format_rational(&frac(-6, 3)), "-2");
        assert_eq!(format_rational(&zero()), "0");
    }
}
