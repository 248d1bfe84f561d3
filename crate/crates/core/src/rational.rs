//! Helpers for the exact rational type used throughout the crate.

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

/// Exact probability or fraction.
pub type Rational = BigRational;

pub fn ratio(num: u64, den: u64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

pub fn from_biguint(value: &BigUint) -> Rational {
    Rational::from_integer(BigInt::from(value.clone()))
}

pub fn from_u64(value: u64) -> Rational {
    Rational::from_integer(BigInt::from(value))
}

/// Renders as `num/den`, or just `num` when the denominator is 1.
pub fn format(value: &Rational) -> String {
    value.to_string()
}

pub fn parse(text: &str) -> Option<Rational> {
    let text = text.trim();
    let value: Rational = text.parse().ok()?;
    Some(value)
}

/// Lossy conversion for display and floating-point comparisons.
pub fn to_f64(value: &Rational) -> f64 {
    value.to_f64().unwrap_or(f64::NAN)
}

pub fn sum<'a, I: IntoIterator<Item = &'a Rational>>(values: I) -> Rational {
    values.into_iter().fold(Rational::zero(), |acc, v| acc + v)
}

pub fn is_probability(value: &Rational) -> bool {
    value >= &Rational::zero() && value <= &Rational::one()
}

/// Serde adapter storing a rational as its `num/den` string.
pub mod serde_string {
    use super::Rational;
    use serde::{de::Error, Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(value: &Rational, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(&super::format(value))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(deserializer: D) -> Result<Rational, D::Error> {
        let text = String::deserialize(deserializer)?;
        super::parse(&text).ok_or_else(|| D::Error::custom(format!("invalid rational '{text}'")))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn formats_integers_without_denominator() {
        assert_eq!(format(&ratio(0, 1)), "0");
        assert_eq!(format(&ratio(4, 6)), "2/3");
        assert_eq!(format(&ratio(3, 3)), "1");
    }

    #[test]
    fn parses_both_forms() {
        assert_eq!(parse("2/3"), Some(ratio(2, 3)));
        assert_eq!(parse(" 5 "), Some(ratio(5, 1)));
        assert_eq!(parse("1/0"), None);
        assert_eq!(parse("abc"), None);
    }

    #[test]
    fn probability_bounds() {
        assert!(is_probability(&ratio(0, 1)));
        assert!(is_probability(&ratio(1, 1)));
        assert!(!is_probability(&ratio(3, 2)));
    }
}
