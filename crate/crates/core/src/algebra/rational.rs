//! Exact rationals.
//!
//! `Rational` is `num_rational::BigRational`: always reduced, positive
//! denominator, zero stored as `0/1`.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

pub type Rational = num_rational::BigRational;

/// Integer as a rational.
pub fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// `num/den` as a reduced rational. Panics on a zero denominator.
pub fn ratio(num: i64, den: i64) -> Rational {
    assert!(den != 0, "zero denominator");
    Rational::new(BigInt::from(num), BigInt::from(den))
}

/// Parses `"3"`, `"-3"`, `"3/4"`, `"-3/4"` (whitespace tolerated).
pub fn parse_rational(text: &str) -> Option<Rational> {
    let cleaned: String = text.chars().filter(|c| !c.is_whitespace()).collect();
    if cleaned.is_empty() {
        return None;
    }
    let (num, den) = match cleaned.split_once('/') {
        Some((n, d)) => (n, d),
        None => (cleaned.as_str(), "1"),
    };
    let num: BigInt = num.parse().ok()?;
    let den: BigInt = den.parse().ok()?;
    if den.is_zero() {
        return None;
    }
    Some(Rational::new(num, den))
}

pub(crate) fn is_one(r: &Rational) -> bool {
    r.is_one()
}

pub(crate) fn is_minus_one(r: &Rational) -> bool {
    r.is_negative() && r.abs().is_one()
}

pub fn factorial(n: u32) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, k| acc * BigInt::from(k))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_forms() {
        assert_eq!(parse_rational("3"), Some(rat(3)));
        assert_eq!(parse_rational(" -6 / 4 "), Some(ratio(-3, 2)));
        assert_eq!(parse_rational("1/0"), None);
        assert_eq!(parse_rational("x"), None);
    }

    #[test]
    fn lowest_terms_and_zero() {
        let z = ratio(0, -5);
        assert_eq!(z.numer(), &BigInt::from(0));
        assert_eq!(z.denom(), &BigInt::from(1));
        let r = ratio(4, -6);
        assert_eq!(r.to_string(), "-2/3");
    }

    #[test]
    fn factorials() {
        assert_eq!(factorial(5), BigInt::from(120));
    }
}
