//! Arbitrary-precision rational numbers.
//!
//! [`Rational`] is `num_rational::BigRational`, which already maintains the
//! invariants we need: always reduced to lowest terms, denominator strictly
//! positive, zero stored as `0/1`.  This module adds the handful of
//! constructors and the strict parser used across the crate.

use super::ArithError;
use num_bigint::BigInt;

/// Exact rational number, always in lowest terms with positive denominator.
pub type Rational = num_rational::BigRational;

/// `n/d` as an exact rational.  Panics if `d == 0`.
pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// The integer `n` as an exact rational.
pub fn rat_int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Parses `"a"` or `"a/b"` with an optional leading sign.
///
/// This is stricter than `BigRational::from_str`: whitespace is rejected and
/// a zero denominator is an error rather than a panic.
pub fn parse_rational(text: &str) -> Result<Rational, ArithError> {
    let bad = || ArithError::ParseNumber(text.to_string());
    let (num_text, den_text) = match text.split_once('/') {
        Some((n, d)) => (n, Some(d)),
        None => (text, None),
    };
    let numer: BigInt = num_text.parse().map_err(|_| bad())?;
    let denom: BigInt = match den_text {
        Some(d) => d.parse().map_err(|_| bad())?,
        None => BigInt::from(1),
    };
    if denom == BigInt::from(0) {
        return Err(bad());
    }
    Ok(Rational::new(numer, denom))
}
