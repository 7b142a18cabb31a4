//! Exact rationals.
//!
//! [`Rational`] is `num_rational::BigRational`, which keeps every value reduced with a
//! positive denominator, so `0` is always stored as `0/1`.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

pub type Rational = num_rational::BigRational;

pub fn int(value: i64) -> Rational {
    Rational::from_integer(BigInt::from(value))
}

pub fn ratio(numer: i64, denom: i64) -> Rational {
    Rational::new(BigInt::from(numer), BigInt::from(denom))
}

/// `n!` as a rational.
pub fn factorial(n: usize) -> Rational {
    let mut acc = BigInt::one();
    for i in 2..=n {
        acc *= i;
    }
    Rational::from_integer(acc)
}

/// Parses `p`, `-p` or `p/q` (q > 0). Surrounding whitespace is ignored.
pub fn parse_rational(text: &str) -> Result<Rational> {
    let trimmed = text.trim();
    let lead = text.len() - text.trim_start().len();
    let err = |offset: usize, message: &str| Error::Parse {
        offset: lead + offset,
        message: message.to_string(),
    };
    let (numer, denom) = match trimmed.split_once('/') {
        Some((p, q)) => (p.trim(), Some((p.len() + 1, q.trim()))),
        None => (trimmed, None),
    };
    let numer: BigInt = numer
        .parse()
        .map_err(|_| err(0, "expected an integer numerator"))?;
    let denom = match denom {
        Some((offset, q)) => {
            let q: BigInt = q
                .parse()
                .map_err(|_| err(offset, "expected a positive integer denominator"))?;
            if q <= BigInt::zero() {
                return Err(err(offset, "denominator must be positive"));
            }
            q
        }
        None => BigInt::one(),
    };
    Ok(Rational::new(numer, denom))
}

/// Renders `p/q`, or `p` when the denominator is one.
pub fn format_rational(value: &Rational) -> String {
    value.to_string()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canonical_form() {
        assert_eq!(ratio(4, -6), ratio(-2, 3));
        assert_eq!(format_rational(&ratio(4, -6)), "-2/3");
        assert_eq!(format_rational(&ratio(0, 5)), "0");
        assert_eq!(*ratio(0, 5).denom(), BigInt::one());
    }

    #[test]
    fn parse_forms() {
        assert_eq!(parse_rational("7").unwrap(), int(7));
        assert_eq!(parse_rational(" -3/6 ").unwrap(), ratio(-1, 2));
        assert_eq!(parse_rational("1/2").unwrap(), ratio(1, 2));
        assert!(matches!(
            parse_rational("1/0"),
            Err(Error::Parse { offset: 2, .. })
        ));
        assert!(parse_rational("abc").is_err());
        assert!(parse_rational("1/-2").is_err());
    }

    #[test]
    fn factorials() {
        assert_eq!(factorial(0), int(1));
        assert_eq!(factorial(5), int(120));
        assert_eq!(factorial(20), int(2_432_902_008_176_640_000));
    }
}
