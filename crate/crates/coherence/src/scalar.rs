//! Scalar abstraction and exact rational helpers.

use std::fmt::{Debug, Display};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{FromPrimitive, Num, Signed, ToPrimitive, Zero};
use thiserror::Error;

/// Ordered field used by the generic parts of the crate.
///
/// `BigRational` gives exact results; `f64`/`f32` are accepted where a
/// floating approximation is meaningful (Frank evaluation, closed forms).
pub trait Scalar: Clone + Debug + Display + PartialOrd + Num + Signed + FromPrimitive + ToPrimitive {
    /// Embeds a small integer.
    fn int(n: i64) -> Self {
        Self::from_i64(n).expect("small integers are representable")
    }

    /// `p/q` for small integers.
    fn frac(p: i64, q: i64) -> Self {
        Self::int(p) / Self::int(q)
    }
}

impl<T> Scalar for T where T: Clone + Debug + Display + PartialOrd + Num + Signed + FromPrimitive + ToPrimitive {}

/// Exact arbitrary-precision rational.
pub type Rational = BigRational;

/// Builds the exact rational `p/q`.
///
/// # Panics
/// Panics when `q == 0`.
pub fn ratio(p: i64, q: i64) -> Rational {
    Rational::new(BigInt::from(p), BigInt::from(q))
}

/// Embeds an integer as a rational.
pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub(crate) fn min_of<T: Scalar>(xs: &[T]) -> T {
    xs.iter()
        .skip(1)
        .fold(xs[0].clone(), |m, x| if *x < m { x.clone() } else { m })
}

pub(crate) fn max_of<T: Scalar>(xs: &[T]) -> T {
    xs.iter()
        .skip(1)
        .fold(xs[0].clone(), |m, x| if *x > m { x.clone() } else { m })
}

pub(crate) fn clamp_zero<T: Scalar>(x: T) -> T {
    if x < T::zero() {
        T::zero()
    } else {
        x
    }
}

/// Failure to read an exact rational literal.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RationalParseError {
    #[error("empty rational literal")]
    Empty,
    #[error("zero denominator in `{0}`")]
    ZeroDenominator(String),
    #[error("malformed rational literal `{0}`")]
    Malformed(String),
}

/// Parses `"p/q"`, an integer, or a decimal (`"0.35"`, `"-1.5e-3"`) exactly.
///
/// Decimals are converted without any binary rounding: `"0.35"` is `7/20`.
pub fn parse_rational(text: &str) -> Result<Rational, RationalParseError> {
    let s = text.trim();
    if s.is_empty() {
        return Err(RationalParseError::Empty);
    }
    let malformed = || RationalParseError::Malformed(s.to_string());
    if let Some((p, q)) = s.split_once('/') {
        let p = BigInt::from_str(p.trim()).map_err(|_| malformed())?;
        let q = BigInt::from_str(q.trim()).map_err(|_| malformed())?;
        if q.is_zero() {
            return Err(RationalParseError::ZeroDenominator(s.to_string()));
        }
        return Ok(Rational::new(p, q));
    }
    parse_decimal(s).ok_or_else(malformed)
}

fn parse_decimal(s: &str) -> Option<Rational> {
    let (mantissa, exponent) = match s.find(['e', 'E']) {
        Some(pos) => (&s[..pos], s[pos + 1..].parse::<i32>().ok()?),
        None => (s, 0),
    };
    let (negative, digits) = match mantissa.as_bytes().first()? {
        b'-' => (true, &mantissa[1..]),
        b'+' => (false, &mantissa[1..]),
        _ => (false, mantissa),
    };
    let (whole, frac) = digits.split_once('.').unwrap_or((digits, ""));
    if whole.is_empty() && frac.is_empty() {
        return None;
    }
    if !whole.bytes().chain(frac.bytes()).all(|b| b.is_ascii_digit()) {
        return None;
    }
    let joined = format!("{whole}{frac}");
    let numer = BigInt::from_str(if joined.is_empty() { "0" } else { &joined }).ok()?;
    let scale = exponent - frac.len() as i32;
    let ten = BigInt::from(10);
    let mut value = Rational::from_integer(numer);
    let factor = Rational::from_integer(num_traits::pow(ten, scale.unsigned_abs() as usize));
    if scale >= 0 {
        value *= factor;
    } else {
        value /= factor;
    }
    Some(if negative { -value } else { value })
}

/// Formats a rational as a decimal string with `digits` fractional digits
/// (rounded half away from zero). Used for human-readable reports only.
pub fn to_decimal_string(x: &Rational, digits: usize) -> String {
    let scale = Rational::from_integer(num_traits::pow(BigInt::from(10), digits));
    let scaled = (x.abs() * scale).round().to_integer();
    let mut s = scaled.to_string();
    if digits > 0 {
        if s.len() <= digits {
            s = format!("{}{}", "0".repeat(digits + 1 - s.len()), s);
        }
        s.insert(s.len() - digits, '.');
    }
    if x.is_negative() && scaled != BigInt::zero() {
        s.insert(0, '-');
    }
    s
}

/// Exact rational equal to a finite `f64`.
pub fn rational_from_f64(x: f64) -> Option<Rational> {
    Rational::from_float(x)
}

pub(crate) fn is_unit_interval<T: Scalar>(x: &T) -> bool {
    *x >= T::zero() && *x <= T::one()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_fractions_and_decimals_exactly() {
        assert_eq!(parse_rational("7/20").unwrap(), ratio(7, 20));
        assert_eq!(parse_rational("0.35").unwrap(), ratio(7, 20));
        assert_eq!(parse_rational("-.5").unwrap(), ratio(-1, 2));
        assert_eq!(parse_rational("3").unwrap(), int(3));
        assert_eq!(parse_rational("1.5e-3").unwrap(), ratio(3, 2000));
        assert_eq!(parse_rational("2E2").unwrap(), int(200));
        assert_eq!(parse_rational(" 4/ 6 ").unwrap(), ratio(2, 3));
    }

    #[test]
    fn rejects_bad_literals() {
        assert!(matches!(
            parse_rational("1/0"),
            Err(RationalParseError::ZeroDenominator(_))
        ));
        assert!(parse_rational("").is_err());
        assert!(parse_rational("abc").is_err());
        assert!(parse_rational("1.2.3").is_err());
        assert!(parse_rational(".").is_err());
        assert!(parse_rational("1/2/3").is_err());
    }

    #[test]
    fn decimal_rendering() {
        assert_eq!(to_decimal_string(&ratio(63, 400), 4), "0.1575");
        assert_eq!(to_decimal_string(&ratio(-1, 3), 3), "-0.333");
        assert_eq!(to_decimal_string(&ratio(2, 3), 0), "1");
        assert_eq!(to_decimal_string(&ratio(1, 200), 2), "0.01");
    }

    #[test]
    fn helpers_work_for_floats_and_rationals() {
        assert_eq!(min_of(&[3.0, 1.0, 2.0]), 1.0);
        assert_eq!(max_of(&[ratio(1, 3), ratio(1, 2)]), ratio(1, 2));
        assert_eq!(<f64 as Scalar>::frac(1, 4), 0.25);
        assert_eq!(clamp_zero(ratio(-1, 2)), int(0));
        assert!(is_unit_interval(&ratio(1, 2)));
    }
}
