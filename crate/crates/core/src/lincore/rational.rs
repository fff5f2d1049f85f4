use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Exact rational number. Always reduced, denominator positive.
pub type Rational = BigRational;

/// `p/q` as a reduced rational. Panics if `q == 0`.
pub fn rat(p: i64, q: i64) -> Rational {
    Rational::new(BigInt::from(p), BigInt::from(q))
}

/// Parses `"p/q"` or `"p"`. Decimal notation is rejected.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let t = s.trim();
    let bad = || Error::ParseRational(s.to_string());
    let (num, den) = match t.split_once('/') {
        Some((a, b)) => (a.trim(), b.trim()),
        None => (t, "1"),
    };
    let is_int = |x: &str| {
        let digits = x.strip_prefix(['-', '+']).unwrap_or(x);
        !digits.is_empty() && digits.bytes().all(|b| b.is_ascii_digit())
    };
    if !is_int(num) || !is_int(den) || den.starts_with('-') {
        return Err(bad());
    }
    let p: BigInt = num.parse().map_err(|_| bad())?;
    let q: BigInt = den.parse().map_err(|_| bad())?;
    if q.is_zero() {
        return Err(bad());
    }
    Ok(Rational::new(p, q))
}

/// Always writes `p/q`, including integers (`3/1`).
pub fn format_rational(r: &Rational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

/// Exact ceiling.
pub fn ceil_int(r: &Rational) -> BigInt {
    r.ceil().to_integer()
}

/// Exact floor.
pub fn floor_int(r: &Rational) -> BigInt {
    r.floor().to_integer()
}

pub(crate) fn in_open_unit(r: &Rational) -> bool {
    r.is_positive() && *r < Rational::one()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_format() {
        assert_eq!(parse_rational("4009/9000").unwrap(), rat(4009, 9000));
        assert_eq!(parse_rational(" -6/4 ").unwrap(), rat(-3, 2));
        assert_eq!(parse_rational("7").unwrap(), rat(7, 1));
        assert_eq!(format_rational(&rat(6, 4)), "3/2");
        assert_eq!(format_rational(&rat(2, 1)), "2/1");
    }

    #[test]
    fn rejects_decimals_and_zero_denominators() {
        for s in ["0.5", "1/0", "", "a/b", "1/-2", "1e3", "/3"] {
            assert!(parse_rational(s).is_err(), "{s} should be rejected");
        }
    }

    #[test]
    fn ceil_floor_exact() {
        assert_eq!(ceil_int(&rat(94748, 94829)), BigInt::from(1));
        assert_eq!(ceil_int(&rat(-7, 5)), BigInt::from(-1));
        assert_eq!(floor_int(&rat(-7, 5)), BigInt::from(-2));
        assert_eq!(ceil_int(&rat(3, 1)), BigInt::from(3));
    }
}
