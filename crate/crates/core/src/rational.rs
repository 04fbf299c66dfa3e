//! Exact rationals and their text forms.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

/// Arbitrary-precision rational, always in lowest terms with a positive
/// denominator.
pub type Rational = BigRational;

pub fn int(v: impl Into<BigInt>) -> Rational {
    Rational::from_integer(v.into())
}

pub fn ratio(n: impl Into<BigInt>, d: impl Into<BigInt>) -> Rational {
    Rational::new(n.into(), d.into())
}

/// Parses `"p/q"` or a bare integer. Whitespace around the parts is allowed.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let bad = || Error::Parse(format!("invalid rational {s:?}"));
    let (n, d) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s.trim(), "1"),
    };
    let n: BigInt = n.parse().map_err(|_| bad())?;
    let d: BigInt = d.parse().map_err(|_| bad())?;
    if d.is_zero() {
        return Err(Error::ZeroDenominator);
    }
    Ok(Rational::new(n, d))
}

pub fn parse_int(s: &str) -> Result<BigInt> {
    s.trim()
        .parse()
        .map_err(|_| Error::Parse(format!("invalid integer {s:?}")))
}

/// Always `p/q`, including `k/1` for integers.
pub fn to_ratio_string(r: &Rational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

/// `x - floor(x)`, in `[0, 1)`.
pub fn fractional_part(r: &Rational) -> Rational {
    r - r.floor()
}

pub fn is_integral(r: &Rational) -> bool {
    r.denom().is_one()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_forms() {
        assert_eq!(parse_rational("13/1").unwrap(), int(13));
        assert_eq!(parse_rational("-6/4").unwrap(), ratio(-3, 2));
        assert_eq!(parse_rational(" 7 ").unwrap(), int(7));
        assert_eq!(parse_rational("3/-6").unwrap(), ratio(-1, 2));
        assert_eq!(parse_rational("1/0"), Err(Error::ZeroDenominator));
        assert!(parse_rational("x").is_err());
        assert!(parse_rational("1.5").is_err());
    }

    #[test]
    fn formatting() {
        assert_eq!(to_ratio_string(&int(5)), "5/1");
        assert_eq!(to_ratio_string(&ratio(6, -4)), "-3/2");
    }

    #[test]
    fn fractional_parts() {
        assert_eq!(fractional_part(&ratio(22, 7)), ratio(1, 7));
        assert_eq!(fractional_part(&ratio(-1, 3)), ratio(2, 3));
        assert_eq!(fractional_part(&int(-4)), int(0));
    }
}
