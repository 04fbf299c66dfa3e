//! Stringy Euler numbers and stringy E-functions on the diagonal `w = uv`.
//!
//! For a resolution with exceptional divisors `D_j` of discrepancy `a_j`,
//!
//! ```text
//! E_st(w) = sum_J E(D_J^0; w) * prod_{j in J} (w - 1) / (w^(a_j + 1) - 1)
//! e_st    = sum_J e(D_J^0)    * prod_{j in J} 1 / (a_j + 1)
//! ```
//!
//! and `e_st` is the limit of `E_st` at `w = 1`.

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::poly::{Poly, RationalFn};
use crate::rational::{to_ratio_string, Rational};
use crate::stratification::Stratification;

pub use crate::poly::limit_at_one;

/// Exact stringy Euler number. Absent strata count as Euler number 0.
pub fn stringy_euler(s: &Stratification) -> Result<Rational> {
    s.validate()?;
    let weights: Vec<Rational> = s
        .divisors()
        .iter()
        .map(|d| (&d.discrepancy + Rational::one()).recip())
        .collect();
    let mut total = Rational::zero();
    for (subset, stratum) in s.strata() {
        if stratum.euler.is_zero() {
            continue;
        }
        let w: Rational = subset.iter().map(|&j| &weights[j]).product();
        total += w * Rational::from_integer(stratum.euler.clone());
    }
    Ok(total)
}

/// `(w - 1) / (w^(a+1) - 1)` in reduced form, i.e. `1 / (1 + w + ... + w^a)`.
pub fn divisor_factor(a: usize) -> RationalFn {
    let den = &Poly::monomial(1, a + 1) - &Poly::one();
    RationalFn::new(Poly::w_minus_one(), den).expect("w^(a+1) - 1 is nonzero")
}

/// Stringy E-function restricted to `u = v`, as a reduced rational function
/// of `w = uv`. Needs non-negative integer discrepancies and an E-polynomial
/// on every present stratum.
pub fn stringy_e_diagonal(s: &Stratification) -> Result<RationalFn> {
    s.validate()?;
    let mut factors = Vec::with_capacity(s.divisors().len());
    for d in s.divisors() {
        let a = (d.discrepancy.is_integer() && !d.discrepancy.is_negative())
            .then(|| d.discrepancy.to_integer().to_usize())
            .flatten()
            .ok_or_else(|| Error::SymbolicPathUnavailable {
                name: d.name.clone(),
                discrepancy: to_ratio_string(&d.discrepancy),
            })?;
        factors.push(divisor_factor(a));
    }
    let mut total = RationalFn::zero();
    for (subset, stratum) in s.strata() {
        let e = stratum
            .epoly
            .as_ref()
            .ok_or_else(|| Error::MissingEpoly(s.subset_names(subset)))?;
        let term = subset
            .iter()
            .fold(RationalFn::from_poly(e.clone()), |acc, &j| {
                &acc * &factors[j]
            });
        total = &total + &term;
    }
    Ok(total)
}

/// True when the stringy Euler number is an integer, as it must be if a
/// crepant resolution exists.
pub fn is_integral(e_st: &Rational) -> bool {
    e_st.denom().is_one()
}

/// Sum of the stratum Euler numbers, i.e. the Euler number of the resolution.
pub fn resolution_euler(s: &Stratification) -> BigInt {
    s.strata().map(|(_, st)| &st.euler).sum()
}

/// Splits a rational into `(floor, fractional part)`.
pub fn integer_and_fraction(x: &Rational) -> (BigInt, Rational) {
    let fl = x.floor();
    let frac = x - &fl;
    debug_assert!(!frac.is_negative());
    (fl.to_integer(), frac)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, ratio};
    use crate::stratification::{Divisor, Stratum};

    fn p(c: &[i64]) -> Poly {
        Poly::new(c.iter().copied())
    }

    fn one_divisor(a: Rational, strata: Vec<(Vec<usize>, Stratum)>) -> Stratification {
        Stratification::new(vec![Divisor::new("D1", a)], strata)
    }

    #[test]
    fn smooth_case() {
        let s = Stratification::smooth(Stratum::euler(7));
        assert_eq!(stringy_euler(&s).unwrap(), int(7));
        let s = Stratification::smooth(Stratum::with_epoly(p(&[0, 0, 1])));
        assert_eq!(
            stringy_e_diagonal(&s).unwrap(),
            RationalFn::from_poly(p(&[0, 0, 1]))
        );
    }

    #[test]
    fn crepant_single_divisor() {
        let s = one_divisor(
            int(0),
            vec![(vec![], Stratum::euler(3)), (vec![0], Stratum::euler(4))],
        );
        assert_eq!(stringy_euler(&s).unwrap(), int(7));
        let s = one_divisor(
            int(0),
            vec![
                (vec![], Stratum::with_epoly(p(&[2, 0, 1]))),
                (vec![0], Stratum::with_epoly(p(&[1, 3]))),
            ],
        );
        assert_eq!(
            stringy_e_diagonal(&s).unwrap(),
            RationalFn::from_poly(p(&[3, 3, 1]))
        );
    }

    #[test]
    fn discrepancy_one() {
        let s = one_divisor(
            int(1),
            vec![(vec![], Stratum::euler(1)), (vec![0], Stratum::euler(1))],
        );
        assert_eq!(stringy_euler(&s).unwrap(), ratio(3, 2));

        let s = one_divisor(
            int(1),
            vec![
                (vec![], Stratum::with_epoly(p(&[0, 1]))),
                (vec![0], Stratum::with_epoly(p(&[1]))),
            ],
        );
        let f = stringy_e_diagonal(&s).unwrap();
        assert_eq!((f.num(), f.den()), (&p(&[1, 1, 1]), &p(&[1, 1])));
        assert_eq!(f.limit_at_one().unwrap(), ratio(3, 2));
    }

    #[test]
    fn rational_discrepancy_numeric_only() {
        let s = one_divisor(
            ratio(-1, 2),
            vec![
                (vec![], Stratum::with_epoly(p(&[1]))),
                (vec![0], Stratum::with_epoly(p(&[1]))),
            ],
        );
        assert_eq!(stringy_euler(&s).unwrap(), int(3));
        assert!(matches!(
            stringy_e_diagonal(&s),
            Err(Error::SymbolicPathUnavailable { .. })
        ));
    }

    #[test]
    fn missing_epoly() {
        let s = one_divisor(
            int(2),
            vec![
                (vec![], Stratum::with_epoly(p(&[1]))),
                (vec![0], Stratum::euler(1)),
            ],
        );
        assert_eq!(
            stringy_e_diagonal(&s),
            Err(Error::MissingEpoly(vec!["D1".into()]))
        );
    }

    #[test]
    fn errors_propagate_from_validation() {
        let s = one_divisor(int(-1), vec![(vec![], Stratum::euler(1))]);
        assert!(matches!(
            stringy_euler(&s),
            Err(Error::NotLogTerminal { .. })
        ));
        assert!(matches!(
            stringy_e_diagonal(&s),
            Err(Error::NotLogTerminal { .. })
        ));
    }

    #[test]
    fn factor_shape() {
        assert_eq!(divisor_factor(0), RationalFn::from_poly(Poly::one()));
        let f = divisor_factor(2);
        assert_eq!((f.num(), f.den()), (&p(&[1]), &p(&[1, 1, 1])));
    }

    #[test]
    fn splitting() {
        assert_eq!(
            integer_and_fraction(&ratio(-22, 7)),
            (BigInt::from(-4), ratio(6, 7))
        );
        assert!(is_integral(&int(3)));
        let s = one_divisor(
            int(0),
            vec![(vec![], Stratum::euler(3)), (vec![0], Stratum::euler(4))],
        );
        assert_eq!(resolution_euler(&s), BigInt::from(7));
    }
}
