//! Truncated formal power series in `q` with big-integer coefficients.
//!
//! A series of order `N` is known modulo `q^(N+1)` and always stores exactly
//! `N + 1` coefficients. Binary operations truncate to the smaller order.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::binomial;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct IntSeries {
    coeffs: Vec<BigInt>,
}

impl IntSeries {
    /// Builds a series of the given order from leading coefficients; missing
    /// entries are zero and entries past `order` are dropped.
    pub fn new<I, T>(coeffs: I, order: usize) -> Self
    where
        I: IntoIterator<Item = T>,
        T: Into<BigInt>,
    {
        let mut c: Vec<BigInt> = coeffs.into_iter().take(order + 1).map(Into::into).collect();
        c.resize(order + 1, BigInt::zero());
        IntSeries { coeffs: c }
    }

    pub fn zero(order: usize) -> Self {
        IntSeries {
            coeffs: vec![BigInt::zero(); order + 1],
        }
    }

    pub fn one(order: usize) -> Self {
        let mut s = Self::zero(order);
        s.coeffs[0] = BigInt::one();
        s
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<BigInt> {
        self.coeffs
    }

    /// Coefficient of `q^i`, or `None` past the truncation order.
    pub fn coeff(&self, i: usize) -> Option<&BigInt> {
        self.coeffs.get(i)
    }

    pub fn truncate(&self, order: usize) -> Self {
        IntSeries {
            coeffs: self.coeffs[..=order.min(self.order())].to_vec(),
        }
    }

    /// Cauchy product, truncated to the smaller of the two orders.
    pub fn mul(&self, other: &IntSeries) -> IntSeries {
        let order = self.order().min(other.order());
        let mut out = vec![BigInt::zero(); order + 1];
        for (i, a) in self.coeffs[..=order].iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs[..=order - i].iter().enumerate() {
                if !b.is_zero() {
                    out[i + j] += a * b;
                }
            }
        }
        IntSeries { coeffs: out }
    }

    /// Multiplicative inverse via the coefficient recurrence
    /// `b_k = -a_0^{-1} * sum_{i=1..k} a_i b_{k-i}`.
    pub fn inverse(&self) -> Result<IntSeries> {
        let a0 = &self.coeffs[0];
        if a0.abs() != BigInt::one() {
            return Err(Error::NonUnitConstantTerm(a0.to_string()));
        }
        // a0 is its own inverse when it is a unit
        let a0_inv = a0.clone();
        let n = self.order();
        let mut b: Vec<BigInt> = Vec::with_capacity(n + 1);
        b.push(a0_inv.clone());
        for k in 1..=n {
            let mut acc = BigInt::zero();
            for i in 1..=k {
                let ai = &self.coeffs[i];
                if !ai.is_zero() {
                    acc += ai * &b[k - i];
                }
            }
            b.push(-(&a0_inv * acc));
        }
        Ok(IntSeries { coeffs: b })
    }

    /// Multiplies in place by `(1 - q^m)^e` for `e >= 0`, using the sparse
    /// binomial expansion of the factor.
    fn mul_binomial_factor(&mut self, m: usize, e: u64) {
        let n = self.order();
        if e == 0 || m > n {
            return;
        }
        let terms: Vec<(usize, BigInt)> = (0..=e)
            .map_while(|k| {
                let deg = (k as usize).checked_mul(m).filter(|&d| d <= n)?;
                let c = binomial(BigInt::from(e), BigInt::from(k));
                Some((deg, if k % 2 == 1 { -c } else { c }))
            })
            .collect();
        let mut out = vec![BigInt::zero(); n + 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (deg, c) in &terms {
                if i + deg > n {
                    break;
                }
                out[i + deg] += a * c;
            }
        }
        self.coeffs = out;
    }
}

impl fmt::Display for IntSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let sign = if c.is_negative() { "-" } else { "+" };
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            first = false;
            let mag = c.abs();
            match (i, mag.is_one()) {
                (0, _) => write!(f, "{mag}")?,
                (1, true) => write!(f, "q")?,
                (1, false) => write!(f, "{mag}*q")?,
                (_, true) => write!(f, "q^{i}")?,
                (_, false) => write!(f, "{mag}*q^{i}")?,
            }
        }
        if first {
            write!(f, "0")?;
        }
        write!(f, " + O(q^{})", self.order() + 1)
    }
}

impl Mul for &IntSeries {
    type Output = IntSeries;
    fn mul(self, rhs: &IntSeries) -> IntSeries {
        IntSeries::mul(self, rhs)
    }
}

impl Add for &IntSeries {
    type Output = IntSeries;
    fn add(self, rhs: &IntSeries) -> IntSeries {
        let order = self.order().min(rhs.order());
        IntSeries {
            coeffs: (0..=order)
                .map(|i| &self.coeffs[i] + &rhs.coeffs[i])
                .collect(),
        }
    }
}

impl Sub for &IntSeries {
    type Output = IntSeries;
    fn sub(self, rhs: &IntSeries) -> IntSeries {
        let order = self.order().min(rhs.order());
        IntSeries {
            coeffs: (0..=order)
                .map(|i| &self.coeffs[i] - &rhs.coeffs[i])
                .collect(),
        }
    }
}

impl Neg for &IntSeries {
    type Output = IntSeries;
    fn neg(self) -> IntSeries {
        IntSeries {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

/// Expands `prod_m (1 - q^m)^{e_m}` to order `order`.
///
/// Factors with `m > order` are ignored. All negative-exponent factors are
/// first raised to their positive power, multiplied together and then
/// inverted once.
///
/// Panics if a key `m` is zero.
pub fn expand_product_family(exponents: &BTreeMap<u64, i64>, order: usize) -> IntSeries {
    let mut positive = IntSeries::one(order);
    let mut negative = IntSeries::one(order);
    for (&m, &e) in exponents {
        assert!(m > 0, "product family index must be positive");
        let Ok(m) = usize::try_from(m) else { continue };
        if m > order {
            continue;
        }
        if e >= 0 {
            positive.mul_binomial_factor(m, e as u64);
        } else {
            negative.mul_binomial_factor(m, e.unsigned_abs());
        }
    }
    // constant term of a product of (1 - q^m)^k with m >= 1 is always 1
    let inv = negative
        .inverse()
        .expect("product of (1 - q^m) powers has unit constant term");
    positive.mul(&inv)
}

/// Euler numbers `a_0..=a_max` of the Hilbert schemes of points on a K3
/// surface: the coefficients of `prod_{m>=1} (1 - q^m)^{-24}`.
pub fn hilbert_euler_table(max_n: usize) -> Vec<BigInt> {
    let exponents: BTreeMap<u64, i64> = (1..=max_n as u64).map(|m| (m, -24)).collect();
    expand_product_family(&exponents, max_n).into_coeffs()
}
