//! Univariate integer polynomials in `w = uv` and their quotients.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::rational::Rational;

/// Integer polynomial, lowest degree first, no trailing zeros.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct Poly {
    coeffs: Vec<BigInt>,
}

impl Poly {
    pub fn new<I, T>(coeffs: I) -> Self
    where
        I: IntoIterator<Item = T>,
        T: Into<BigInt>,
    {
        let mut p = Poly {
            coeffs: coeffs.into_iter().map(Into::into).collect(),
        };
        p.trim();
        p
    }

    fn trim(&mut self) {
        while self.coeffs.last().is_some_and(Zero::is_zero) {
            self.coeffs.pop();
        }
    }

    pub fn zero() -> Self {
        Poly::default()
    }

    pub fn one() -> Self {
        Poly::constant(BigInt::one())
    }

    pub fn constant(c: impl Into<BigInt>) -> Self {
        Poly::new([c.into()])
    }

    /// `c * w^deg`
    pub fn monomial(c: impl Into<BigInt>, deg: usize) -> Self {
        let mut v = vec![BigInt::zero(); deg];
        v.push(c.into());
        Poly::new(v)
    }

    /// `w - 1`
    pub fn w_minus_one() -> Self {
        Poly::new([-1, 1])
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&BigInt> {
        self.coeffs.last()
    }

    pub fn eval(&self, w: &BigInt) -> BigInt {
        self.coeffs
            .iter()
            .rev()
            .fold(BigInt::zero(), |acc, c| acc * w + c)
    }

    pub fn eval_at_one(&self) -> BigInt {
        self.coeffs.iter().sum()
    }

    /// Non-negative gcd of the coefficients; zero for the zero polynomial.
    pub fn content(&self) -> BigInt {
        self.coeffs.iter().fold(BigInt::zero(), |g, c| g.gcd(c))
    }

    pub fn scale(&self, k: &BigInt) -> Poly {
        Poly::new(self.coeffs.iter().map(|c| c * k))
    }

    /// Divides every coefficient by `k`, which must divide all of them.
    fn div_scalar(&self, k: &BigInt) -> Poly {
        Poly::new(self.coeffs.iter().map(|c| {
            debug_assert!((c % k).is_zero());
            c / k
        }))
    }

    /// Primitive part with positive leading coefficient.
    pub fn primitive_part(&self) -> Poly {
        if self.is_zero() {
            return Poly::zero();
        }
        let mut c = self.content();
        if self.leading().is_some_and(Signed::is_negative) {
            c = -c;
        }
        self.div_scalar(&c)
    }

    fn shift(&self, k: usize) -> Poly {
        if self.is_zero() {
            return Poly::zero();
        }
        let mut v = vec![BigInt::zero(); k];
        v.extend(self.coeffs.iter().cloned());
        Poly { coeffs: v }
    }

    /// Pseudo-remainder: some multiple `lc(b)^k * a` reduced modulo `b`.
    fn pseudo_rem(&self, b: &Poly) -> Poly {
        let db = b.degree().expect("pseudo_rem by zero polynomial");
        let lb = b.leading().unwrap();
        let mut r = self.clone();
        while let Some(dr) = r.degree() {
            if dr < db {
                break;
            }
            let lr = r.leading().unwrap().clone();
            r = &r.scale(lb) - &b.shift(dr - db).scale(&lr);
        }
        r
    }

    /// Exact quotient `self / d` over the integers, or `None` if `d` does
    /// not divide `self` in `Z[w]`.
    pub fn div_exact(&self, d: &Poly) -> Option<Poly> {
        let dd = d.degree()?;
        let ld = d.leading().unwrap();
        let mut r = self.clone();
        let mut q = vec![BigInt::zero(); self.coeffs.len().saturating_sub(dd)];
        while let Some(dr) = r.degree() {
            if dr < dd {
                return None;
            }
            let (t, rem) = r.leading().unwrap().div_rem(ld);
            if !rem.is_zero() {
                return None;
            }
            r = &r - &d.shift(dr - dd).scale(&t);
            q[dr - dd] = t;
        }
        Some(Poly::new(q))
    }

    /// Greatest common divisor up to units in `Q[w]`, returned primitive with
    /// positive leading coefficient. `gcd(0, 0) = 0`.
    pub fn gcd(&self, other: &Poly) -> Poly {
        let mut a = self.primitive_part();
        let mut b = other.primitive_part();
        if a.degree() < b.degree() {
            std::mem::swap(&mut a, &mut b);
        }
        while !b.is_zero() {
            let r = a.pseudo_rem(&b);
            a = b;
            b = r.primitive_part();
        }
        a
    }

    /// Strips one factor of `(w - 1)` by synthetic division if `w = 1` is a
    /// root.
    pub fn div_w_minus_one(&self) -> Option<Poly> {
        if self.is_zero() || !self.eval_at_one().is_zero() {
            return None;
        }
        // q_{k-1} = sum_{i>=k} c_i
        let mut acc = BigInt::zero();
        let mut q = vec![BigInt::zero(); self.coeffs.len() - 1];
        for k in (1..self.coeffs.len()).rev() {
            acc += &self.coeffs[k];
            q[k - 1] = acc.clone();
        }
        Some(Poly::new(q))
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else if c.is_negative() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            first = false;
            let mag = c.abs();
            match (i, mag.is_one()) {
                (0, _) => write!(f, "{mag}")?,
                (1, true) => write!(f, "w")?,
                (1, false) => write!(f, "{mag}*w")?,
                (_, true) => write!(f, "w^{i}")?,
                (_, false) => write!(f, "{mag}*w^{i}")?,
            }
        }
        Ok(())
    }
}

impl Add for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let zero = BigInt::zero();
        Poly::new(
            (0..n)
                .map(|i| self.coeffs.get(i).unwrap_or(&zero) + rhs.coeffs.get(i).unwrap_or(&zero)),
        )
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        self + &(-rhs)
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero();
        }
        let mut out = vec![BigInt::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Poly::new(out)
    }
}

/// Quotient `num / den` of integer polynomials in canonical form: no common
/// factor of positive degree, joint integer content 1, and a positive leading
/// coefficient in the denominator. Zero is stored as `0 / 1`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RationalFn {
    num: Poly,
    den: Poly,
}

impl RationalFn {
    pub fn new(num: Poly, den: Poly) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::ZeroDenominator);
        }
        Ok(Self::reduce(num, den))
    }

    pub fn from_poly(p: Poly) -> Self {
        RationalFn {
            num: p,
            den: Poly::one(),
        }
    }

    pub fn zero() -> Self {
        Self::from_poly(Poly::zero())
    }

    pub fn num(&self) -> &Poly {
        &self.num
    }

    pub fn den(&self) -> &Poly {
        &self.den
    }

    fn reduce(num: Poly, den: Poly) -> Self {
        if num.is_zero() {
            return Self::zero();
        }
        let g = num.gcd(&den);
        let (mut num, mut den) = if g.degree().unwrap_or(0) > 0 {
            (
                num.div_exact(&g).expect("gcd divides numerator"),
                den.div_exact(&g).expect("gcd divides denominator"),
            )
        } else {
            (num, den)
        };
        let c = num.content().gcd(&den.content());
        if !c.is_one() {
            num = num.div_scalar(&c);
            den = den.div_scalar(&c);
        }
        if den.leading().is_some_and(Signed::is_negative) {
            num = -&num;
            den = -&den;
        }
        RationalFn { num, den }
    }

    /// Value at `w = 1`, after cancelling every common `(w - 1)` factor.
    pub fn limit_at_one(&self) -> Result<Rational> {
        limit_at_one(&self.num, &self.den)
    }
}

/// Limit of `num / den` as `w -> 1`. Works on unreduced pairs: common
/// `(w - 1)` factors are removed by synthetic division first.
pub fn limit_at_one(num: &Poly, den: &Poly) -> Result<Rational> {
    if den.is_zero() {
        return Err(Error::ZeroDenominator);
    }
    let mut num = num.clone();
    let mut den = den.clone();
    loop {
        let d1 = den.eval_at_one();
        if !d1.is_zero() {
            return Ok(Rational::new(num.eval_at_one(), d1));
        }
        match num.div_w_minus_one() {
            Some(q) => {
                num = q;
                den = den.div_w_minus_one().expect("w = 1 is a root of den");
            }
            None if num.is_zero() => return Ok(Rational::zero()),
            None => return Err(Error::PoleAtOne),
        }
    }
}

impl fmt::Display for RationalFn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den == Poly::one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({}) / ({})", self.num, self.den)
        }
    }
}

impl Add for &RationalFn {
    type Output = RationalFn;
    fn add(self, rhs: &RationalFn) -> RationalFn {
        if self.den == rhs.den {
            return RationalFn::reduce(&self.num + &rhs.num, self.den.clone());
        }
        let num = &(&self.num * &rhs.den) + &(&rhs.num * &self.den);
        RationalFn::reduce(num, &self.den * &rhs.den)
    }
}

impl Mul for &RationalFn {
    type Output = RationalFn;
    fn mul(self, rhs: &RationalFn) -> RationalFn {
        RationalFn::reduce(&self.num * &rhs.num, &self.den * &rhs.den)
    }
}
