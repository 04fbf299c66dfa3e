//! The moduli space `M_{2n}` of rank-2 semistable sheaves with `c_1 = 0`,
//! `c_2 = 2n` on a K3 surface, seen through its Kirwan resolution.
//!
//! The resolution has three exceptional divisors `D1, D2, D3` with
//! discrepancies `6n-7, 2n-4, 4n-6`. The Euler numbers of the open strata
//! `D_J^0` follow from the fibre-bundle descriptions of the divisors and their
//! intersections by multiplicativity:
//!
//! | closed stratum | bundle over `X^[n]`                          | open-stratum Euler number |
//! |----------------|----------------------------------------------|---------------------------|
//! | `D1`           | `P^5` blown up along `P^2`, over `Gr^w(3,2n)` | `0`                       |
//! | `D2^0`         | `P^{2n-4}` over `P^{2n-3}` over `Sym^2_off`   | `(2n-3)(2n-2)(a^2-a)/2`   |
//! | `D3`           | `P^{2n-4} x P^2` over `Gr^w(2,2n)`            | `4 C(n,2) a`              |
//! | `D1 n D2`      | `P^2 x P^2` over `Gr^w(3,2n)`                 | `3 * 8 C(n,3) a`          |
//! | `D2 n D3`      | `P^{2n-4} x P^1` over `Gr^w(2,2n)`            | `2 * 4 C(n,2) a`          |
//! | `D1 n D3`      | `P^2 x P^{2n-5}` over `Gr^w(2,2n)`            | `(2n-4) 4 C(n,2) a`       |
//! | `D1 n D2 n D3` | `P^1 x P^{2n-5}` over `Gr^w(2,2n)`            | `2 (2n-4) 4 C(n,2) a`     |
//!
//! where `a = a_n = e(X^[n])` and `Sym^2_off` is the symmetric square of
//! `X^[n]` with the diagonal removed. The Euler number of the stable locus
//! `M^s_{2n}` is not known; everything here is either parametrised by it or
//! reports the part of `e_st` that does not depend on it.

use num_bigint::BigInt;
use num_integer::binomial;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::rational::{fractional_part, int, is_integral, ratio, Rational};
use crate::stratification::{Divisor, Stratification, Stratum};

pub const DIVISOR_NAMES: [&str; 3] = ["D1", "D2", "D3"];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct ModelParams {
    n: u64,
}

impl ModelParams {
    pub fn new(n: u64) -> Result<Self> {
        if n < 2 {
            return Err(Error::OutOfRange(format!("n = {n}, need n >= 2")));
        }
        Ok(ModelParams { n })
    }

    pub fn n(&self) -> u64 {
        self.n
    }

    /// Second Chern class `c = 2n`.
    pub fn c(&self) -> u64 {
        2 * self.n
    }

    fn big_n(&self) -> BigInt {
        BigInt::from(self.n)
    }
}

/// `C(n, k)`, zero when `k > n`.
pub fn binomial_or_zero(n: u64, k: u64) -> BigInt {
    if k > n {
        BigInt::zero()
    } else {
        binomial(BigInt::from(n), BigInt::from(k))
    }
}

/// Euler number `2^k C(n, k)` of the isotropic Grassmannian `Gr^w(k, 2n)`.
pub fn isotropic_grassmannian_euler(k: i64, n: i64) -> Result<BigInt> {
    if k < 0 || n < 0 || k > n {
        return Err(Error::OutOfRange(format!(
            "isotropic Grassmannian needs 0 <= k <= n, got k = {k}, n = {n}"
        )));
    }
    Ok(binomial_or_zero(n as u64, k as u64) << (k as usize))
}

/// Euler number `(e^2 - e) / 2` of the symmetric square with the diagonal
/// removed, for a space of Euler number `e`.
pub fn sym2_offdiag_euler(e: &BigInt) -> BigInt {
    (e * e - e) / 2
}

/// Discrepancies `(6n-7, 2n-4, 4n-6)` of `D1, D2, D3`.
pub fn discrepancies(p: ModelParams) -> [Rational; 3] {
    let n = p.n as i64;
    [int(6 * n - 7), int(2 * n - 4), int(4 * n - 6)]
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StratumEulerTable {
    pub n: u64,
    pub a_n: BigInt,
    pub d1: BigInt,
    pub d2: BigInt,
    pub d3: BigInt,
    pub d12: BigInt,
    pub d23: BigInt,
    pub d13: BigInt,
    pub d123: BigInt,
    pub discrepancies: [Rational; 3],
}

impl StratumEulerTable {
    /// `(subset, euler)` pairs for the seven exceptional strata.
    pub fn entries(&self) -> [(Vec<usize>, &BigInt); 7] {
        [
            (vec![0], &self.d1),
            (vec![1], &self.d2),
            (vec![2], &self.d3),
            (vec![0, 1], &self.d12),
            (vec![1, 2], &self.d23),
            (vec![0, 2], &self.d13),
            (vec![0, 1, 2], &self.d123),
        ]
    }
}

pub fn stratum_euler_table(p: ModelParams, a_n: &BigInt) -> StratumEulerTable {
    let n = p.n;
    let nn = p.big_n();
    let gr2 = isotropic_grassmannian_euler(2, n as i64).expect("n >= 2");
    let gr3 = binomial_or_zero(n, 3) << 3usize;
    let two_n_minus_4 = 2 * &nn - 4;

    StratumEulerTable {
        n,
        a_n: a_n.clone(),
        d1: BigInt::zero(),
        // e(P^{2n-4}) e(P^{2n-3}) e(Sym^2_off X^[n])
        d2: (2 * &nn - 3) * (2 * &nn - 2) * sym2_offdiag_euler(a_n),
        d3: &gr2 * a_n,
        d12: 3 * &gr3 * a_n,
        d23: 2 * &gr2 * a_n,
        d13: &two_n_minus_4 * &gr2 * a_n,
        d123: 2 * &two_n_minus_4 * &gr2 * a_n,
        discrepancies: discrepancies(p),
    }
}

/// The model as a generic stratification, with `e_stable` as the Euler
/// number of the stable locus (the open stratum).
pub fn to_stratification(t: &StratumEulerTable, e_stable: &BigInt) -> Stratification {
    let divisors = DIVISOR_NAMES
        .iter()
        .zip(&t.discrepancies)
        .map(|(name, a)| Divisor::new(*name, a.clone()))
        .collect();
    let strata = std::iter::once((Vec::new(), Stratum::euler(e_stable.clone()))).chain(
        t.entries()
            .into_iter()
            .map(|(k, e)| (k, Stratum::euler(e.clone()))),
    );
    Stratification::new(divisors, strata)
}

/// `e_st(M_{2n}) - e(M^s_{2n}) = (n-1)(a^2 - a) + 2n(n-1) a / (2n-3)`.
pub fn known_part(p: ModelParams, a_n: &BigInt) -> Rational {
    let n = p.big_n();
    let quadratic = (&n - 1) * (a_n * a_n - a_n);
    Rational::from_integer(quadratic) + Rational::new(2 * &n * (&n - 1) * a_n, 2 * &n - 3)
}

/// Checks the eight-term stringy sum with `e(M^s) = 0`, weighted by
/// `1/(6n-6)`, `1/(2n-3)`, `1/(4n-5)`, against [`known_part`].
pub fn identity_check(p: ModelParams, a_n: &BigInt) -> bool {
    let t = stratum_euler_table(p, a_n);
    let n = p.n as i64;
    let (w1, w2, w3) = (
        ratio(1, 6 * n - 6),
        ratio(1, 2 * n - 3),
        ratio(1, 4 * n - 5),
    );
    let e = |v: &BigInt| Rational::from_integer(v.clone());
    let sum = e(&t.d1) * &w1
        + e(&t.d2) * &w2
        + e(&t.d3) * &w3
        + e(&t.d12) * &w1 * &w2
        + e(&t.d23) * &w2 * &w3
        + e(&t.d13) * &w1 * &w3
        + e(&t.d123) * &w1 * &w2 * &w3;
    sum == known_part(p, a_n)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ObstructionReport {
    pub n: u64,
    pub a_n: BigInt,
    /// `n a_n / (2n - 3)`
    pub value: Rational,
    pub fractional_part: Rational,
    pub known_part: Rational,
    pub obstructed: bool,
    /// `a_{4n-3} + a_n / 4`, when requested.
    pub vw_value: Option<Rational>,
    pub est_vw_differ: Option<bool>,
}

/// Integrality test for `n a_n / (2n - 3)`. With `compare_vw` the table must
/// reach index `4n - 3`.
pub fn obstruction_test(
    p: ModelParams,
    a_table: &[BigInt],
    compare_vw: bool,
) -> Result<ObstructionReport> {
    let n = p.n as usize;
    let a_n = lookup(a_table, n)?;
    let value = Rational::new(p.big_n() * a_n, BigInt::from(2 * p.n - 3));
    let fractional_part = fractional_part(&value);
    let known = known_part(p, a_n);

    let (vw_value, est_vw_differ) = if compare_vw {
        let a_vw = lookup(a_table, 4 * n - 3)?;
        let vw = Rational::from_integer(a_vw.clone()) + Rational::new(a_n.clone(), 4.into());
        let differ = !is_integral(&(&known - &vw));
        (Some(vw), Some(differ))
    } else {
        (None, None)
    };

    Ok(ObstructionReport {
        n: p.n,
        a_n: a_n.clone(),
        obstructed: !fractional_part.is_zero(),
        value,
        fractional_part,
        known_part: known,
        vw_value,
        est_vw_differ,
    })
}

/// All `n` in `[2, max_n]` for which the obstruction applies.
pub fn obstruction_list(max_n: u64, a_table: &[BigInt]) -> Result<Vec<u64>> {
    if max_n < 2 {
        return Err(Error::OutOfRange(format!("max n = {max_n}, need >= 2")));
    }
    lookup(a_table, max_n as usize)?;
    let mut out = Vec::new();
    for n in 2..=max_n {
        if obstruction_test(ModelParams::new(n)?, a_table, false)?.obstructed {
            out.push(n);
        }
    }
    Ok(out)
}

fn lookup(a_table: &[BigInt], i: usize) -> Result<&BigInt> {
    a_table.get(i).ok_or(Error::TableTooShort {
        len: a_table.len(),
        needed: i,
    })
}
