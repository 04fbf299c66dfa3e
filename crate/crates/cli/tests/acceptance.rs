//! Acceptance suite. Runs every criterion, prints one PASS/FAIL line each and
//! exits non-zero if any fails.

use std::collections::BTreeSet;
use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use num_integer::binomial;
use num_traits::{One, Zero};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use serde_json::Value;

use stringy_core::rational::int;
use stringy_core::{
    hilbert_euler_table, identity_check, isotropic_grassmannian_euler, obstruction_test,
    stringy_e_diagonal, stringy_euler, Divisor, ModelParams, Poly, Stratification, Stratum,
};

type Criterion = (&'static str, fn() -> Result<(), String>);

const PAPER_LIST: [u64; 12] = [5, 6, 8, 11, 12, 13, 15, 16, 17, 18, 19, 20];

fn run_cli(args: &[&str]) -> Result<Value, String> {
    let out = Command::new(env!("CARGO_BIN_EXE_stringy-calc"))
        .args(args)
        .output()
        .map_err(|e| e.to_string())?;
    if !out.status.success() {
        return Err(format!(
            "exit {:?}: {}",
            out.status.code(),
            String::from_utf8_lossy(&out.stderr)
        ));
    }
    serde_json::from_slice(&out.stdout).map_err(|e| e.to_string())
}

fn obstructed_set(rows: &Value) -> BTreeSet<u64> {
    rows.as_array()
        .unwrap()
        .iter()
        .filter(|r| r["obstructed"] == Value::Bool(true))
        .map(|r| r["n"].as_u64().unwrap())
        .collect()
}

fn within(limit: Duration, start: Instant) -> Result<(), String> {
    let took = start.elapsed();
    if took < limit {
        Ok(())
    } else {
        Err(format!("took {took:?}, limit {limit:?}"))
    }
}

fn obstruction_list_reproduced() -> Result<(), String> {
    let start = Instant::now();
    let rows = run_cli(&["obstruction", "--max", "20", "--format", "json"])?;
    within(Duration::from_secs(1), start)?;
    let got = obstructed_set(&rows);
    let want: BTreeSet<u64> = PAPER_LIST.into_iter().collect();
    if got != want {
        return Err(format!("obstructed {got:?}, expected {want:?}"));
    }
    Ok(())
}

fn resolved_case_unobstructed() -> Result<(), String> {
    let rows = run_cli(&["obstruction", "--max", "2", "--format", "json"])?;
    let rows = rows.as_array().unwrap();
    if rows.len() != 1 || rows[0]["n"] != 2 || rows[0]["obstructed"] != Value::Bool(false) {
        return Err(format!("unexpected rows {rows:?}"));
    }
    let a = hilbert_euler_table(2);
    let rep =
        obstruction_test(ModelParams::new(2).unwrap(), &a, false).map_err(|e| e.to_string())?;
    if rep.obstructed {
        return Err("library reports n = 2 obstructed".into());
    }
    Ok(())
}

/// Multiplies the twelve truncated factor inverses
/// `(1 - q^m)^{-24} = sum_k C(k+23, 23) q^{mk}` by schoolbook convolution.
fn naive_table(order: usize) -> Vec<BigInt> {
    let mut acc = vec![BigInt::zero(); order + 1];
    acc[0] = BigInt::one();
    for m in 1..=order {
        let mut next = vec![BigInt::zero(); order + 1];
        for (i, a) in acc.iter().enumerate() {
            for k in 0..=(order - i) / m {
                next[i + k * m] += a * binomial(BigInt::from(k + 23), BigInt::from(23));
            }
        }
        acc = next;
    }
    acc
}

fn a_table_matches_oracle() -> Result<(), String> {
    let start = Instant::now();
    let got = hilbert_euler_table(12);
    let want = naive_table(12);
    within(Duration::from_secs(1), start)?;
    if got != want {
        return Err(format!("table {got:?} != oracle {want:?}"));
    }
    Ok(())
}

fn eq_3_1_identity() -> Result<(), String> {
    let start = Instant::now();
    let a = hilbert_euler_table(30);
    for n in 2..=30u64 {
        if !identity_check(ModelParams::new(n).unwrap(), &a[n as usize]) {
            return Err(format!("identity fails at n = {n}"));
        }
    }
    within(Duration::from_secs(1), start)
}

fn grassmannian_recursion() -> Result<(), String> {
    for n in 1..=50i64 {
        for k in 1..=n {
            let lo = isotropic_grassmannian_euler(k - 1, n).map_err(|e| e.to_string())?;
            let hi = isotropic_grassmannian_euler(k, n).map_err(|e| e.to_string())?;
            if BigInt::from(2 * n - 2 * k + 2) * lo != BigInt::from(k) * hi {
                return Err(format!("recursion fails at k = {k}, n = {n}"));
            }
        }
    }
    Ok(())
}

fn random_arrangement(rng: &mut StdRng, crepant: bool, with_epolys: bool) -> Stratification {
    let r = rng.gen_range(0..=4usize);
    let divisors = (0..r)
        .map(|i| {
            let a = if crepant { 0 } else { rng.gen_range(0..=6i64) };
            Divisor::new(format!("E{i}"), int(a))
        })
        .collect();
    let mut strata = Vec::new();
    for mask in 0u32..1 << r {
        if !rng.gen_bool(0.8) {
            continue;
        }
        let key = (0..r).filter(|i| mask >> i & 1 == 1).collect();
        let stratum = if with_epolys {
            let deg = rng.gen_range(0..=5usize);
            Stratum::with_epoly(Poly::new((0..=deg).map(|_| rng.gen_range(-5..=9i64))))
        } else {
            Stratum::euler(rng.gen_range(-100..=1000i64))
        };
        strata.push((key, stratum));
    }
    Stratification::new(divisors, strata)
}

fn limit_law() -> Result<(), String> {
    let start = Instant::now();
    let mut rng = StdRng::seed_from_u64(0x5717_1e57);
    for i in 0..200 {
        let s = random_arrangement(&mut rng, false, true);
        let f = stringy_e_diagonal(&s).map_err(|e| e.to_string())?;
        let lim = f.limit_at_one().map_err(|e| e.to_string())?;
        let e = stringy_euler(&s).map_err(|e| e.to_string())?;
        if lim != e {
            return Err(format!("arrangement {i}: limit {lim} != e_st {e}"));
        }
    }
    within(Duration::from_secs(5), start)
}

fn crepant_collapse() -> Result<(), String> {
    let mut rng = StdRng::seed_from_u64(0xc4e9);
    for i in 0..200 {
        let s = random_arrangement(&mut rng, true, false);
        let plain: BigInt = s.strata().map(|(_, st)| &st.euler).sum();
        let e = stringy_euler(&s).map_err(|e| e.to_string())?;
        if e != num_rational::BigRational::from_integer(plain.clone()) {
            return Err(format!("arrangement {i}: e_st {e} != sum {plain}"));
        }
    }
    Ok(())
}

fn vafa_witten_divergence() -> Result<(), String> {
    let rows = run_cli(&["obstruction", "--max", "20", "--vw", "--format", "json"])?;
    let mut checked = 0;
    for r in rows.as_array().unwrap() {
        if r["obstructed"] == Value::Bool(true) {
            checked += 1;
            if r["est_vw_differ"] != Value::Bool(true) {
                return Err(format!(
                    "n = {} obstructed but est_vw_differ = {}",
                    r["n"], r["est_vw_differ"]
                ));
            }
        }
    }
    if checked != PAPER_LIST.len() {
        return Err(format!(
            "checked {checked} obstructed rows, expected {}",
            PAPER_LIST.len()
        ));
    }
    Ok(())
}

fn main() -> ExitCode {
    let criteria: [Criterion; 8] = [
        ("obstruction list for n <= 20", obstruction_list_reproduced),
        ("n = 2 unobstructed", resolved_case_unobstructed),
        (
            "a-table equals naive convolution oracle to order 12",
            a_table_matches_oracle,
        ),
        (
            "eight-term stringy sum identity for 2 <= n <= 30",
            eq_3_1_identity,
        ),
        (
            "isotropic Grassmannian recursion for k <= n <= 50",
            grassmannian_recursion,
        ),
        (
            "limit at w = 1 equals e_st on 200 random arrangements",
            limit_law,
        ),
        (
            "crepant arrangements collapse to the plain Euler sum",
            crepant_collapse,
        ),
        (
            "obstructed n <= 20 differ from the Vafa-Witten value",
            vafa_witten_divergence,
        ),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        match check() {
            Ok(()) => println!(
                "PASS  {}. {name} ({:.3}s)",
                i + 1,
                start.elapsed().as_secs_f64()
            ),
            Err(why) => {
                failed += 1;
                println!("FAIL  {}. {name}: {why}", i + 1);
            }
        }
    }
    println!(
        "{} of {} criteria passed",
        criteria.len() - failed,
        criteria.len()
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
