use std::path::PathBuf;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use stringy_core::rational::{parse_int, to_ratio_string};
use stringy_core::stratification::StratificationDoc;
use stringy_core::{
    hilbert_euler_table, known_part, obstruction_test, stratum_euler_table, stringy_e_diagonal,
    stringy_euler, Error, ModelParams, Stratification,
};
use thiserror::Error as ThisError;

use crate::output::{self, Format};

pub const MAX_ORDER_ENV: &str = "STRINGY_CALC_MAX_ORDER";
const DEFAULT_MAX_ORDER: usize = 512;

/// Literal appended to reports whose stable-locus Euler number is unknown.
pub const UNKNOWN_STABLE: &str = "+ e(M^s)";

#[derive(Debug, ThisError)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("cannot read {path}: {source}")]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error(transparent)]
    Core(#[from] Error),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Io { .. } => 4,
            CliError::Core(e) => match e {
                Error::NotLogTerminal { .. } => 3,
                Error::Parse(_)
                | Error::BadSubsetKey(_)
                | Error::InconsistentEpoly { .. }
                | Error::DuplicateDivisor(_)
                | Error::ZeroDenominator => 4,
                Error::PoleAtOne
                | Error::SymbolicPathUnavailable { .. }
                | Error::MissingEpoly(_) => 5,
                Error::OutOfRange(_) | Error::TableTooShort { .. } => 2,
                Error::NonUnitConstantTerm(_) => 1,
            },
        }
    }
}

type Result<T> = std::result::Result<T, CliError>;

fn max_order() -> Result<usize> {
    match std::env::var(MAX_ORDER_ENV) {
        Ok(v) => v.trim().parse().map_err(|_| {
            CliError::Usage(format!(
                "{MAX_ORDER_ENV}={v:?} is not a non-negative integer"
            ))
        }),
        Err(_) => Ok(DEFAULT_MAX_ORDER),
    }
}

fn checked_order(needed: u64) -> Result<usize> {
    let cap = max_order()?;
    match usize::try_from(needed) {
        Ok(n) if n <= cap => Ok(n),
        _ => Err(CliError::Usage(format!(
            "series order {needed} exceeds the cap of {cap} (set {MAX_ORDER_ENV} to raise it)"
        ))),
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HilbRow {
    pub n: u64,
    pub a_n: String,
}

pub fn hilb(max: u64, format: Format) -> Result<String> {
    let order = checked_order(max)?;
    let rows: Vec<HilbRow> = hilbert_euler_table(order)
        .iter()
        .enumerate()
        .map(|(n, a)| HilbRow {
            n: n as u64,
            a_n: a.to_string(),
        })
        .collect();
    Ok(output::render_rows(
        &rows,
        format,
        |r| vec![r.n.to_string(), r.a_n.clone()],
        &["n", "a_n"],
    ))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ObstructionRow {
    pub n: u64,
    pub a_n: String,
    pub value: String,
    pub fractional_part: String,
    pub obstructed: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub vw_value: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub est_vw_differ: Option<bool>,
}

pub fn obstruction(max: u64, vw: bool, format: Format) -> Result<String> {
    let needed = if vw { 4 * max - 3 } else { max };
    let table = hilbert_euler_table(checked_order(needed)?);
    let rows = (2..=max)
        .into_par_iter()
        .map(|n| {
            let rep = obstruction_test(ModelParams::new(n)?, &table, vw)?;
            Ok(ObstructionRow {
                n,
                a_n: rep.a_n.to_string(),
                value: to_ratio_string(&rep.value),
                fractional_part: to_ratio_string(&rep.fractional_part),
                obstructed: rep.obstructed,
                vw_value: rep.vw_value.as_ref().map(to_ratio_string),
                est_vw_differ: rep.est_vw_differ,
            })
        })
        .collect::<Result<Vec<_>>>()?;

    let mut headers = vec!["n", "a_n", "value", "fractional_part", "obstructed"];
    if vw {
        headers.extend(["vw_value", "est_vw_differ"]);
    }
    Ok(output::render_rows(
        &rows,
        format,
        |r| {
            let mut cells = vec![
                r.n.to_string(),
                r.a_n.clone(),
                r.value.clone(),
                r.fractional_part.clone(),
                r.obstructed.to_string(),
            ];
            if let (Some(v), Some(d)) = (&r.vw_value, r.est_vw_differ) {
                cells.push(v.clone());
                cells.push(d.to_string());
            }
            cells
        },
        &headers,
    ))
}

pub enum StringySource {
    File(PathBuf),
    Ogrady { n: u64, e_stable: Option<String> },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SymbolicReport {
    /// Coefficients lowest degree first.
    pub numerator: Vec<String>,
    pub denominator: Vec<String>,
    pub limit_at_one: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StringyReport {
    pub source: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub n: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub e_stable: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub known_part: Option<String>,
    /// `"p/q"`, or `"p/q + e(M^s)"` when the stable-locus term is unknown.
    pub e_st: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub symbolic: Option<SymbolicReport>,
    pub stratification: StratificationDoc,
}

fn coeff_strings(p: &stringy_core::Poly) -> Vec<String> {
    if p.is_zero() {
        return vec!["0".into()];
    }
    p.coeffs().iter().map(ToString::to_string).collect()
}

pub fn stringy(source: StringySource, symbolic: bool, format: Format) -> Result<String> {
    let (strat, n, e_stable, known) = match source {
        StringySource::File(path) => {
            let text =
                std::fs::read_to_string(&path).map_err(|source| CliError::Io { path, source })?;
            (Stratification::from_json(&text)?, None, None, None)
        }
        StringySource::Ogrady { n, e_stable } => {
            let p = ModelParams::new(n)?;
            checked_order(n)?;
            let e = e_stable.as_deref().map(parse_int).transpose()?;
            let a = hilbert_euler_table(n as usize);
            let a_n = &a[n as usize];
            let t = stratum_euler_table(p, a_n);
            let strat = stringy_core::ogrady::to_stratification(&t, &e.clone().unwrap_or_default());
            (strat, Some(n), e, Some(known_part(p, a_n)))
        }
    };

    let report = strat.validate()?;
    if !report.missing_subsets.is_empty() {
        eprintln!(
            "warning: {} of {} strata absent, taken as Euler number 0",
            report.missing_subsets.len(),
            1u64 << strat.divisors().len()
        );
    }

    let e_st = stringy_euler(&strat)?;
    let symbolic = if symbolic {
        let f = stringy_e_diagonal(&strat)?;
        let lim = f.limit_at_one()?;
        debug_assert_eq!(lim, e_st);
        Some(SymbolicReport {
            numerator: coeff_strings(f.num()),
            denominator: coeff_strings(f.den()),
            limit_at_one: to_ratio_string(&lim),
        })
    } else {
        None
    };

    let unknown_stable = n.is_some() && e_stable.is_none();
    let e_st_text = if unknown_stable {
        format!("{} {UNKNOWN_STABLE}", to_ratio_string(&e_st))
    } else {
        to_ratio_string(&e_st)
    };

    let out = StringyReport {
        source: if n.is_some() {
            "ogrady".into()
        } else {
            "strata".into()
        },
        n,
        e_stable: e_stable.map(|e| e.to_string()),
        known_part: known.as_ref().map(to_ratio_string),
        e_st: e_st_text,
        symbolic,
        stratification: strat.to_doc(),
    };
    Ok(output::render_stringy(&out, format))
}
