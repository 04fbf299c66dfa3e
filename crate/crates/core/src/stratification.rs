//! Divisor arrangements with discrepancies and their open strata.
//!
//! A [`Stratification`] records the exceptional divisors `D_1..D_r` of a
//! normal-crossing resolution together with the Euler number (and optionally
//! the E-polynomial in `w = uv`) of each open stratum `D_J^0`. Subsets are
//! stored as sorted divisor indices; the empty subset is the part of the
//! resolution away from every exceptional divisor.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_traits::{One, Signed};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::poly::Poly;
use crate::rational::{parse_int, parse_rational, to_ratio_string, Rational};

/// Missing strata are only enumerated for arrangements up to this size.
const MAX_LISTED_DIVISORS: usize = 16;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Divisor {
    pub name: String,
    pub discrepancy: Rational,
}

impl Divisor {
    pub fn new(name: impl Into<String>, discrepancy: Rational) -> Self {
        Divisor {
            name: name.into(),
            discrepancy,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Stratum {
    pub euler: BigInt,
    pub epoly: Option<Poly>,
}

impl Stratum {
    pub fn euler(e: impl Into<BigInt>) -> Self {
        Stratum {
            euler: e.into(),
            epoly: None,
        }
    }

    /// Stratum whose Euler number is read off the E-polynomial at `w = 1`.
    pub fn with_epoly(p: Poly) -> Self {
        Stratum {
            euler: p.eval_at_one(),
            epoly: Some(p),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Stratification {
    divisors: Vec<Divisor>,
    strata: Vec<(Vec<usize>, Stratum)>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ValidationReport {
    /// Subsets with no stratum entry; their Euler number is taken to be 0.
    /// Only filled for arrangements of at most 16 divisors.
    pub missing_subsets: Vec<Vec<usize>>,
    pub missing_listed: bool,
    /// Every discrepancy is a non-negative integer.
    pub symbolic_eligible: bool,
    /// Every present stratum carries an E-polynomial.
    pub all_epolys: bool,
}

impl Stratification {
    /// Strata keys are sorted on insertion; nothing else is checked until
    /// [`Stratification::validate`].
    pub fn new<I>(divisors: Vec<Divisor>, strata: I) -> Self
    where
        I: IntoIterator<Item = (Vec<usize>, Stratum)>,
    {
        let strata = strata
            .into_iter()
            .map(|(mut k, s)| {
                k.sort_unstable();
                (k, s)
            })
            .collect();
        Stratification { divisors, strata }
    }

    /// Smooth variety: no divisors, a single open stratum.
    pub fn smooth(open: Stratum) -> Self {
        Self::new(Vec::new(), [(Vec::new(), open)])
    }

    pub fn divisors(&self) -> &[Divisor] {
        &self.divisors
    }

    /// Strata in ascending subset order.
    pub fn strata(&self) -> impl Iterator<Item = (&[usize], &Stratum)> {
        let mut v: Vec<_> = self.strata.iter().map(|(k, s)| (k.as_slice(), s)).collect();
        v.sort_by(|a, b| a.0.cmp(b.0));
        v.into_iter()
    }

    pub fn stratum(&self, subset: &[usize]) -> Option<&Stratum> {
        self.strata
            .iter()
            .find(|(k, _)| k == subset)
            .map(|(_, s)| s)
    }

    pub fn subset_names(&self, subset: &[usize]) -> Vec<String> {
        subset
            .iter()
            .map(|&i| {
                self.divisors
                    .get(i)
                    .map_or_else(|| format!("#{i}"), |d| d.name.clone())
            })
            .collect()
    }

    /// Same arrangement with every stratum Euler number (and E-polynomial)
    /// multiplied by `k`.
    pub fn scaled(&self, k: &BigInt) -> Self {
        Stratification {
            divisors: self.divisors.clone(),
            strata: self
                .strata
                .iter()
                .map(|(key, s)| {
                    (
                        key.clone(),
                        Stratum {
                            euler: &s.euler * k,
                            epoly: s.epoly.as_ref().map(|p| p.scale(k)),
                        },
                    )
                })
                .collect(),
        }
    }

    pub fn validate(&self) -> Result<ValidationReport> {
        let mut names = BTreeSet::new();
        for d in &self.divisors {
            if !names.insert(d.name.as_str()) {
                return Err(Error::DuplicateDivisor(d.name.clone()));
            }
            if d.discrepancy <= -Rational::one() {
                return Err(Error::NotLogTerminal {
                    name: d.name.clone(),
                    discrepancy: d.discrepancy.to_string(),
                });
            }
        }

        let r = self.divisors.len();
        let mut seen = BTreeSet::new();
        for (key, s) in &self.strata {
            if let Some(&bad) = key.iter().find(|&&i| i >= r) {
                return Err(Error::BadSubsetKey(format!(
                    "divisor index {bad} out of range (have {r} divisors)"
                )));
            }
            if key.windows(2).any(|w| w[0] == w[1]) {
                return Err(Error::BadSubsetKey(format!(
                    "repeated divisor in subset {:?}",
                    self.subset_names(key)
                )));
            }
            if !seen.insert(key.clone()) {
                return Err(Error::BadSubsetKey(format!(
                    "subset {:?} appears more than once",
                    self.subset_names(key)
                )));
            }
            if let Some(p) = &s.epoly {
                let at_one = p.eval_at_one();
                if at_one != s.euler {
                    return Err(Error::InconsistentEpoly {
                        subset: self.subset_names(key),
                        at_one: at_one.to_string(),
                        euler: s.euler.to_string(),
                    });
                }
            }
        }

        let missing_listed = r <= MAX_LISTED_DIVISORS;
        let missing_subsets = if missing_listed {
            (0u32..1 << r)
                .map(|mask| (0..r).filter(|i| mask >> i & 1 == 1).collect::<Vec<_>>())
                .filter(|k| !seen.contains(k))
                .collect()
        } else {
            Vec::new()
        };

        Ok(ValidationReport {
            missing_subsets,
            missing_listed,
            symbolic_eligible: self
                .divisors
                .iter()
                .all(|d| d.discrepancy.is_integer() && !d.discrepancy.is_negative()),
            all_epolys: self.strata.iter().all(|(_, s)| s.epoly.is_some()),
        })
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let doc: StratificationDoc =
            serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        Self::from_doc(&doc)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.to_doc()).expect("stratification serializes")
    }

    pub fn from_doc(doc: &StratificationDoc) -> Result<Self> {
        let mut divisors = Vec::with_capacity(doc.divisors.len());
        for d in &doc.divisors {
            if divisors.iter().any(|x: &Divisor| x.name == d.name) {
                return Err(Error::DuplicateDivisor(d.name.clone()));
            }
            divisors.push(Divisor::new(
                d.name.clone(),
                parse_rational(&d.discrepancy)?,
            ));
        }
        let mut strata = Vec::with_capacity(doc.strata.len());
        for s in &doc.strata {
            let mut key = Vec::with_capacity(s.subset.len());
            for name in &s.subset {
                let idx = divisors
                    .iter()
                    .position(|d| &d.name == name)
                    .ok_or_else(|| Error::BadSubsetKey(format!("unknown divisor {name:?}")))?;
                key.push(idx);
            }
            let euler = s.euler.to_bigint()?;
            let epoly = match &s.epoly {
                Some(cs) => Some(Poly::new(
                    cs.iter()
                        .map(IntRepr::to_bigint)
                        .collect::<Result<Vec<_>>>()?,
                )),
                None => None,
            };
            strata.push((key, Stratum { euler, epoly }));
        }
        Ok(Self::new(divisors, strata))
    }

    pub fn to_doc(&self) -> StratificationDoc {
        StratificationDoc {
            divisors: self
                .divisors
                .iter()
                .map(|d| DivisorDoc {
                    name: d.name.clone(),
                    discrepancy: to_ratio_string(&d.discrepancy),
                })
                .collect(),
            strata: self
                .strata()
                .map(|(k, s)| StratumDoc {
                    subset: self.subset_names(k),
                    euler: IntRepr::Str(s.euler.to_string()),
                    epoly: s.epoly.as_ref().map(|p| {
                        let cs = if p.is_zero() {
                            &[BigInt::ZERO][..]
                        } else {
                            p.coeffs()
                        };
                        cs.iter().map(|c| IntRepr::Str(c.to_string())).collect()
                    }),
                })
                .collect(),
        }
    }
}

/// JSON wire form of a [`Stratification`].
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct StratificationDoc {
    pub divisors: Vec<DivisorDoc>,
    pub strata: Vec<StratumDoc>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DivisorDoc {
    pub name: String,
    /// `"p/q"` or a bare integer string.
    pub discrepancy: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct StratumDoc {
    pub subset: Vec<String>,
    pub euler: IntRepr,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub epoly: Option<Vec<IntRepr>>,
}

/// Integer on the wire. Written as a decimal string; plain JSON numbers are
/// accepted on input when they fit in 64 bits.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum IntRepr {
    Str(String),
    Signed(i64),
    Unsigned(u64),
}

impl IntRepr {
    pub fn to_bigint(&self) -> Result<BigInt> {
        match self {
            IntRepr::Str(s) => parse_int(s),
            IntRepr::Signed(v) => Ok(BigInt::from(*v)),
            IntRepr::Unsigned(v) => Ok(BigInt::from(*v)),
        }
    }
}

impl From<&BigInt> for IntRepr {
    fn from(v: &BigInt) -> Self {
        IntRepr::Str(v.to_string())
    }
}
