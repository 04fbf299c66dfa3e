use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("constant term {0} is not a unit (expected +1 or -1)")]
    NonUnitConstantTerm(String),

    #[error("divisor {name} has discrepancy {discrepancy} <= -1 (not log-terminal)")]
    NotLogTerminal { name: String, discrepancy: String },

    #[error(
        "stratum {subset:?}: E-polynomial evaluates to {at_one} at w = 1 but euler is {euler}"
    )]
    InconsistentEpoly {
        subset: Vec<String>,
        at_one: String,
        euler: String,
    },

    #[error("bad subset key: {0}")]
    BadSubsetKey(String),

    #[error("duplicate divisor name {0:?}")]
    DuplicateDivisor(String),

    #[error("symbolic path unavailable: divisor {name} has discrepancy {discrepancy}, need a non-negative integer")]
    SymbolicPathUnavailable { name: String, discrepancy: String },

    #[error("stratum {0:?} has no E-polynomial")]
    MissingEpoly(Vec<String>),

    #[error("rational function has a pole at w = 1")]
    PoleAtOne,

    #[error("zero denominator")]
    ZeroDenominator,

    #[error("{0}")]
    OutOfRange(String),

    #[error("a-table has {len} entries, index {needed} required")]
    TableTooShort { len: usize, needed: usize },

    #[error("parse error: {0}")]
    Parse(String),
}
