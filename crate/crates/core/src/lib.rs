//! Exact stringy Euler numbers and stringy E-functions.
//!
//! - [`series`]: truncated integer power series and the Hilbert-scheme
//!   Euler numbers `a_n` of a K3 surface
//! - [`rational`], [`poly`]: exact rationals, integer polynomials in
//!   `w = uv` and reduced rational functions
//! - [`stratification`], [`stringy`]: divisor arrangements with
//!   discrepancies and the stringy invariants computed from them
//! - [`ogrady`]: the rank-2 K3 moduli space `M_{2n}` and the integrality
//!   obstruction for `n a_n / (2n - 3)`

pub mod error;
pub mod ogrady;
pub mod poly;
pub mod rational;
pub mod series;
pub mod stratification;
pub mod stringy;

pub use error::{Error, Result};
pub use ogrady::{
    identity_check, isotropic_grassmannian_euler, known_part, obstruction_list, obstruction_test,
    stratum_euler_table, ModelParams, ObstructionReport, StratumEulerTable,
};
pub use poly::{Poly, RationalFn};
pub use rational::Rational;
pub use series::{expand_product_family, hilbert_euler_table, IntSeries};
pub use stratification::{Divisor, Stratification, Stratum, ValidationReport};
pub use stringy::{limit_at_one, stringy_e_diagonal, stringy_euler};
