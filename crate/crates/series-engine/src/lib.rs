//! Truncated multivariate series with fractional exponents, z-Laurent
//! coefficients valued in graded-algebra elements, symbolic logarithmic
//! prefactors, Euler-operator actions, and power-series map inversion and
//! composition.

pub mod coh;
pub mod diffop;
pub mod frac;
pub mod map;
pub mod zser;

pub use coh::{ClassSeries, CohSeries, CohSeriesDoc};
pub use diffop::{DPoly, DiffOp, LZPoly};
pub use frac::{FracVec, Window};
pub use map::{invert_map, invert_rat_matrix, MapComp, SSer, SeriesMap};
pub use zser::ZSer;

use core_algebra::CoreError;
use thiserror::Error;

/// Errors produced by the series layer.
#[derive(Error, Debug)]
pub enum SeriesError {
    #[error("series have mismatched variable sets")]
    VariableMismatch,
    #[error("series have mismatched algebra specs")]
    SpecMismatch,
    #[error("series have mismatched prefactor classes")]
    PrefactorMismatch,
    #[error("queried coefficient is outside the valid truncation window")]
    OutOfWindow,
    #[error("map is not formally invertible")]
    NonInvertibleMap,
    #[error("additive series component raised to a non-integer or negative power")]
    FractionalPowerOfAdditiveSeries,
    #[error("exp/log of a series with an invalid constant term")]
    ConstantTermInExp,
    #[error("series does not have unit leading term")]
    NonUnitLeadingTerm,
    #[error("arithmetic overflow in series bookkeeping")]
    Overflow,
    #[error("parse error: {0}")]
    Parse(String),
    #[error(transparent)]
    Core(#[from] CoreError),
}
