//! From hypergeometric series to genus-zero invariants.
//!
//! The pipeline takes a truncated I-function (a [`series_engine::CohSeries`]
//! built from a registry generator), splits its z⁰ part into a λ-direction
//! twist, divisor-direction logarithm corrections, and twisted-sector flat
//! coordinates, inverts the resulting coordinate change, and assembles the
//! J-function candidate in flat coordinates. Invariant tables are then read
//! off the negative z-rows by pairing against the Poincaré-dual basis.

pub mod extract;
pub mod normalize;

pub use extract::{
    bzn_degree0_tables, inverse_mirror_coeffs, kp112_tables, kp113_invariants,
    nonequiv_limit, normalize_z4_family, one_point_invariants, one_point_row,
    z4_entry, InvariantRecord, InvariantRecordDoc, Kp112Tables, Z4Tables,
};
pub use normalize::{normalize_example, normalize_i, FlatCoord, MirrorData};

use core_algebra::CoreError;
use geometry_registry::RegistryError;
use series_engine::SeriesError;
use thiserror::Error;

/// Errors produced by the mirror pipeline.
#[derive(Error, Debug)]
pub enum PipelineError {
    #[error(transparent)]
    Core(#[from] CoreError),
    #[error(transparent)]
    Series(#[from] SeriesError),
    #[error(transparent)]
    Registry(#[from] RegistryError),
    #[error("series is not of the normalizable shape: {0}")]
    Shape(String),
    #[error("unsupported request: {0}")]
    Unsupported(String),
}
