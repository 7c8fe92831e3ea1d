//! Immutable registry of six toric crepant birational transformations:
//! the state-space algebras on both sides, hypergeometric generators for the
//! equivariant I-functions, Picard–Fuchs operators with their coordinate
//! transports, and embedded target tables for downstream verification.

pub mod algebras;
pub mod ifunc;
pub mod linform;
pub mod pf;
pub mod registry;
pub mod targets;

pub use ifunc::{build_I, modification_factor, HGFactor, IGen, ModFactor};
pub use linform::LinForm;
pub use registry::{example_spec, cr_mult_matrix, all_examples, ExampleSpec};

use thiserror::Error;

/// Which of the six birational transformations.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Hash, PartialOrd, Ord)]
pub enum Family {
    /// K_{P^2} vs [C^3/Z_3]
    I,
    /// K_{F_2} vs K_{P(1,1,2)}
    II,
    /// K_{P(1,1,2)} vs [C^3/Z_4]
    III,
    /// crepant resolution of K_{P(1,1,3)} vs orbifold K_{P(1,1,3)}
    IV,
    /// orbifold K_{P(1,1,3)} vs [C^3/Z_5]
    V,
    /// O(-1)+O(-2) over P^2 vs O(-1)^3 over P(1,2)
    VI,
}

/// Which side of a transformation: X is the more-orbifold side, Y the
/// more-resolved side.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Hash, PartialOrd, Ord)]
pub enum Side {
    X,
    Y,
}

/// Identifier for one geometry (a family together with a side).
#[derive(Clone, Copy, PartialEq, Eq, Debug, Hash, PartialOrd, Ord)]
pub struct ExampleId {
    pub family: Family,
    pub side: Side,
}

impl ExampleId {
    pub fn new(family: Family, side: Side) -> Self {
        ExampleId { family, side }
    }

    pub fn code(&self) -> String {
        format!("{:?}-{:?}", self.family, self.side)
    }

    pub fn parse(s: &str) -> Option<ExampleId> {
        let (f, sd) = s.split_once('-')?;
        let family = match f.to_ascii_uppercase().as_str() {
            "I" | "1" => Family::I,
            "II" | "2" => Family::II,
            "III" | "3" => Family::III,
            "IV" | "4" => Family::IV,
            "V" | "5" => Family::V,
            "VI" | "6" => Family::VI,
            _ => return None,
        };
        let side = match sd.to_ascii_uppercase().as_str() {
            "X" => Side::X,
            "Y" => Side::Y,
            _ => return None,
        };
        Some(ExampleId { family, side })
    }
}

pub const FAMILIES: [Family; 6] = [
    Family::I,
    Family::II,
    Family::III,
    Family::IV,
    Family::V,
    Family::VI,
];

/// Errors raised while assembling registry data.
#[derive(Error, Debug)]
pub enum RegistryError {
    #[error("core error: {0}")]
    Core(#[from] core_algebra::CoreError),
    #[error("series error: {0}")]
    Series(#[from] series_engine::SeriesError),
    #[error("unknown example: {0}")]
    UnknownExample(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}
