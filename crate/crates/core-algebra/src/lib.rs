//! Exact arithmetic (big rationals, rational functions in the equivariant
//! parameter), finite-dimensional graded Frobenius algebras with pairings,
//! and high-precision complex special functions for evaluating analytic
//! expressions on scalar-plus-nilpotent algebra elements.

pub mod algebra;
pub mod gamma;
pub mod hp;
pub mod numelem;
pub mod rat;

pub use algebra::{AlgElem, AlgebraSpec, Degree, SpectralPoint};
pub use hp::HPComplex;
pub use numelem::{NamedFn, NumAlgebra, NumElem};
pub use rat::{rat, rint, PolyL, Rat, RatFuncL};

use thiserror::Error;

/// Errors produced by the exact-arithmetic and algebra layers.
#[derive(Error, Debug)]
pub enum CoreError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("pole of order {order} at the nonequivariant limit")]
    PoleAtLambdaZero { order: usize },
    #[error("elements belong to different algebras: {left} vs {right}")]
    MismatchedAlgebra { left: String, right: String },
    #[error("invalid algebra data for {name}: {reason}")]
    InvalidAlgebra { name: String, reason: String },
    #[error("gamma function pole at a nonpositive integer")]
    GammaPole,
    #[error("unsupported derivative order {0}")]
    UnsupportedOrder(u32),
    #[error("parse error: {0:?}")]
    Parse(String),
}
