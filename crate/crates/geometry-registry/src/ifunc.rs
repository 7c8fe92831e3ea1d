//! Hypergeometric generators: finite data packs that expand to truncated
//! equivariant I-functions.
//!
//! Each generator term at exponent vector d is
//!
//!   z · Π_f Π_{b ∈ (lo_f(d), hi_f(d)], fr(b) = fr(ref_f(d))} (class_f + b·z)^{power_f}
//!     · (sector unit selected by fr(σ(d))),
//!
//! where lo, hi, ref, σ are rational affine forms in d. Gamma-ratio
//! semantics: when hi_f(d) < lo_f(d) the range flips to (hi, lo] and the
//! power negates, so a single factor encodes Γ(1 + c/z)/Γ(1 + c/z + m) for
//! m of either sign. Scalar factorials 1/(m! z^m) are factors with class 0.

use std::sync::Arc;

use core_algebra::algebra::{AlgebraSpec, AlgElem};
use core_algebra::rat::{rint, Rat, RatFuncL};
use num_traits::{One, Signed, Zero};
use series_engine::{CohSeries, FracVec, Window, ZSer};

use crate::linform::{frac_part, fractional_range, LinForm};
use crate::RegistryError;

/// One hypergeometric factor family.
#[derive(Clone, Debug)]
pub struct HGFactor {
    pub class: AlgElem,
    pub lo: LinForm,
    pub hi: LinForm,
    pub frref: LinForm,
    pub power: i32,
    /// Marks factors that arise as fiberwise modification factors, for the
    /// independent-route comparison against [`modification_factor`].
    pub is_modification: bool,
}

/// Data for the generic modification-factor route: the factor class (fiber
/// weight included) and the pairing form ⟨ρ, d⟩.
#[derive(Clone, Debug)]
pub struct ModFactor {
    pub class: AlgElem,
    pub pair: LinForm,
    pub mult: u32,
}

/// Complete generator for one I-function.
#[derive(Clone)]
pub struct IGen {
    pub spec: Arc<AlgebraSpec>,
    pub vars: Vec<String>,
    /// Exponent lattice steps: variable i ranges over (1/dens[i])·Z≥0.
    pub dens: Vec<i64>,
    /// Symbolic prefactor classes: the generator represents
    /// Π_i x_i^{ρ_i/z} · Σ_d (…) x^d.
    pub prefactor: Vec<AlgElem>,
    pub factors: Vec<HGFactor>,
    /// Twisted-sector selector: the term at d is multiplied by the unit of
    /// the sector labelled fr(σ(d)), looked up in the table.
    pub sector: Option<(LinForm, Vec<(Rat, usize)>)>,
    /// Generic-route data for the modification factors (empty when the
    /// geometry is not presented as a vector-bundle total space).
    pub modification: Vec<ModFactor>,
}

/// (class + b·z) as a degree-1 z-polynomial.
fn linear_zser(class: &AlgElem, b: &Rat) -> ZSer {
    let spec = class.spec().clone();
    let mut out = ZSer::single(0, class.clone());
    let bc = AlgElem::scalar(spec, RatFuncL::constant(b.clone()));
    out = out.add(&ZSer::single(1, bc)).expect("same spec");
    out
}

/// Truncated expansion of (class + b·z)^{-1} for b ≠ 0:
/// Σ_{j≥0} (−1)^j class^j b^{−1−j} z^{−1−j}, kept down to z^{floor}.
fn invert_linear(class: &AlgElem, b: &Rat, floor: i64) -> Result<ZSer, RegistryError> {
    assert!(!b.is_zero(), "inverted factor must have a nonzero z part");
    let spec = class.spec().clone();
    let mut acc = ZSer::zero(spec.clone());
    let mut num = AlgElem::unit(spec); // (−class)^j
    let mut coef = Rat::one() / b; // b^{−1−j} up to sign
    let mut k = -1i64; // z-exponent −1−j
    while k >= floor {
        let term = num.scale(&RatFuncL::constant(coef.clone()));
        if term.is_zero() {
            break;
        }
        acc = acc.add(&ZSer::single(k, term))?;
        num = num.mul(&class.neg())?;
        coef = &coef / b;
        k -= 1;
    }
    Ok(acc)
}

/// Expand the z-Laurent coefficient of x^d (including the overall leading z
/// and the sector unit), exact above `z_floor`.
pub fn term_at(gen: &IGen, d: &FracVec, z_floor: i64) -> Result<ZSer, RegistryError> {
    let spec = &gen.spec;
    // Resolve factor occurrences at d.
    let mut numer: Vec<(AlgElem, Rat)> = Vec::new();
    let mut denom: Vec<(AlgElem, Rat)> = Vec::new();
    for f in &gen.factors {
        let mut lo = f.lo.eval(d);
        let mut hi = f.hi.eval(d);
        let fr = f.frref.eval(d);
        let mut power = f.power;
        if hi < lo {
            std::mem::swap(&mut lo, &mut hi);
            power = -power;
        }
        for b in fractional_range(&lo, &hi, &fr) {
            let reps = power.unsigned_abs();
            for _ in 0..reps {
                if power > 0 {
                    numer.push((f.class.clone(), b.clone()));
                } else {
                    denom.push((f.class.clone(), b.clone()));
                }
            }
        }
    }
    // Leading z times the numerator polynomial (exact).
    let mut prod = ZSer::single(1, AlgElem::unit(spec.clone()));
    for (class, b) in &numer {
        prod = prod.mul(&linear_zser(class, b))?;
    }
    // Denominator factors one at a time, each expanded deep enough that the
    // final product is exact above z_floor.
    for (class, b) in &denom {
        let zmax = prod.z_max().unwrap_or(0);
        let inv = invert_linear(class, b, z_floor - zmax.max(0))?;
        prod = prod.mul(&inv)?;
        prod.truncate_below(z_floor);
    }
    // Sector unit.
    if let Some((sigma, table)) = &gen.sector {
        let fr = frac_part(&sigma.eval(d));
        let idx = table
            .iter()
            .find(|(val, _)| *val == fr)
            .map(|(_, i)| *i)
            .ok_or_else(|| {
                RegistryError::InvalidArgument(format!("no sector unit for fr = {fr}"))
            })?;
        prod = prod.mul_elem(&AlgElem::basis(spec.clone(), idx))?;
        prod.truncate_below(z_floor);
    }
    Ok(prod)
}

/// Expand the generator to a truncated I-function: per-variable exponent
/// window [0, order], z-exponents kept down to −(2·order + 4).
#[allow(non_snake_case)]
pub fn build_I(gen: &IGen, order: u32) -> Result<CohSeries, RegistryError> {
    let z_floor = -(2 * order as i64 + 4);
    let nv = gen.vars.len();
    let window = Window::box_to(nv, &rint(order as i64));
    let mut out = CohSeries::new(
        gen.spec.clone(),
        gen.vars.clone(),
        gen.dens.clone(),
        gen.prefactor.clone(),
        window,
        z_floor,
    )
    .map_err(RegistryError::Series)?;
    // Iterate the grid d ∈ Π_i (1/dens[i])·{0, …, order·dens[i]}.
    let counts: Vec<i64> = gen.dens.iter().map(|&den| order as i64 * den).collect();
    let mut idx = vec![0i64; nv];
    loop {
        let d = FracVec(
            idx.iter()
                .zip(&gen.dens)
                .map(|(&m, &den)| Rat::new(m.into(), den.into()))
                .collect(),
        );
        let term = term_at(gen, &d, z_floor)?;
        out.insert_zser(d, term)?;
        // advance the counter
        let mut i = 0;
        loop {
            if i == nv {
                return Ok(out);
            }
            idx[i] += 1;
            if idx[i] <= counts[i] {
                break;
            }
            idx[i] = 0;
            i += 1;
        }
    }
}

/// Generic modification factor for one concave line-bundle summand with
/// equivariant fiber class `class` and degree pairing ⟨ρ, d⟩:
///
///   M(d) = Π_{⟨ρ,d⟩ < b ≤ 0, fr(b) = fr(⟨ρ,d⟩)} (class + b·z)^{mult}.
///
/// Defined for ⟨ρ,d⟩ ≤ 0 (the concave range); independent of the generator
/// factor tables, so the two routes can be diffed.
pub fn modification_factor(m: &ModFactor, d: &FracVec) -> Result<ZSer, RegistryError> {
    let pair = m.pair.eval(d);
    if pair.is_positive() {
        return Err(RegistryError::InvalidArgument(
            "modification factor queried at a positive pairing value".into(),
        ));
    }
    let spec = m.class.spec().clone();
    let mut prod = ZSer::single(0, AlgElem::unit(spec));
    for b in fractional_range(&pair, &Rat::zero(), &pair) {
        for _ in 0..m.mult {
            prod = prod.mul(&linear_zser(&m.class, &b))?;
        }
    }
    Ok(prod)
}

/// Generic one-variable modification factor for [C^3/Z_n] at the sector
/// reached by the k-th power of the distinguished twisted direction:
///
///   Π_i Π_{−e_i·k/n < b ≤ 0, fr(b) = fr(−e_i·k/n)} (e_i·λ/n + b·z),
///
/// as a scalar-valued z-polynomial over `spec`. A second independent route
/// to the twisted factors of the orbifold generators.
pub fn bzn_modification(
    spec: &Arc<AlgebraSpec>,
    n_ord: i64,
    weights: &[i64],
    k: i64,
) -> Result<ZSer, RegistryError> {
    let mut prod = ZSer::single(0, AlgElem::unit(spec.clone()));
    for &w in weights {
        let lo = Rat::new((-w * k).into(), n_ord.into());
        let class = AlgElem::scalar(
            spec.clone(),
            RatFuncL::lambda_pow(Rat::new(w.into(), n_ord.into()), 1),
        );
        for b in fractional_range(&lo, &Rat::zero(), &lo) {
            prod = prod.mul(&linear_zser(&class, &b))?;
        }
    }
    Ok(prod)
}
