//! Normalization of a truncated I-function into a J-function candidate.
//!
//! The z⁰ part of an I-function with leading term z·𝟙 decomposes, by the
//! degree grading, into a λ·𝟙₀ component, divisor-class components, and
//! age-one twisted-unit components. The λ component is removed by an
//! exp(λ·s/z) twist, the divisor components correct the logarithmic
//! prefactor into flat divisor coordinates, and the twisted components are
//! flat coordinates outright. Inverting the resulting coordinate change and
//! substituting yields a series whose z¹ coefficient is exactly 𝟙 and whose
//! z⁰ coefficient is exactly the flat coordinate.

use core_algebra::algebra::{AlgElem, AlgebraSpec};
use core_algebra::rat::{Rat, RatFuncL};
use geometry_registry::registry::is_twisted_label;
use geometry_registry::{build_I, example_spec, ExampleId};
use num_traits::{One, Signed, Zero};
use series_engine::{
    invert_map, ClassSeries, CohSeries, FracVec, MapComp, SSer, SeriesMap,
};
use std::sync::Arc;

use crate::PipelineError;

/// What one flat coordinate is.
#[derive(Clone, Debug, PartialEq)]
pub enum FlatCoord {
    /// w = q^{1/root} where q is the flat coordinate dual to the given
    /// divisor basis class; the prefactor on this variable is root·(class).
    Divisor { basis: usize, root: Rat },
    /// w is the coefficient of the given twisted unit in the flat coordinate.
    Twisted { basis: usize },
}

/// The result of normalizing an I-function.
pub struct MirrorData {
    /// λ-twist: the J-candidate is e^{λ·s/z} times the (λ-prefactor-stripped)
    /// input, written in the input variables.
    pub s: SSer,
    /// Input variables → flat variables.
    pub forward: SeriesMap,
    /// Flat variables → input variables.
    pub inverse: SeriesMap,
    /// Meaning of each flat variable.
    pub flat: Vec<FlatCoord>,
    /// J-candidate in flat variables: z·𝟙 + (flat coordinate) + O(z⁻¹).
    pub j: CohSeries,
}

/// The rational c with rf = c·λ, if rf is such a multiple.
fn lambda_coeff(rf: &RatFuncL) -> Option<Rat> {
    if rf.is_zero() {
        return Some(Rat::zero());
    }
    let lam_inv = RatFuncL::lambda().inverse().ok()?;
    (rf * &lam_inv).as_constant()
}

fn shape_err<T>(msg: impl Into<String>) -> Result<T, PipelineError> {
    Err(PipelineError::Shape(msg.into()))
}

/// Split a class into (coefficient of λ·𝟙₀, divisor part); errors if any
/// other graded component is present.
fn split_prefactor(p: &AlgElem) -> Result<(Rat, AlgElem), PipelineError> {
    let spec = p.spec().clone();
    let degrees = spec.degrees().to_vec();
    let labels = spec.labels().to_vec();
    let mut coeffs = p.coeffs().to_vec();
    let c = match lambda_coeff(&coeffs[0]) {
        Some(c) => c,
        None => return shape_err("prefactor unit component is not a λ-multiple"),
    };
    coeffs[0] = RatFuncL::zero();
    for (b, rf) in coeffs.iter().enumerate().skip(1) {
        if rf.is_zero() {
            continue;
        }
        if degrees[b] != 2 || is_twisted_label(&labels[b]) || rf.as_constant().is_none() {
            return shape_err("prefactor is not a constant divisor combination");
        }
    }
    let rho = AlgElem::new(spec, coeffs)?;
    Ok((c, rho))
}

/// Normalize a truncated I-function. The input must have leading term z·𝟙
/// at exponent zero and no positive z-rows elsewhere.
pub fn normalize_i(i: &CohSeries) -> Result<MirrorData, PipelineError> {
    let spec = i.spec().clone();
    let nv = i.nvars();
    let dim = spec.dim();
    let degrees = spec.degrees().to_vec();
    let labels = spec.labels().to_vec();

    // Total truncation order for the scalar-series layer: every lattice
    // point of total order ≤ t lies inside the per-variable box window.
    let t = i
        .window()
        .hi
        .0
        .iter()
        .cloned()
        .min()
        .ok_or_else(|| PipelineError::Shape("series has no variables".into()))?;

    let zero_d = FracVec::zeros(nv);
    let unit_elem = AlgElem::unit(spec.clone());
    if i.coeff(&zero_d, 1)? != unit_elem {
        return shape_err("leading term is not z·𝟙");
    }
    if !i.coeff(&zero_d, 0)?.is_zero() {
        return shape_err("z⁰ coefficient at exponent zero is nonzero");
    }

    // Prefactor split: ρ_i = (divisor part) + c_i·λ𝟙₀.
    let mut rho: Vec<AlgElem> = Vec::with_capacity(nv);
    for p in i.prefactor() {
        let (_c, r) = split_prefactor(p)?;
        rho.push(r);
    }

    // z⁰ decomposition over the exponent lattice.
    let mut s = SSer::zero(nv, t.clone());
    let mut u: Vec<SSer> = (0..dim).map(|_| SSer::zero(nv, t.clone())).collect();
    let mut tw: Vec<SSer> = (0..dim).map(|_| SSer::zero(nv, t.clone())).collect();
    for (d, zser) in i.terms() {
        if d.is_zero() {
            continue;
        }
        if let Some(zmax) = zser.z_max() {
            for k in 1..=zmax {
                if !zser.coeff(k).is_zero() {
                    return shape_err(format!("positive z-row z^{k} at exponent {d:?}"));
                }
            }
        }
        let v0 = zser.coeff(0);
        for b in 0..dim {
            let rf = v0.coeff(b);
            if rf.is_zero() {
                continue;
            }
            if b == 0 {
                match lambda_coeff(rf) {
                    Some(c) => s.insert_add(d.clone(), &RatFuncL::constant(-c)),
                    None => return shape_err("z⁰ unit component is not a λ-multiple"),
                }
            } else if degrees[b] == 2 {
                let c = match rf.as_constant() {
                    Some(c) => c,
                    None => return shape_err("z⁰ degree-2 component is not constant"),
                };
                let tgt = if is_twisted_label(&labels[b]) { &mut tw[b] } else { &mut u[b] };
                tgt.insert_add(d.clone(), &RatFuncL::constant(c));
            } else {
                return shape_err(format!(
                    "z⁰ component along basis element {} of degree {}",
                    labels[b], degrees[b]
                ));
            }
        }
    }

    // Forward map: one flat coordinate per input variable.
    let mut comps: Vec<Option<MapComp>> = vec![None; nv];
    let mut flat: Vec<Option<FlatCoord>> = vec![None; nv];
    let mut claimed = vec![false; dim];
    for (iv, r) in rho.iter().enumerate() {
        if r.is_zero() {
            continue;
        }
        let nonzero: Vec<usize> =
            (0..dim).filter(|&b| !r.coeff(b).is_zero()).collect();
        if nonzero.len() != 1 {
            return Err(PipelineError::Unsupported(
                "prefactor is not a multiple of a single divisor class".into(),
            ));
        }
        let b = nonzero[0];
        let m = r.coeff(b).as_constant().expect("validated by split_prefactor");
        if !m.is_positive() || claimed[b] {
            return Err(PipelineError::Unsupported(
                "divisor prefactors are not positively and uniquely aligned".into(),
            ));
        }
        claimed[b] = true;
        comps[iv] = Some(MapComp::MonExp {
            mono: FracVec::unit(nv, iv),
            corr: u[b].scale_rat(&(Rat::one() / &m)),
        });
        flat[iv] = Some(FlatCoord::Divisor { basis: b, root: m });
    }
    for (b, ub) in u.iter().enumerate() {
        if !claimed[b] && !ub.is_zero() {
            return shape_err(format!(
                "divisor component {} has no prefactor direction", labels[b]
            ));
        }
    }
    for (b, tb) in tw.iter().enumerate() {
        if tb.is_zero() {
            continue;
        }
        // The series must contain a unit-coefficient linear term in some
        // still-unassigned variable; that variable carries this coordinate.
        let mut var = None;
        for iv in 0..nv {
            if comps[iv].is_none()
                && tb.coeff(&FracVec::unit(nv, iv)).is_one()
            {
                var = Some(iv);
                break;
            }
        }
        let iv = match var {
            Some(iv) => iv,
            None => {
                return shape_err(format!(
                    "twisted component {} has no leading variable", labels[b]
                ))
            }
        };
        comps[iv] = Some(MapComp::Plain { series: tb.clone() });
        flat[iv] = Some(FlatCoord::Twisted { basis: b });
    }
    let comps: Vec<MapComp> = comps
        .into_iter()
        .collect::<Option<Vec<_>>>()
        .ok_or_else(|| {
            PipelineError::Shape("a variable carries no flat coordinate".into())
        })?;
    let flat: Vec<FlatCoord> = flat.into_iter().map(|f| f.unwrap()).collect();

    let forward = SeriesMap::new(nv, comps)?;
    let inverse = invert_map(&forward, &t)?;

    // Strip the λ-part of the prefactor (x^{cλ/z} is part of the twist).
    let mut stripped = CohSeries::new(
        spec.clone(),
        i.vars().to_vec(),
        i.dens().to_vec(),
        rho.clone(),
        i.window().clone(),
        i.z_floor(),
    )?;
    for (d, z) in i.terms() {
        stripped.insert_zser(d.clone(), z.clone())?;
    }

    // λ-twist e^{λ·s/z}.
    let lam_unit = unit_elem.scale(&RatFuncL::lambda());
    let twisted = if s.is_zero() {
        stripped
    } else {
        let c = ClassSeries::from_scalar_series(&s, &lam_unit)?;
        stripped.mul_exp_correction(&c, -1)?
    };

    // Substitute the inverse map; the prefactors transform through the
    // monomial parts, and the series parts contribute exp(ρ·corr/z).
    let sub = twisted.substitute(&inverse)?;
    let mut corr = ClassSeries::zero(spec.clone(), nv);
    for (iv, comp) in inverse.comps().iter().enumerate() {
        if let MapComp::MonExp { corr: c, .. } = comp {
            if !rho[iv].is_zero() && !c.is_zero() {
                corr = corr.add(&ClassSeries::from_scalar_series(c, &rho[iv])?)?;
            }
        }
    }
    let corrected = if corr.terms().next().is_none() {
        sub
    } else {
        sub.mul_exp_correction(&corr, -1)?
    };
    let names: Vec<String> = flat
        .iter()
        .enumerate()
        .map(|(iv, f)| match f {
            FlatCoord::Divisor { .. } => format!("q{iv}"),
            FlatCoord::Twisted { .. } => format!("r{iv}"),
        })
        .collect();
    let j = corrected.rename_vars(names)?;

    verify_j_shape(&spec, &j, &flat)?;
    Ok(MirrorData { s, forward, inverse, flat, j })
}

/// Exact shape check: z¹ coefficient is 𝟙 at exponent zero and vanishes
/// elsewhere; z⁰ coefficient equals the flat coordinate.
fn verify_j_shape(
    spec: &Arc<AlgebraSpec>,
    j: &CohSeries,
    flat: &[FlatCoord],
) -> Result<(), PipelineError> {
    let nv = j.nvars();
    for (d, zser) in j.terms() {
        if let Some(zmax) = zser.z_max() {
            for k in 1..=zmax {
                let v = zser.coeff(k);
                if v.is_zero() {
                    continue;
                }
                if !(k == 1 && d.is_zero() && v == AlgElem::unit(spec.clone())) {
                    return shape_err(format!(
                        "J-candidate has an unexpected z^{k} row at {d:?}"
                    ));
                }
            }
        }
        let v0 = zser.coeff(0);
        if v0.is_zero() {
            continue;
        }
        let expected: Option<AlgElem> = (0..nv).find_map(|iv| {
            if d == &FracVec::unit(nv, iv) {
                if let FlatCoord::Twisted { basis } = flat[iv] {
                    return Some(AlgElem::basis(spec.clone(), basis));
                }
            }
            None
        });
        match expected {
            Some(e) if v0 == e => {}
            _ => {
                return shape_err(format!(
                    "J-candidate z⁰ row at {d:?} is not the flat coordinate"
                ))
            }
        }
    }
    Ok(())
}

/// Build and normalize the registered I-function of an example.
pub fn normalize_example(id: ExampleId, order: u32) -> Result<MirrorData, PipelineError> {
    let ex = example_spec(id);
    let i = build_I(&ex.igen, order)?;
    normalize_i(&i)
}
