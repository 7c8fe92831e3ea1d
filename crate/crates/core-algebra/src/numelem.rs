//! Numeric algebra elements: an [`AlgebraSpec`] evaluated at a complex value
//! of the equivariant parameter, and Taylor evaluation of analytic functions
//! on scalar-plus-nilpotent elements.

use std::sync::Arc;

use rug::Float;

use crate::algebra::{AlgElem, AlgebraSpec};
use crate::gamma::{hp_digamma, hp_lngamma, hp_polygamma};
use crate::hp::HPComplex;
use crate::rat::{PolyL, Rat, RatFuncL};
use crate::CoreError;

/// Evaluate a polynomial in the equivariant parameter at a complex value.
pub fn eval_poly_hp(p: &PolyL, lam: &HPComplex) -> HPComplex {
    let prec = lam.prec();
    let mut acc = HPComplex::zero(prec);
    for c in p.coeffs().iter().rev() {
        acc = &(&acc * lam) + &HPComplex::from_rat(c, prec);
    }
    acc
}

/// Evaluate a rational function at a complex value of the parameter.
pub fn eval_ratfunc_hp(r: &RatFuncL, lam: &HPComplex) -> HPComplex {
    let num = eval_poly_hp(r.num(), lam);
    let den = eval_poly_hp(r.den(), lam);
    &num / &den
}

/// An algebra with its structure constants and pairing evaluated numerically
/// at a fixed complex value of the equivariant parameter.
pub struct NumAlgebra {
    spec: Arc<AlgebraSpec>,
    lam: HPComplex,
    prec: u32,
    mul: Vec<Vec<Vec<HPComplex>>>,
    pairing: Vec<Vec<HPComplex>>,
}

impl NumAlgebra {
    pub fn new(spec: Arc<AlgebraSpec>, lam: HPComplex) -> Arc<Self> {
        let prec = lam.prec();
        let n = spec.dim();
        let mul = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| {
                        (0..n)
                            .map(|k| eval_ratfunc_hp(&spec.structure_constants()[i][j][k], &lam))
                            .collect()
                    })
                    .collect()
            })
            .collect();
        let pairing = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| eval_ratfunc_hp(&spec.pairing_matrix()[i][j], &lam))
                    .collect()
            })
            .collect();
        Arc::new(NumAlgebra {
            spec,
            lam,
            prec,
            mul,
            pairing,
        })
    }

    pub fn spec(&self) -> &Arc<AlgebraSpec> {
        &self.spec
    }

    pub fn lam(&self) -> &HPComplex {
        &self.lam
    }

    pub fn prec(&self) -> u32 {
        self.prec
    }

    pub fn dim(&self) -> usize {
        self.spec.dim()
    }

    pub fn pairing_num(&self) -> &Vec<Vec<HPComplex>> {
        &self.pairing
    }
}

/// Named analytic functions supported on scalar-plus-nilpotent arguments.
#[derive(Clone, Debug)]
pub enum NamedFn {
    Gamma,
    RecipGamma,
    LogGamma,
    Sin,
    Exp,
    /// Principal power with the given (possibly fractional) exponent.
    Power(Rat),
}

/// Algebra element with numeric coefficients, tied to a [`NumAlgebra`].
#[derive(Clone)]
pub struct NumElem {
    alg: Arc<NumAlgebra>,
    coeffs: Vec<HPComplex>,
}

impl NumElem {
    pub fn new(alg: Arc<NumAlgebra>, coeffs: Vec<HPComplex>) -> Result<Self, CoreError> {
        if coeffs.len() != alg.dim() {
            return Err(CoreError::InvalidAlgebra {
                name: alg.spec().name().to_string(),
                reason: "numeric coefficient vector length mismatch".to_string(),
            });
        }
        Ok(NumElem { alg, coeffs })
    }

    pub fn zero(alg: Arc<NumAlgebra>) -> Self {
        let n = alg.dim();
        let prec = alg.prec();
        NumElem {
            alg,
            coeffs: vec![HPComplex::zero(prec); n],
        }
    }

    pub fn unit(alg: Arc<NumAlgebra>) -> Self {
        let mut e = NumElem::zero(alg);
        e.coeffs[0] = HPComplex::one(e.alg.prec());
        e
    }

    pub fn basis(alg: Arc<NumAlgebra>, i: usize) -> Self {
        let mut e = NumElem::zero(alg);
        e.coeffs[i] = HPComplex::one(e.alg.prec());
        e
    }

    /// Evaluate an exact element at the algebra's parameter value.
    pub fn from_exact(alg: Arc<NumAlgebra>, elem: &AlgElem) -> Result<Self, CoreError> {
        if *elem.spec().as_ref() != *alg.spec().as_ref() {
            return Err(CoreError::MismatchedAlgebra {
                left: elem.spec().name().to_string(),
                right: alg.spec().name().to_string(),
            });
        }
        let coeffs = elem
            .coeffs()
            .iter()
            .map(|c| eval_ratfunc_hp(c, alg.lam()))
            .collect();
        Ok(NumElem { alg, coeffs })
    }

    pub fn alg(&self) -> &Arc<NumAlgebra> {
        &self.alg
    }

    pub fn coeffs(&self) -> &[HPComplex] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> &HPComplex {
        &self.coeffs[i]
    }

    pub fn add(&self, other: &NumElem) -> NumElem {
        NumElem {
            alg: self.alg.clone(),
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    pub fn sub(&self, other: &NumElem) -> NumElem {
        NumElem {
            alg: self.alg.clone(),
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }

    pub fn neg(&self) -> NumElem {
        NumElem {
            alg: self.alg.clone(),
            coeffs: self.coeffs.iter().map(|a| -a).collect(),
        }
    }

    pub fn scale(&self, c: &HPComplex) -> NumElem {
        NumElem {
            alg: self.alg.clone(),
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
        }
    }

    pub fn mul(&self, other: &NumElem) -> NumElem {
        let n = self.alg.dim();
        let prec = self.alg.prec();
        let mut coeffs = vec![HPComplex::zero(prec); n];
        for i in 0..n {
            if self.coeffs[i].is_zero() {
                continue;
            }
            for j in 0..n {
                if other.coeffs[j].is_zero() {
                    continue;
                }
                let p = &self.coeffs[i] * &other.coeffs[j];
                for k in 0..n {
                    let c = &self.alg.mul[i][j][k];
                    if !c.is_zero() {
                        coeffs[k] = &coeffs[k] + &(&p * c);
                    }
                }
            }
        }
        NumElem {
            alg: self.alg.clone(),
            coeffs,
        }
    }

    pub fn pairing(&self, other: &NumElem) -> HPComplex {
        let n = self.alg.dim();
        let prec = self.alg.prec();
        let mut acc = HPComplex::zero(prec);
        for i in 0..n {
            for j in 0..n {
                let g = &self.alg.pairing[i][j];
                if g.is_zero() {
                    continue;
                }
                acc = &acc + &(&(&self.coeffs[i] * &other.coeffs[j]) * g);
            }
        }
        acc
    }

    /// Largest coefficient modulus; used as a residual norm.
    pub fn max_abs(&self) -> Float {
        let prec = self.alg.prec();
        let mut m = Float::with_val(prec, 0);
        for c in &self.coeffs {
            let a = c.abs();
            if a > m {
                m = a;
            }
        }
        m
    }

    /// The scalar (unit-component) part.
    pub fn scalar_part(&self) -> HPComplex {
        self.coeffs[0].clone()
    }

    /// The nilpotent part (all non-unit components).
    pub fn nilpotent_part(&self) -> NumElem {
        let mut e = self.clone();
        e.coeffs[0] = HPComplex::zero(self.alg.prec());
        e
    }

    /// Evaluate `f` on this element by Taylor expansion on each local factor
    /// of the algebra's spectral decomposition: on a factor with idempotent
    /// `e` and character `χ`, the reduced part `(a − χ(a))·e` is nilpotent,
    /// so `f(a)·e = Σ_k f^(k)(χ(a))/k! · ((a − χ(a))·e)^k`.
    ///
    /// Gamma-type functions expand via exp of the log-gamma jet (digamma and
    /// polygamma derivatives) to avoid catastrophic cancellation.
    pub fn eval_fn(&self, f: &NamedFn, digits: u32) -> Result<NumElem, CoreError> {
        let spec = self.alg.spec().clone();
        let points = spec.spectrum().ok_or_else(|| CoreError::InvalidAlgebra {
            name: spec.name().to_string(),
            reason: "no spectral decomposition: cannot evaluate analytic functions".to_string(),
        })?;
        let prec = self.alg.prec();
        let lam = self.alg.lam().clone();
        let mut acc = NumElem::zero(self.alg.clone());
        for pt in points {
            let e = NumElem {
                alg: self.alg.clone(),
                coeffs: pt
                    .idempotent
                    .iter()
                    .map(|c| eval_ratfunc_hp(c, &lam))
                    .collect(),
            };
            // χ(a) = Σ_j a_j χ(Φ_j)
            let mut s = HPComplex::zero(prec);
            for (j, c) in self.coeffs.iter().enumerate() {
                if !c.is_zero() {
                    s = &s + &(c * &eval_ratfunc_hp(&pt.character[j], &lam));
                }
            }
            let jet = fn_jet(f, &s, pt.nilpotency, digits)?;
            // Reduced part on this factor: (a − χ(a))·e.
            let red = self.sub(&NumElem::unit(self.alg.clone()).scale(&s)).mul(&e);
            let mut term = e.scale(&jet[0]);
            let mut rpow = e;
            for c in jet.iter().skip(1) {
                rpow = rpow.mul(&red);
                term = term.add(&rpow.scale(c));
            }
            acc = acc.add(&term);
        }
        Ok(acc)
    }
}

impl std::fmt::Debug for NumElem {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "NumElem[")?;
        for (i, c) in self.coeffs.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{:?}", c)?;
        }
        write!(f, "]")
    }
}

/// Jet (truncated Taylor coefficients `f(s), f'(s)/1!, …`) of a named
/// function about the scalar `s`, with `k` coefficients.
pub fn fn_jet(f: &NamedFn, s: &HPComplex, k: usize, digits: u32) -> Result<Vec<HPComplex>, CoreError> {
    let prec = s.prec();
    let one = HPComplex::one(prec);
    match f {
        NamedFn::Exp => {
            let e = s.exp();
            let mut out = Vec::with_capacity(k);
            let mut fact = HPComplex::one(prec);
            for j in 0..k {
                if j > 0 {
                    fact = &fact * &HPComplex::from_i64(j as i64, prec).recip();
                }
                out.push(&e * &fact);
            }
            Ok(out)
        }
        NamedFn::Sin => {
            let sn = s.sin();
            let cs = s.cos();
            let mut out = Vec::with_capacity(k);
            let mut fact = HPComplex::one(prec);
            for j in 0..k {
                if j > 0 {
                    fact = &fact * &HPComplex::from_i64(j as i64, prec).recip();
                }
                let d = match j % 4 {
                    0 => sn.clone(),
                    1 => cs.clone(),
                    2 => -&sn,
                    _ => -&cs,
                };
                out.push(&d * &fact);
            }
            Ok(out)
        }
        NamedFn::Power(r) => {
            let w = HPComplex::from_rat(r, prec);
            let base = s.pow(&w);
            let sinv = s.recip();
            let mut out = Vec::with_capacity(k);
            let mut c = base;
            out.push(c.clone());
            for j in 0..k.saturating_sub(1) {
                // next coeff: c_{j+1} = c_j · (r−j)/(j+1) · s^{−1}
                let factor = &(&w - &HPComplex::from_i64(j as i64, prec))
                    * &HPComplex::from_i64(j as i64 + 1, prec).recip();
                c = &(&c * &factor) * &sinv;
                out.push(c.clone());
            }
            Ok(out)
        }
        NamedFn::LogGamma => loggamma_jet(s, k, digits),
        NamedFn::Gamma => {
            let lg = loggamma_jet(s, k, digits)?;
            Ok(jet_exp(&lg, prec))
        }
        NamedFn::RecipGamma => {
            // Near nonpositive-integer scalars use the reflection form
            // 1/Γ(z) = sin(πz)·Γ(1−z)/π, which is entire; otherwise negate
            // the log-gamma jet and exponentiate.
            let near_pole = {
                let rounded = s.re.clone().round();
                let dist = (&HPComplex::from_real(rounded.clone()) - s).abs();
                rounded.to_f64() < 0.5 && dist.to_f64() < 0.25
            };
            if near_pole {
                let pi = HPComplex::from_real(HPComplex::pi(prec));
                // sin(π(s+t)) jet:
                let sin_jet = {
                    let base = fn_jet(&NamedFn::Sin, &(&pi * s), k, digits)?;
                    // chain rule: argument is linear with slope π.
                    let mut out = Vec::with_capacity(k);
                    let mut p = HPComplex::one(prec);
                    for (j, b) in base.iter().enumerate() {
                        let _ = j;
                        out.push(b * &p);
                        p = &p * &pi;
                    }
                    out
                };
                // Γ(1−s−t) jet: jet of Γ at 1−s composed with t ↦ −t.
                let g = fn_jet(&NamedFn::Gamma, &(&one - s), k, digits)?;
                let mut gflip = Vec::with_capacity(k);
                for (j, c) in g.iter().enumerate() {
                    gflip.push(if j % 2 == 0 { c.clone() } else { -c });
                }
                let prod = jet_mul(&sin_jet, &gflip, prec);
                Ok(prod.iter().map(|c| c * &pi.recip()).collect())
            } else {
                let lg = loggamma_jet(s, k, digits)?;
                let neg: Vec<HPComplex> = lg.iter().map(|c| -c).collect();
                Ok(jet_exp(&neg, prec))
            }
        }
    }
}

fn loggamma_jet(s: &HPComplex, k: usize, digits: u32) -> Result<Vec<HPComplex>, CoreError> {
    let prec = s.prec();
    let mut out = Vec::with_capacity(k);
    out.push(hp_lngamma(s, digits)?);
    if k > 1 {
        out.push(hp_digamma(s, digits)?);
    }
    // out[j] = ψ^(j−1)(s)/j! for j ≥ 1.
    let mut inv_fact = HPComplex::one(prec);
    for j in 2..k {
        inv_fact = &inv_fact * &HPComplex::from_i64(j as i64, prec).recip();
        let d = hp_polygamma(s, (j - 1) as u32, digits)?;
        out.push(&d * &inv_fact);
    }
    Ok(out)
}

/// Truncated product of two jets of equal length.
pub fn jet_mul(a: &[HPComplex], b: &[HPComplex], prec: u32) -> Vec<HPComplex> {
    let k = a.len();
    let mut out = vec![HPComplex::zero(prec); k];
    for i in 0..k {
        for j in 0..k - i {
            out[i + j] = &out[i + j] + &(&a[i] * &b[j]);
        }
    }
    out
}

/// exp of a jet: `exp(g0)·exp(g − g0)` with the reduced part summed exactly
/// (it is nilpotent at the truncation order).
pub fn jet_exp(g: &[HPComplex], prec: u32) -> Vec<HPComplex> {
    let k = g.len();
    let e0 = g[0].exp();
    let mut reduced = g.to_vec();
    reduced[0] = HPComplex::zero(prec);
    let mut acc = vec![HPComplex::zero(prec); k];
    acc[0] = HPComplex::one(prec);
    let mut pow = acc.clone();
    let mut fact = HPComplex::one(prec);
    for j in 1..k {
        pow = jet_mul(&pow, &reduced, prec);
        fact = &fact * &HPComplex::from_i64(j as i64, prec).recip();
        for (a, p) in acc.iter_mut().zip(&pow) {
            *a = &*a + &(p * &fact);
        }
    }
    acc.iter().map(|c| c * &e0).collect()
}
