//! Finitely supported z-Laurent series with algebra-element coefficients:
//! the coefficient type attached to each exponent of a cohomology-valued
//! series.

use std::collections::BTreeMap;
use std::sync::Arc;

use core_algebra::algebra::{AlgElem, AlgebraSpec};
use core_algebra::rat::{Rat, RatFuncL};
use core_algebra::CoreError;

/// Map z-exponent → algebra element, finitely supported. Entries below a
/// caller-tracked floor are considered unknown (truncated), entries above the
/// support are exactly zero.
#[derive(Clone, PartialEq)]
pub struct ZSer {
    spec: Arc<AlgebraSpec>,
    terms: BTreeMap<i64, AlgElem>,
}

impl ZSer {
    pub fn zero(spec: Arc<AlgebraSpec>) -> Self {
        ZSer { spec, terms: BTreeMap::new() }
    }

    pub fn single(k: i64, v: AlgElem) -> Self {
        let spec = v.spec().clone();
        let mut terms = BTreeMap::new();
        if !v.is_zero() {
            terms.insert(k, v);
        }
        ZSer { spec, terms }
    }

    pub fn spec(&self) -> &Arc<AlgebraSpec> {
        &self.spec
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn z_min(&self) -> Option<i64> {
        self.terms.keys().next().copied()
    }

    pub fn z_max(&self) -> Option<i64> {
        self.terms.keys().next_back().copied()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&i64, &AlgElem)> {
        self.terms.iter()
    }

    pub fn coeff(&self, k: i64) -> AlgElem {
        self.terms
            .get(&k)
            .cloned()
            .unwrap_or_else(|| AlgElem::zero(self.spec.clone()))
    }

    pub fn add_term(&mut self, k: i64, v: &AlgElem) -> Result<(), CoreError> {
        match self.terms.get_mut(&k) {
            Some(cur) => {
                let sum = cur.add(v)?;
                if sum.is_zero() {
                    self.terms.remove(&k);
                } else {
                    *cur = sum;
                }
            }
            None => {
                if !v.is_zero() {
                    v.check_same(&AlgElem::zero(self.spec.clone()))?;
                    self.terms.insert(k, v.clone());
                }
            }
        }
        Ok(())
    }

    pub fn add(&self, other: &ZSer) -> Result<ZSer, CoreError> {
        let mut out = self.clone();
        for (k, v) in &other.terms {
            out.add_term(*k, v)?;
        }
        Ok(out)
    }

    pub fn neg(&self) -> ZSer {
        ZSer {
            spec: self.spec.clone(),
            terms: self.terms.iter().map(|(k, v)| (*k, v.neg())).collect(),
        }
    }

    pub fn scale(&self, c: &RatFuncL) -> ZSer {
        if c.is_zero() {
            return ZSer::zero(self.spec.clone());
        }
        ZSer {
            spec: self.spec.clone(),
            terms: self.terms.iter().map(|(k, v)| (*k, v.scale(c))).collect(),
        }
    }

    pub fn scale_rat(&self, c: &Rat) -> ZSer {
        self.scale(&RatFuncL::constant(c.clone()))
    }

    /// Multiply by z^j.
    pub fn shift_z(&self, j: i64) -> ZSer {
        ZSer {
            spec: self.spec.clone(),
            terms: self.terms.iter().map(|(k, v)| (k + j, v.clone())).collect(),
        }
    }

    /// Multiply every coefficient by a fixed algebra element.
    pub fn mul_elem(&self, e: &AlgElem) -> Result<ZSer, CoreError> {
        let mut out = ZSer::zero(self.spec.clone());
        for (k, v) in &self.terms {
            out.add_term(*k, &v.mul(e)?)?;
        }
        Ok(out)
    }

    /// Cauchy product; the caller truncates below its floor afterwards.
    pub fn mul(&self, other: &ZSer) -> Result<ZSer, CoreError> {
        let mut out = ZSer::zero(self.spec.clone());
        for (ka, va) in &self.terms {
            for (kb, vb) in &other.terms {
                out.add_term(ka + kb, &va.mul(vb)?)?;
            }
        }
        Ok(out)
    }

    /// Substitute z → −z: the z^k coefficient picks up (−1)^k.
    pub fn negate_z(&self) -> ZSer {
        ZSer {
            spec: self.spec.clone(),
            terms: self
                .terms
                .iter()
                .map(|(k, v)| (*k, if k.rem_euclid(2) == 1 { v.neg() } else { v.clone() }))
                .collect(),
        }
    }

    /// Drop all z-exponents below `floor` (they are no longer trusted).
    pub fn truncate_below(&mut self, floor: i64) {
        self.terms.retain(|k, _| *k >= floor);
    }
}

impl std::fmt::Debug for ZSer {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, v) in self.terms.iter().rev() {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "z^{k}·{v:?}")?;
        }
        Ok(())
    }
}
