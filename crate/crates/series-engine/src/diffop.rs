//! Differential operators as polynomials in commuting Euler symbols
//! D_i = z x_i ∂/∂x_i, with monomial multipliers x^a and coefficients
//! polynomial in λ and z. Canonical term form: x^a · c(λ, z) · D^e.
//!
//! Logarithms never appear: D_i acts on a series term x^{d + ρ_i/z}·v as
//! multiplication of the coefficient v by (z·d_i + ρ_i), and moving D_i past
//! a monomial obeys D_i ∘ x^a = x^a ∘ (D_i + z·a_i).

use std::collections::BTreeMap;

use core_algebra::rat::{PolyL, Rat, RatFuncL};
use num_traits::Zero;

use crate::frac::FracVec;

/// Polynomial in λ and z: map z-exponent → polynomial in λ.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct LZPoly(BTreeMap<i64, PolyL>);

impl LZPoly {
    pub fn zero() -> Self {
        LZPoly(BTreeMap::new())
    }

    pub fn one() -> Self {
        LZPoly::from_poly(PolyL::one())
    }

    pub fn from_poly(p: PolyL) -> Self {
        let mut m = BTreeMap::new();
        if !p.is_zero() {
            m.insert(0, p);
        }
        LZPoly(m)
    }

    pub fn constant(c: Rat) -> Self {
        LZPoly::from_poly(PolyL::constant(c))
    }

    pub fn lambda() -> Self {
        LZPoly::from_poly(PolyL::lambda())
    }

    /// c·z^k
    pub fn z_term(c: Rat, k: i64) -> Self {
        let mut m = BTreeMap::new();
        if !c.is_zero() {
            m.insert(k, PolyL::constant(c));
        }
        LZPoly(m)
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&i64, &PolyL)> {
        self.0.iter()
    }

    pub fn z_degree(&self) -> Option<i64> {
        self.0.keys().next_back().copied()
    }

    fn insert_add(&mut self, k: i64, p: &PolyL) {
        if p.is_zero() {
            return;
        }
        let cur = self.0.entry(k).or_insert_with(PolyL::zero);
        let sum = &*cur + p;
        if sum.is_zero() {
            self.0.remove(&k);
        } else {
            *cur = sum;
        }
    }

    pub fn add(&self, other: &LZPoly) -> LZPoly {
        let mut out = self.clone();
        for (k, p) in &other.0 {
            out.insert_add(*k, p);
        }
        out
    }

    pub fn neg(&self) -> LZPoly {
        LZPoly(self.0.iter().map(|(k, p)| (*k, -p)).collect())
    }

    pub fn sub(&self, other: &LZPoly) -> LZPoly {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &LZPoly) -> LZPoly {
        let mut out = LZPoly::zero();
        for (ka, pa) in &self.0 {
            for (kb, pb) in &other.0 {
                out.insert_add(ka + kb, &(pa * pb));
            }
        }
        out
    }

    pub fn scale(&self, c: &Rat) -> LZPoly {
        if c.is_zero() {
            return LZPoly::zero();
        }
        LZPoly(self.0.iter().map(|(k, p)| (*k, p.scale(c))).collect())
    }

    /// Interpret as a z-Laurent scalar with RatFuncL coefficients.
    pub fn to_ratfunc_terms(&self) -> Vec<(i64, RatFuncL)> {
        self.0
            .iter()
            .map(|(k, p)| (*k, RatFuncL::from_poly(p.clone())))
            .collect()
    }
}

/// Commutative polynomial in the Euler symbols D_1..D_m with LZPoly
/// coefficients (no monomial multipliers).
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct DPoly {
    nvars: usize,
    terms: BTreeMap<Vec<u32>, LZPoly>,
}

impl DPoly {
    pub fn zero(nvars: usize) -> Self {
        DPoly { nvars, terms: BTreeMap::new() }
    }

    pub fn scalar(nvars: usize, c: LZPoly) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(vec![0; nvars], c);
        }
        DPoly { nvars, terms }
    }

    pub fn one(nvars: usize) -> Self {
        DPoly::scalar(nvars, LZPoly::one())
    }

    pub fn euler(nvars: usize, i: usize) -> Self {
        let mut e = vec![0u32; nvars];
        e[i] = 1;
        let mut terms = BTreeMap::new();
        terms.insert(e, LZPoly::one());
        DPoly { nvars, terms }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Vec<u32>, &LZPoly)> {
        self.terms.iter()
    }

    pub fn max_z_degree(&self) -> i64 {
        self.terms
            .values()
            .filter_map(|c| c.z_degree())
            .max()
            .unwrap_or(0)
    }

    fn insert_add(&mut self, e: Vec<u32>, c: &LZPoly) {
        if c.is_zero() {
            return;
        }
        let cur = self.terms.entry(e.clone()).or_insert_with(LZPoly::zero);
        let sum = cur.add(c);
        if sum.is_zero() {
            self.terms.remove(&e);
        } else {
            *cur = sum;
        }
    }

    pub fn add(&self, other: &DPoly) -> DPoly {
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.insert_add(e.clone(), c);
        }
        out
    }

    pub fn neg(&self) -> DPoly {
        DPoly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(e, c)| (e.clone(), c.neg())).collect(),
        }
    }

    pub fn sub(&self, other: &DPoly) -> DPoly {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &DPoly) -> DPoly {
        let mut out = DPoly::zero(self.nvars);
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                let e: Vec<u32> = ea.iter().zip(eb).map(|(a, b)| a + b).collect();
                out.insert_add(e, &ca.mul(cb));
            }
        }
        out
    }

    pub fn scale(&self, c: &Rat) -> DPoly {
        if c.is_zero() {
            return DPoly::zero(self.nvars);
        }
        DPoly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(e, p)| (e.clone(), p.scale(c))).collect(),
        }
    }

    pub fn pow(&self, k: u32) -> DPoly {
        let mut out = DPoly::one(self.nvars);
        for _ in 0..k {
            out = out.mul(self);
        }
        out
    }

    /// Substitute D_i → a_i (a commuting DPoly each), e.g. shifted symbols
    /// D_i + z·b_i or linear combinations of new Euler symbols.
    pub fn substitute_symbols(&self, images: &[DPoly]) -> DPoly {
        let out_vars = images.first().map(|d| d.nvars).unwrap_or(self.nvars);
        let mut out = DPoly::zero(out_vars);
        for (e, c) in &self.terms {
            let mut term = DPoly::scalar(out_vars, c.clone());
            for (i, &p) in e.iter().enumerate() {
                if p > 0 {
                    term = term.mul(&images[i].pow(p));
                }
            }
            out = out.add(&term);
        }
        out
    }
}

/// Finite sum of terms x^a · c(λ, z) · D^e in canonical sorted form.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct DiffOp {
    nvars: usize,
    terms: BTreeMap<FracVec, DPoly>,
}

impl DiffOp {
    pub fn zero(nvars: usize) -> Self {
        DiffOp { nvars, terms: BTreeMap::new() }
    }

    pub fn from_dpoly(d: DPoly) -> Self {
        let nvars = d.nvars();
        let mut terms = BTreeMap::new();
        if !d.is_zero() {
            terms.insert(FracVec::zeros(nvars), d);
        }
        DiffOp { nvars, terms }
    }

    pub fn euler(nvars: usize, i: usize) -> Self {
        DiffOp::from_dpoly(DPoly::euler(nvars, i))
    }

    pub fn scalar(nvars: usize, c: LZPoly) -> Self {
        DiffOp::from_dpoly(DPoly::scalar(nvars, c))
    }

    pub fn monomial(shift: FracVec) -> Self {
        let nvars = shift.len();
        let mut terms = BTreeMap::new();
        terms.insert(shift, DPoly::one(nvars));
        DiffOp { nvars, terms }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&FracVec, &DPoly)> {
        self.terms.iter()
    }

    pub fn shifts(&self) -> impl Iterator<Item = &FracVec> {
        self.terms.keys()
    }

    pub fn max_z_degree(&self) -> i64 {
        self.terms.values().map(|d| d.max_z_degree()).max().unwrap_or(0)
    }

    fn insert_add(&mut self, a: FracVec, d: &DPoly) {
        if d.is_zero() {
            return;
        }
        let cur = self
            .terms
            .entry(a.clone())
            .or_insert_with(|| DPoly::zero(self.nvars));
        let sum = cur.add(d);
        if sum.is_zero() {
            self.terms.remove(&a);
        } else {
            *cur = sum;
        }
    }

    pub fn add(&self, other: &DiffOp) -> DiffOp {
        let mut out = self.clone();
        for (a, d) in &other.terms {
            out.insert_add(a.clone(), d);
        }
        out
    }

    pub fn neg(&self) -> DiffOp {
        DiffOp {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(a, d)| (a.clone(), d.neg())).collect(),
        }
    }

    pub fn sub(&self, other: &DiffOp) -> DiffOp {
        self.add(&other.neg())
    }

    pub fn scale(&self, c: &Rat) -> DiffOp {
        if c.is_zero() {
            return DiffOp::zero(self.nvars);
        }
        DiffOp {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(a, d)| (a.clone(), d.scale(c))).collect(),
        }
    }

    /// Operator composition. Uses the commutation D_i ∘ x^b = x^b ∘ (D_i + z·b_i).
    pub fn mul(&self, other: &DiffOp) -> DiffOp {
        let mut out = DiffOp::zero(self.nvars);
        for (a, da) in &self.terms {
            for (b, db) in &other.terms {
                // Move D^e (from da) past x^b: D_i ↦ D_i + z·b_i.
                let images: Vec<DPoly> = (0..self.nvars)
                    .map(|i| {
                        let shift = LZPoly::z_term(b.0[i].clone(), 1);
                        DPoly::euler(self.nvars, i).add(&DPoly::scalar(self.nvars, shift))
                    })
                    .collect();
                let moved = da.substitute_symbols(&images);
                out.insert_add(a.add(b), &moved.mul(db));
            }
        }
        out
    }

    pub fn pow(&self, k: u32) -> DiffOp {
        let mut out = DiffOp::from_dpoly(DPoly::one(self.nvars));
        for _ in 0..k {
            out = out.mul(self);
        }
        out
    }

    /// Change of coordinates x = x(y) given multiplicatively: the j-th old
    /// variable is y^{column j of expmat} (so old monomial x^a becomes
    /// y^{expmat·a}), and the old Euler symbols are linear combinations of
    /// the new ones: D_{x_j} = Σ_i dcoef[j][i]·D_{y_i}.
    pub fn change_coords(&self, dcoef: &[Vec<Rat>], expmat: &[Vec<Rat>]) -> DiffOp {
        let new_nvars = dcoef.first().map(|r| r.len()).unwrap_or(0);
        let images: Vec<DPoly> = dcoef
            .iter()
            .map(|row| {
                let mut img = DPoly::zero(new_nvars);
                for (i, c) in row.iter().enumerate() {
                    img = img.add(&DPoly::euler(new_nvars, i).scale(c));
                }
                img
            })
            .collect();
        let mut out = DiffOp::zero(new_nvars);
        for (a, d) in &self.terms {
            let new_shift = FracVec(
                (0..new_nvars)
                    .map(|i| {
                        let mut s = Rat::zero();
                        for (j, aj) in a.0.iter().enumerate() {
                            s += &expmat[i][j] * aj;
                        }
                        s
                    })
                    .collect(),
            );
            out.insert_add(new_shift, &d.substitute_symbols(&images));
        }
        out
    }

    /// Test whether `other` equals c · x^s · self for some nonzero rational c
    /// and monomial shift x^s; returns (s, c) on success. Left-multiplying a
    /// differential operator by an invertible monomial-scalar factor does not
    /// change its solution space.
    pub fn proportional_up_to_monomial(&self, other: &DiffOp) -> Option<(FracVec, Rat)> {
        let (a0, d0) = self.terms.iter().next()?;
        let (b0, e0) = other.terms.iter().next()?;
        if self.terms.len() != other.terms.len() {
            return None;
        }
        let s = b0.sub(a0);
        // Ratio of the first LZPoly coefficients.
        let (ea, ca) = d0.iter().next()?;
        let (eb, cb) = e0.iter().next()?;
        if ea != eb {
            return None;
        }
        let (ka, pa) = ca.iter().next()?;
        let (kb, pb) = cb.iter().next()?;
        if ka != kb || pa.degree() != pb.degree() {
            return None;
        }
        let c = pb.leading_coeff() / pa.leading_coeff();
        // Verify globally.
        let mut scaled = self.scale(&c);
        scaled = DiffOp::monomial(s.clone()).mul(&scaled);
        if scaled == *other {
            Some((s, c))
        } else {
            None
        }
    }
}
