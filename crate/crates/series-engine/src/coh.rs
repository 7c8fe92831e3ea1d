//! Truncated multivariate series with fractional-lattice exponents,
//! z-Laurent coefficients valued in algebra elements, and symbolic
//! per-variable prefactors Π x_i^{ρ_i/z} (never expanded into logarithms).

use std::collections::BTreeMap;
use std::sync::Arc;

use core_algebra::algebra::{AlgElem, AlgebraSpec};
use core_algebra::rat::{rint, Rat, RatFuncL};
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::diffop::DiffOp;
use crate::frac::{FracVec, Window};
use crate::map::{MapComp, SeriesMap};
use crate::zser::ZSer;
use crate::SeriesError;

/// Series with algebra-element coefficients indexed by (exponent vector,
/// z-power), with a symbolic prefactor class per variable.
#[derive(Clone, PartialEq)]
pub struct CohSeries {
    spec: Arc<AlgebraSpec>,
    vars: Vec<String>,
    dens: Vec<i64>,
    prefactor: Vec<AlgElem>,
    window: Window,
    /// z-exponents below this floor are unknown (truncated away).
    z_floor: i64,
    terms: BTreeMap<FracVec, ZSer>,
}

impl CohSeries {
    pub fn new(
        spec: Arc<AlgebraSpec>,
        vars: Vec<String>,
        dens: Vec<i64>,
        prefactor: Vec<AlgElem>,
        window: Window,
        z_floor: i64,
    ) -> Result<Self, SeriesError> {
        if vars.len() != dens.len()
            || vars.len() != prefactor.len()
            || window.nvars() != vars.len()
        {
            return Err(SeriesError::VariableMismatch);
        }
        for p in &prefactor {
            if p.spec() != &spec && **p.spec() != *spec {
                return Err(SeriesError::SpecMismatch);
            }
        }
        Ok(CohSeries {
            spec,
            vars,
            dens,
            prefactor,
            window,
            z_floor,
            terms: BTreeMap::new(),
        })
    }

    pub fn spec(&self) -> &Arc<AlgebraSpec> {
        &self.spec
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    pub fn dens(&self) -> &[i64] {
        &self.dens
    }

    pub fn prefactor(&self) -> &[AlgElem] {
        &self.prefactor
    }

    pub fn window(&self) -> &Window {
        &self.window
    }

    pub fn z_floor(&self) -> i64 {
        self.z_floor
    }

    pub fn terms(&self) -> impl Iterator<Item = (&FracVec, &ZSer)> {
        self.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn z_max(&self) -> Option<i64> {
        self.terms.values().filter_map(|z| z.z_max()).max()
    }

    /// Insert (adding) a coefficient at exponent d, z-power k. Terms outside
    /// the window or below the z-floor are silently dropped.
    pub fn insert_add(&mut self, d: FracVec, k: i64, v: &AlgElem) -> Result<(), SeriesError> {
        if v.is_zero() || k < self.z_floor || !self.window.contains(&d) {
            return Ok(());
        }
        let z = self
            .terms
            .entry(d)
            .or_insert_with(|| ZSer::zero(self.spec.clone()));
        z.add_term(k, v)?;
        Ok(())
    }

    pub fn insert_zser(&mut self, d: FracVec, z: ZSer) -> Result<(), SeriesError> {
        for (k, v) in z.iter() {
            self.insert_add(d.clone(), *k, v)?;
        }
        Ok(())
    }

    fn prune(&mut self) {
        self.terms.retain(|_, z| !z.is_zero());
    }

    /// Exact coefficient of x^d z^k (prefactor carried symbolically, not
    /// expanded). Errors on out-of-window queries.
    pub fn coeff(&self, d: &FracVec, k: i64) -> Result<AlgElem, SeriesError> {
        if k < self.z_floor || !self.window.contains(d) {
            return Err(SeriesError::OutOfWindow);
        }
        Ok(self
            .terms
            .get(d)
            .map(|z| z.coeff(k))
            .unwrap_or_else(|| AlgElem::zero(self.spec.clone())))
    }

    /// The full z-Laurent coefficient at exponent d.
    pub fn zser_at(&self, d: &FracVec) -> Result<ZSer, SeriesError> {
        if !self.window.contains(d) {
            return Err(SeriesError::OutOfWindow);
        }
        Ok(self
            .terms
            .get(d)
            .cloned()
            .unwrap_or_else(|| ZSer::zero(self.spec.clone())))
    }

    fn check_compat(&self, other: &CohSeries) -> Result<(), SeriesError> {
        if self.vars != other.vars {
            return Err(SeriesError::VariableMismatch);
        }
        if *self.spec != *other.spec {
            return Err(SeriesError::SpecMismatch);
        }
        Ok(())
    }

    pub fn add(&self, other: &CohSeries) -> Result<CohSeries, SeriesError> {
        self.check_compat(other)?;
        for (a, b) in self.prefactor.iter().zip(&other.prefactor) {
            if a != b {
                return Err(SeriesError::PrefactorMismatch);
            }
        }
        let mut out = CohSeries::new(
            self.spec.clone(),
            self.vars.clone(),
            self.dens.clone(),
            self.prefactor.clone(),
            self.window.intersect(&other.window),
            self.z_floor.max(other.z_floor),
        )?;
        for (d, z) in self.terms.iter().chain(other.terms.iter()) {
            out.insert_zser(d.clone(), z.clone())?;
        }
        out.prune();
        Ok(out)
    }

    pub fn neg(&self) -> CohSeries {
        let mut out = self.clone();
        out.terms = out.terms.iter().map(|(d, z)| (d.clone(), z.neg())).collect();
        out
    }

    pub fn sub(&self, other: &CohSeries) -> Result<CohSeries, SeriesError> {
        self.add(&other.neg())
    }

    pub fn scale(&self, c: &RatFuncL) -> CohSeries {
        let mut out = self.clone();
        if c.is_zero() {
            out.terms.clear();
            return out;
        }
        out.terms = out.terms.iter().map(|(d, z)| (d.clone(), z.scale(c))).collect();
        out
    }

    /// Multiply by z^j.
    pub fn shift_z(&self, j: i64) -> CohSeries {
        let mut out = self.clone();
        out.z_floor += j;
        out.terms = out
            .terms
            .iter()
            .map(|(d, z)| (d.clone(), z.shift_z(j)))
            .collect();
        out
    }

    /// Substitute z → −z. The prefactor classes flip sign (x^{ρ/z} → x^{−ρ/z})
    /// and the z^k coefficient picks up (−1)^k.
    pub fn negate_z(&self) -> CohSeries {
        let mut out = self.clone();
        out.prefactor = out.prefactor.iter().map(|p| p.neg()).collect();
        out.terms = out
            .terms
            .iter()
            .map(|(d, z)| (d.clone(), z.negate_z()))
            .collect();
        out
    }

    /// Restrict to a smaller window (used for truncation-consistency checks).
    pub fn restrict(&self, window: &Window) -> CohSeries {
        let mut out = self.clone();
        out.window = self.window.intersect(window);
        out.terms.retain(|d, _| out.window.contains(d));
        out
    }

    /// Cauchy product. Prefactor classes add componentwise.
    pub fn mul(&self, other: &CohSeries) -> Result<CohSeries, SeriesError> {
        self.check_compat(other)?;
        let prefactor: Result<Vec<AlgElem>, _> = self
            .prefactor
            .iter()
            .zip(&other.prefactor)
            .map(|(a, b)| a.add(b))
            .collect();
        let zmax_a = self.z_max().unwrap_or(self.z_floor);
        let zmax_b = other.z_max().unwrap_or(other.z_floor);
        let z_floor = (self.z_floor + zmax_b).max(other.z_floor + zmax_a);
        let mut out = CohSeries::new(
            self.spec.clone(),
            self.vars.clone(),
            self.dens.clone(),
            prefactor?,
            self.window.product(&other.window),
            z_floor,
        )?;
        for (da, za) in &self.terms {
            for (db, zb) in &other.terms {
                let d = da.add(db);
                if !out.window.contains(&d) {
                    continue;
                }
                let mut prod = za.mul(zb)?;
                prod.truncate_below(out.z_floor);
                out.insert_zser(d, prod)?;
            }
        }
        out.prune();
        Ok(out)
    }

    /// Apply a differential operator in Euler symbols. D_i acts on the term
    /// x^{d + ρ_i/z} as multiplication by (z·d_i + ρ_i); monomial shifts
    /// translate the exponent table and shrink the valid window accordingly.
    pub fn apply_diffop(&self, op: &DiffOp) -> Result<CohSeries, SeriesError> {
        if op.nvars() != self.nvars() {
            return Err(SeriesError::VariableMismatch);
        }
        // Valid output window: intersection over shifts a of (window + a).
        let mut window: Option<Window> = None;
        for a in op.shifts() {
            let w = self.window.shift(a);
            window = Some(match window {
                None => w,
                Some(prev) => prev.intersect(&w),
            });
        }
        let window = window.unwrap_or_else(|| self.window.clone());
        let z_floor = self.z_floor + op.max_z_degree().max(0) + {
            // (z·d_i + ρ_i)-powers also raise z-exponents by up to the total
            // Euler degree of the operator.
            let mut deg = 0i64;
            for (_, dp) in op.iter() {
                for (e, _) in dp.iter() {
                    deg = deg.max(e.iter().map(|&p| p as i64).sum());
                }
            }
            deg
        };
        let mut out = CohSeries::new(
            self.spec.clone(),
            self.vars.clone(),
            self.dens.clone(),
            self.prefactor.clone(),
            window,
            z_floor,
        )?;
        for (shift, dpoly) in op.iter() {
            for (d, zser) in &self.terms {
                let out_d = d.add(shift);
                if !out.window.contains(&out_d) {
                    continue;
                }
                // Evaluate the D-polynomial at D_i ↦ z·d_i + ρ_i.
                let mut acc = ZSer::zero(self.spec.clone());
                for (e, lz) in dpoly.iter() {
                    // Π_i (z·d_i + ρ_i)^{e_i} as an AlgElem-valued z-polynomial.
                    let mut factor = ZSer::single(0, AlgElem::unit(self.spec.clone()));
                    for (i, &p) in e.iter().enumerate() {
                        if p == 0 {
                            continue;
                        }
                        let mut lin = ZSer::single(0, self.prefactor[i].clone());
                        let di = AlgElem::scalar(
                            self.spec.clone(),
                            RatFuncL::constant(d.0[i].clone()),
                        );
                        lin = lin.add(&ZSer::single(1, di))?;
                        for _ in 0..p {
                            factor = factor.mul(&lin)?;
                        }
                    }
                    // Multiply by the scalar coefficient polynomial in λ, z.
                    let mut with_coeff = ZSer::zero(self.spec.clone());
                    for (zk, rf) in lz.to_ratfunc_terms() {
                        let piece = factor.scale(&rf).shift_z(zk);
                        with_coeff = with_coeff.add(&piece)?;
                    }
                    acc = acc.add(&with_coeff)?;
                }
                let mut res = acc.mul(zser)?;
                res.truncate_below(out.z_floor);
                out.insert_zser(out_d, res)?;
            }
        }
        out.prune();
        Ok(out)
    }

    /// Formal composition with a coordinate change (one map component per
    /// variable of this series). The prefactor classes transform through the
    /// monomial parts only; exponential-correction factors exp(ρ·corr/z)
    /// must be supplied by the caller via `mul_exp_correction`.
    pub fn substitute(&self, m: &SeriesMap) -> Result<CohSeries, SeriesError> {
        if m.nvars_out() != self.nvars() {
            return Err(SeriesError::VariableMismatch);
        }
        if !self.window.lo.is_zero() {
            return Err(SeriesError::OutOfWindow);
        }
        let n_new = m.nvars_in();
        // Output validity: total order t is complete if every input point d
        // with total(leading(d)) ≤ t lies in the input window.
        let mut t_max: Option<Rat> = None;
        for (i, comp) in m.comps().iter().enumerate() {
            let kappa = comp_leading_total(comp)?;
            if kappa <= Rat::zero() {
                return Err(SeriesError::NonInvertibleMap);
            }
            let cand = &self.window.hi.0[i] * &kappa;
            t_max = Some(match t_max {
                None => cand,
                Some(t) => t.min(cand),
            });
        }
        let t_max = t_max.unwrap_or_else(Rat::zero);
        let t_max = match &self.window.total_hi {
            Some(t) if *t < t_max => t.clone(),
            _ => t_max,
        };
        // New prefactors: ρ'_j = Σ_i mono_i[j] · ρ_i.
        let mut prefactor: Vec<AlgElem> =
            (0..n_new).map(|_| AlgElem::zero(self.spec.clone())).collect();
        for (i, comp) in m.comps().iter().enumerate() {
            match comp {
                MapComp::MonExp { mono, .. } => {
                    for (j, e) in mono.0.iter().enumerate() {
                        if !e.is_zero() {
                            let add = self.prefactor[i]
                                .scale(&RatFuncL::constant(e.clone()));
                            prefactor[j] = prefactor[j].add(&add)?;
                        }
                    }
                }
                MapComp::Plain { .. } => {
                    if !self.prefactor[i].is_zero() {
                        return Err(SeriesError::PrefactorMismatch);
                    }
                }
            }
        }
        let dens = derive_dens(n_new, m, &self.dens);
        let window = Window {
            lo: FracVec::zeros(n_new),
            hi: FracVec(vec![t_max.clone(); n_new]),
            total_hi: Some(t_max),
        };
        let vars: Vec<String> = (0..n_new).map(|j| format!("t{j}")).collect();
        let mut out = CohSeries::new(
            self.spec.clone(),
            vars,
            dens,
            prefactor,
            window,
            self.z_floor,
        )?;
        for (d, zser) in &self.terms {
            let (mono, factor) = m.power_product(d)?;
            for (fe, fc) in factor.terms() {
                let e = mono.add(fe);
                if !out.window.contains(&e) {
                    continue;
                }
                out.insert_zser(e, zser.scale(fc))?;
            }
        }
        out.prune();
        Ok(out)
    }

    pub fn rename_vars(mut self, vars: Vec<String>) -> Result<CohSeries, SeriesError> {
        if vars.len() != self.vars.len() {
            return Err(SeriesError::VariableMismatch);
        }
        self.vars = vars;
        Ok(self)
    }

    /// Multiply by exp(c·z^{zpow}) where c is a series with algebra-element
    /// coefficients and zero constant term.
    pub fn mul_exp_correction(
        &self,
        c: &ClassSeries,
        zpow: i64,
    ) -> Result<CohSeries, SeriesError> {
        if c.nvars != self.nvars() {
            return Err(SeriesError::VariableMismatch);
        }
        if *c.spec != *self.spec {
            return Err(SeriesError::SpecMismatch);
        }
        if c.terms.contains_key(&FracVec::zeros(c.nvars)) {
            return Err(SeriesError::ConstantTermInExp);
        }
        let step = c
            .terms
            .keys()
            .map(|e| e.total())
            .min()
            .unwrap_or_else(Rat::one);
        if !step.is_positive() {
            return Err(SeriesError::ConstantTermInExp);
        }
        let max_total = self.window.hi.total();
        let nmax = (&max_total / &step)
            .floor()
            .to_integer()
            .to_u64()
            .unwrap_or(0);
        let mut out = self.clone();
        let mut pw = c.clone(); // c^n
        let mut fact = Rat::one();
        for n in 1..=nmax {
            if n > 1 {
                pw = pw.mul(c)?;
                fact *= rint(n as i64);
            }
            if pw.terms.is_empty() {
                break;
            }
            // out += self · c^n z^{n·zpow} / n!
            let zshift = zpow * n as i64;
            let mut contrib = CohSeries::new(
                self.spec.clone(),
                self.vars.clone(),
                self.dens.clone(),
                self.prefactor.clone(),
                self.window.clone(),
                self.z_floor,
            )?;
            for (d, zser) in &self.terms {
                for (e, v) in &pw.terms {
                    let nd = d.add(e);
                    if !contrib.window.contains(&nd) {
                        continue;
                    }
                    let scaled = v.scale_rat(&(Rat::one() / &fact));
                    let mut piece = zser.mul_elem(&scaled)?.shift_z(zshift);
                    piece.truncate_below(self.z_floor);
                    contrib.insert_zser(nd, piece)?;
                }
            }
            out = out.add(&contrib)?;
        }
        out.prune();
        Ok(out)
    }

    pub fn to_doc(&self) -> CohSeriesDoc {
        let mut terms = Vec::new();
        for (d, z) in &self.terms {
            for (k, v) in z.iter() {
                terms.push(CohTermDoc {
                    exponent: d.clone(),
                    zpow: *k,
                    coeffs: v.coeffs().iter().map(|c| c.to_string()).collect(),
                });
            }
        }
        CohSeriesDoc {
            variables: self.vars.clone(),
            denominators: self.dens.clone(),
            prefactor: self
                .prefactor
                .iter()
                .map(|p| p.coeffs().iter().map(|c| c.to_string()).collect())
                .collect(),
            z_floor: self.z_floor,
            window: self.window.clone(),
            terms,
        }
    }

    pub fn from_doc(
        spec: Arc<AlgebraSpec>,
        doc: &CohSeriesDoc,
    ) -> Result<CohSeries, SeriesError> {
        let parse_elem = |strings: &[String]| -> Result<AlgElem, SeriesError> {
            let mut coeffs = Vec::with_capacity(strings.len());
            for s in strings {
                coeffs.push(s.parse::<RatFuncL>().map_err(|_| SeriesError::Parse(s.clone()))?);
            }
            AlgElem::new(spec.clone(), coeffs).map_err(SeriesError::from)
        };
        let prefactor: Result<Vec<AlgElem>, _> =
            doc.prefactor.iter().map(|p| parse_elem(p)).collect();
        let mut out = CohSeries::new(
            spec.clone(),
            doc.variables.clone(),
            doc.denominators.clone(),
            prefactor?,
            doc.window.clone(),
            doc.z_floor,
        )?;
        for t in &doc.terms {
            out.insert_add(t.exponent.clone(), t.zpow, &parse_elem(&t.coeffs)?)?;
        }
        Ok(out)
    }
}

fn comp_leading_total(comp: &MapComp) -> Result<Rat, SeriesError> {
    match comp {
        MapComp::MonExp { mono, .. } => Ok(mono.total()),
        MapComp::Plain { series } => {
            series.min_order().ok_or(SeriesError::NonInvertibleMap)
        }
    }
}

fn derive_dens(n_new: usize, m: &SeriesMap, old_dens: &[i64]) -> Vec<i64> {
    use num_integer::Integer;
    let mut dens = vec![1i64; n_new];
    for (i, comp) in m.comps().iter().enumerate() {
        let old = old_dens.get(i).copied().unwrap_or(1);
        match comp {
            MapComp::MonExp { mono, corr } => {
                for (j, e) in mono.0.iter().enumerate() {
                    if !e.is_zero() {
                        let d = e.denom().to_i64().unwrap_or(1).abs().max(1) * old;
                        dens[j] = dens[j].lcm(&d);
                    }
                }
                for (e, _) in corr.terms() {
                    for (j, x) in e.0.iter().enumerate() {
                        if !x.is_zero() {
                            dens[j] = dens[j].lcm(&x.denom().to_i64().unwrap_or(1).abs().max(1));
                        }
                    }
                }
            }
            MapComp::Plain { series } => {
                for (e, _) in series.terms() {
                    for (j, x) in e.0.iter().enumerate() {
                        if !x.is_zero() {
                            dens[j] = dens[j].lcm(&x.denom().to_i64().unwrap_or(1).abs().max(1));
                        }
                    }
                }
            }
        }
    }
    dens
}

/// Series with algebra-element coefficients (no z-dependence); the exponent
/// argument of `mul_exp_correction`.
#[derive(Clone, PartialEq)]
pub struct ClassSeries {
    spec: Arc<AlgebraSpec>,
    nvars: usize,
    terms: BTreeMap<FracVec, AlgElem>,
}

impl ClassSeries {
    pub fn zero(spec: Arc<AlgebraSpec>, nvars: usize) -> Self {
        ClassSeries { spec, nvars, terms: BTreeMap::new() }
    }

    pub fn spec(&self) -> &Arc<AlgebraSpec> {
        &self.spec
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn terms(&self) -> impl Iterator<Item = (&FracVec, &AlgElem)> {
        self.terms.iter()
    }

    pub fn insert_add(&mut self, e: FracVec, v: &AlgElem) -> Result<(), SeriesError> {
        if v.is_zero() {
            return Ok(());
        }
        match self.terms.get_mut(&e) {
            Some(cur) => {
                let sum = cur.add(v)?;
                if sum.is_zero() {
                    self.terms.remove(&e);
                } else {
                    *cur = sum;
                }
            }
            None => {
                self.terms.insert(e, v.clone());
            }
        }
        Ok(())
    }

    /// Build from a scalar series times a fixed class.
    pub fn from_scalar_series(
        s: &crate::map::SSer,
        class: &AlgElem,
    ) -> Result<Self, SeriesError> {
        let mut out = ClassSeries::zero(class.spec().clone(), s.nvars());
        for (e, c) in s.terms() {
            out.insert_add(e.clone(), &class.scale(c))?;
        }
        Ok(out)
    }

    pub fn mul(&self, other: &ClassSeries) -> Result<ClassSeries, SeriesError> {
        let mut out = ClassSeries::zero(self.spec.clone(), self.nvars);
        for (ea, va) in &self.terms {
            for (eb, vb) in &other.terms {
                out.insert_add(ea.add(eb), &va.mul(vb)?)?;
            }
        }
        Ok(out)
    }

    pub fn add(&self, other: &ClassSeries) -> Result<ClassSeries, SeriesError> {
        let mut out = self.clone();
        for (e, v) in &other.terms {
            out.insert_add(e.clone(), v)?;
        }
        Ok(out)
    }

    pub fn scale(&self, c: &RatFuncL) -> ClassSeries {
        if c.is_zero() {
            return ClassSeries::zero(self.spec.clone(), self.nvars);
        }
        ClassSeries {
            spec: self.spec.clone(),
            nvars: self.nvars,
            terms: self.terms.iter().map(|(e, v)| (e.clone(), v.scale(c))).collect(),
        }
    }
}

/// JSON document form of a CohSeries.
#[derive(Clone, Serialize, Deserialize)]
pub struct CohSeriesDoc {
    pub variables: Vec<String>,
    pub denominators: Vec<i64>,
    pub prefactor: Vec<Vec<String>>,
    pub z_floor: i64,
    pub window: Window,
    pub terms: Vec<CohTermDoc>,
}

#[derive(Clone, Serialize, Deserialize)]
pub struct CohTermDoc {
    pub exponent: FracVec,
    pub zpow: i64,
    pub coeffs: Vec<String>,
}

impl std::fmt::Debug for CohSeries {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        writeln!(f, "CohSeries in {:?} over {}", self.vars, self.spec.name())?;
        for (d, z) in &self.terms {
            writeln!(f, "  x^{d:?}: {z:?}")?;
        }
        Ok(())
    }
}
