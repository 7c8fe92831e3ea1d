//! Scalar truncated multivariate series and coordinate-change maps
//! (monomial-times-exponential and additive power-series components),
//! with composition and formal inversion.

use std::collections::BTreeMap;

use core_algebra::rat::{rint, Rat, RatFuncL};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::frac::FracVec;
use crate::SeriesError;

/// Scalar multivariate series with RatFuncL coefficients, truncated at a
/// total exponent order.
#[derive(Clone, PartialEq, Debug)]
pub struct SSer {
    nvars: usize,
    order: Rat,
    terms: BTreeMap<FracVec, RatFuncL>,
}

impl SSer {
    pub fn zero(nvars: usize, order: Rat) -> Self {
        SSer { nvars, order, terms: BTreeMap::new() }
    }

    pub fn constant(nvars: usize, order: Rat, c: RatFuncL) -> Self {
        let mut s = SSer::zero(nvars, order);
        s.insert_add(FracVec::zeros(nvars), &c);
        s
    }

    pub fn one(nvars: usize, order: Rat) -> Self {
        SSer::constant(nvars, order, RatFuncL::one())
    }

    pub fn var(nvars: usize, i: usize, order: Rat) -> Self {
        let mut s = SSer::zero(nvars, order);
        s.insert_add(FracVec::unit(nvars, i), &RatFuncL::one());
        s
    }

    pub fn monomial(e: FracVec, c: RatFuncL, order: Rat) -> Self {
        let mut s = SSer::zero(e.len(), order);
        s.insert_add(e, &c);
        s
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn order(&self) -> &Rat {
        &self.order
    }

    pub fn terms(&self) -> impl Iterator<Item = (&FracVec, &RatFuncL)> {
        self.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, e: &FracVec) -> RatFuncL {
        self.terms.get(e).cloned().unwrap_or_else(RatFuncL::zero)
    }

    pub fn constant_term(&self) -> RatFuncL {
        self.coeff(&FracVec::zeros(self.nvars))
    }

    /// Smallest total order of a nonzero term, if any.
    pub fn min_order(&self) -> Option<Rat> {
        self.terms.keys().map(|e| e.total()).min()
    }

    pub fn insert_add(&mut self, e: FracVec, c: &RatFuncL) {
        if c.is_zero() || e.total() > self.order {
            return;
        }
        let cur = self.terms.entry(e.clone()).or_insert_with(RatFuncL::zero);
        let sum = &*cur + c;
        if sum.is_zero() {
            self.terms.remove(&e);
        } else {
            *cur = sum;
        }
    }

    pub fn truncate(&self, order: Rat) -> SSer {
        let mut out = SSer::zero(self.nvars, order);
        for (e, c) in &self.terms {
            out.insert_add(e.clone(), c);
        }
        out
    }

    pub fn add(&self, other: &SSer) -> SSer {
        let order = self.order.clone().min(other.order.clone());
        let mut out = self.truncate(order);
        for (e, c) in &other.terms {
            out.insert_add(e.clone(), c);
        }
        out
    }

    pub fn neg(&self) -> SSer {
        SSer {
            nvars: self.nvars,
            order: self.order.clone(),
            terms: self.terms.iter().map(|(e, c)| (e.clone(), -c)).collect(),
        }
    }

    pub fn sub(&self, other: &SSer) -> SSer {
        self.add(&other.neg())
    }

    pub fn scale(&self, c: &RatFuncL) -> SSer {
        if c.is_zero() {
            return SSer::zero(self.nvars, self.order.clone());
        }
        SSer {
            nvars: self.nvars,
            order: self.order.clone(),
            terms: self.terms.iter().map(|(e, v)| (e.clone(), v * c)).collect(),
        }
    }

    pub fn scale_rat(&self, c: &Rat) -> SSer {
        self.scale(&RatFuncL::constant(c.clone()))
    }

    pub fn mul(&self, other: &SSer) -> SSer {
        let order = self.order.clone().min(other.order.clone());
        let mut out = SSer::zero(self.nvars, order);
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                out.insert_add(ea.add(eb), &(ca * cb));
            }
        }
        out
    }

    /// Multiply by the monomial x^e (exponents may be fractional/negative).
    pub fn mul_monomial(&self, e: &FracVec) -> SSer {
        let mut out = SSer::zero(self.nvars, &self.order + e.total());
        for (d, c) in &self.terms {
            out.insert_add(d.add(e), c);
        }
        out
    }

    pub fn pow_int(&self, k: u64) -> SSer {
        let mut out = SSer::one(self.nvars, self.order.clone());
        for _ in 0..k {
            out = out.mul(self);
        }
        out
    }

    /// exp of a series with zero constant term.
    pub fn exp(&self) -> Result<SSer, SeriesError> {
        if !self.constant_term().is_zero() {
            return Err(SeriesError::ConstantTermInExp);
        }
        let step = match self.min_order() {
            Some(s) if s.is_positive() => s,
            Some(_) => return Err(SeriesError::ConstantTermInExp),
            None => return Ok(SSer::one(self.nvars, self.order.clone())),
        };
        let nmax = (&self.order / &step).floor().to_integer().to_u64().unwrap_or(0);
        let mut out = SSer::one(self.nvars, self.order.clone());
        let mut pw = SSer::one(self.nvars, self.order.clone());
        let mut fact = Rat::one();
        for n in 1..=nmax {
            pw = pw.mul(self);
            if pw.is_zero() {
                break;
            }
            fact *= rint(n as i64);
            out = out.add(&pw.scale_rat(&(Rat::one() / &fact)));
        }
        Ok(out)
    }

    /// log of a series with constant term 1.
    pub fn log(&self) -> Result<SSer, SeriesError> {
        if !self.constant_term().is_one() {
            return Err(SeriesError::NonUnitLeadingTerm);
        }
        let u = self.sub(&SSer::one(self.nvars, self.order.clone()));
        let step = match u.min_order() {
            Some(s) if s.is_positive() => s,
            Some(_) => return Err(SeriesError::NonUnitLeadingTerm),
            None => return Ok(SSer::zero(self.nvars, self.order.clone())),
        };
        let nmax = (&self.order / &step).floor().to_integer().to_u64().unwrap_or(0);
        let mut out = SSer::zero(self.nvars, self.order.clone());
        let mut pw = SSer::one(self.nvars, self.order.clone());
        for n in 1..=nmax {
            pw = pw.mul(&u);
            if pw.is_zero() {
                break;
            }
            let sign = if n % 2 == 1 { rint(1) } else { rint(-1) };
            out = out.add(&pw.scale_rat(&(sign / rint(n as i64))));
        }
        Ok(out)
    }
}

/// One component of a coordinate change.
#[derive(Clone, PartialEq, Debug)]
pub enum MapComp {
    /// q = x^{mono} · exp(corr(x)), corr with zero constant term.
    MonExp { mono: FracVec, corr: SSer },
    /// q = x_lead + (higher-order series); stored as the full series.
    Plain { series: SSer },
}

impl MapComp {
    fn nvars(&self) -> usize {
        match self {
            MapComp::MonExp { mono, .. } => mono.len(),
            MapComp::Plain { series } => series.nvars(),
        }
    }

    /// Expand the component as a plain scalar series (exponents may be
    /// fractional); correct up to the stored correction order plus the
    /// monomial offset.
    pub fn as_plain(&self) -> Result<SSer, SeriesError> {
        match self {
            MapComp::MonExp { mono, corr } => Ok(corr.exp()?.mul_monomial(mono)),
            MapComp::Plain { series } => Ok(series.clone()),
        }
    }
}

/// A coordinate change: one expression per output coordinate, written in
/// `nvars_in` input variables.
#[derive(Clone, PartialEq, Debug)]
pub struct SeriesMap {
    nvars_in: usize,
    comps: Vec<MapComp>,
}

impl SeriesMap {
    pub fn new(nvars_in: usize, comps: Vec<MapComp>) -> Result<Self, SeriesError> {
        for c in &comps {
            if c.nvars() != nvars_in {
                return Err(SeriesError::VariableMismatch);
            }
        }
        Ok(SeriesMap { nvars_in, comps })
    }

    pub fn identity(nvars: usize, order: Rat) -> Self {
        let comps = (0..nvars)
            .map(|i| MapComp::MonExp {
                mono: FracVec::unit(nvars, i),
                corr: SSer::zero(nvars, order.clone()),
            })
            .collect();
        SeriesMap { nvars_in: nvars, comps }
    }

    pub fn nvars_in(&self) -> usize {
        self.nvars_in
    }

    pub fn nvars_out(&self) -> usize {
        self.comps.len()
    }

    pub fn comps(&self) -> &[MapComp] {
        &self.comps
    }

    pub fn comp(&self, i: usize) -> &MapComp {
        &self.comps[i]
    }

    /// Evaluate Π_i comp_i^{e_i} as (monomial over input vars, unit-constant
    /// series factor). Plain components require nonnegative integer powers.
    pub fn power_product(&self, e: &FracVec) -> Result<(FracVec, SSer), SeriesError> {
        if e.len() != self.comps.len() {
            return Err(SeriesError::VariableMismatch);
        }
        let order = self
            .comps
            .iter()
            .filter_map(|c| match c {
                MapComp::MonExp { corr, .. } => Some(corr.order().clone()),
                MapComp::Plain { series } => Some(series.order().clone()),
            })
            .min()
            .unwrap_or_else(Rat::zero);
        let mut mono = FracVec::zeros(self.nvars_in);
        let mut corr_sum = SSer::zero(self.nvars_in, order.clone());
        let mut plain_factor = SSer::one(self.nvars_in, order.clone());
        for (c, ei) in self.comps.iter().zip(&e.0) {
            if ei.is_zero() {
                continue;
            }
            match c {
                MapComp::MonExp { mono: m, corr } => {
                    mono = mono.add(&m.scale(ei));
                    corr_sum = corr_sum.add(&corr.scale_rat(ei));
                }
                MapComp::Plain { series } => {
                    if !ei.is_integer() || ei.is_negative() {
                        return Err(SeriesError::FractionalPowerOfAdditiveSeries);
                    }
                    let k = ei.to_integer().to_u64().ok_or(SeriesError::Overflow)?;
                    plain_factor = plain_factor.mul(&series.pow_int(k));
                }
            }
        }
        Ok((mono, corr_sum.exp()?.mul(&plain_factor)))
    }

    /// Compose a scalar series with this map: s(m(q)) as a series in the
    /// map's input variables.
    pub fn compose_scalar(&self, s: &SSer) -> Result<SSer, SeriesError> {
        if s.nvars() != self.comps.len() {
            return Err(SeriesError::VariableMismatch);
        }
        let order = self
            .comps
            .iter()
            .map(|c| match c {
                MapComp::MonExp { corr, .. } => corr.order().clone(),
                MapComp::Plain { series } => series.order().clone(),
            })
            .min()
            .unwrap_or_else(|| s.order().clone());
        let mut out = SSer::zero(self.nvars_in, order);
        for (e, c) in s.terms() {
            let (mono, factor) = self.power_product(e)?;
            for (fe, fc) in factor.terms() {
                out.insert_add(mono.add(fe), &(fc * c));
            }
        }
        Ok(out)
    }

    /// Composition: self ∘ inner, i.e. y = self(q) with q = inner(r), giving
    /// y as a map in inner's input variables.
    pub fn compose(&self, inner: &SeriesMap) -> Result<SeriesMap, SeriesError> {
        if inner.nvars_out() != self.nvars_in {
            return Err(SeriesError::VariableMismatch);
        }
        let mut comps = Vec::with_capacity(self.comps.len());
        for c in &self.comps {
            match c {
                MapComp::MonExp { mono, corr } => {
                    let (new_mono, unit_factor) = inner.power_product(mono)?;
                    let corr_inner = inner.compose_scalar(corr)?;
                    let new_corr = unit_factor.log()?.add(&corr_inner);
                    comps.push(MapComp::MonExp { mono: new_mono, corr: new_corr });
                }
                MapComp::Plain { series } => {
                    comps.push(MapComp::Plain {
                        series: inner.compose_scalar(series)?,
                    });
                }
            }
        }
        SeriesMap::new(inner.nvars_in, comps)
    }

    /// Exact identity check up to the given total order.
    pub fn is_identity_to_order(&self, order: &Rat) -> bool {
        if self.nvars_in != self.comps.len() {
            return false;
        }
        for (i, c) in self.comps.iter().enumerate() {
            let plain = match c.as_plain() {
                Ok(p) => p.truncate(order.clone()),
                Err(_) => return false,
            };
            let id = SSer::var(self.nvars_in, i, order.clone());
            if plain != id {
                return false;
            }
        }
        true
    }
}

/// Formal inverse of a square coordinate change, exact to total order
/// `order`. Multiplicative (MonExp) components must have their monomials
/// supported on variables that are not leading variables of Plain
/// components, and the resulting exponent matrix must be invertible.
pub fn invert_map(m: &SeriesMap, order: &Rat) -> Result<SeriesMap, SeriesError> {
    let n = m.nvars_in();
    if m.nvars_out() != n {
        return Err(SeriesError::NonInvertibleMap);
    }

    // Classify variables: additive = leading variable of a Plain component.
    let mut additive_var_of_comp: Vec<Option<usize>> = vec![None; n];
    let mut is_additive = vec![false; n];
    for (i, c) in m.comps().iter().enumerate() {
        if let MapComp::Plain { series } = c {
            // Leading term must be a single variable with coefficient 1.
            let lead = series
                .terms()
                .filter(|(e, _)| e.0.iter().filter(|x| !x.is_zero()).count() == 1)
                .find(|(e, _)| e.0.iter().any(|x| x.is_one()));
            let (e, c0) = lead.ok_or(SeriesError::NonInvertibleMap)?;
            if !c0.is_one() {
                return Err(SeriesError::NonInvertibleMap);
            }
            let v = e.0.iter().position(|x| x.is_one()).unwrap();
            if is_additive[v] {
                return Err(SeriesError::NonInvertibleMap);
            }
            is_additive[v] = true;
            additive_var_of_comp[i] = Some(v);
        }
    }

    // Multiplicative block: exponent matrix over the multiplicative vars.
    let mult_vars: Vec<usize> = (0..n).filter(|v| !is_additive[*v]).collect();
    let mult_comps: Vec<usize> = m
        .comps()
        .iter()
        .enumerate()
        .filter_map(|(i, c)| matches!(c, MapComp::MonExp { .. }).then_some(i))
        .collect();
    if mult_vars.len() != mult_comps.len() {
        return Err(SeriesError::NonInvertibleMap);
    }
    let k = mult_vars.len();
    let mut mat = vec![vec![Rat::zero(); k]; k];
    for (r, &ci) in mult_comps.iter().enumerate() {
        if let MapComp::MonExp { mono, .. } = m.comp(ci) {
            for (col, &v) in mult_vars.iter().enumerate() {
                mat[r][col] = mono.0[v].clone();
            }
            for (v, e) in mono.0.iter().enumerate() {
                if is_additive[v] && !e.is_zero() {
                    return Err(SeriesError::NonInvertibleMap);
                }
            }
        }
    }
    let minv = invert_rat_matrix(&mat).ok_or(SeriesError::NonInvertibleMap)?;

    // Iteration bound: each pass gains at least the smallest lattice step.
    let step = smallest_step(m, &minv);
    let iters = (order / &step).ceil().to_integer().to_u64().unwrap_or(1).min(400) + 2;

    // Initial guess: leading parts only.
    let make_candidate = |corrs: &[SSer], adds: &[SSer]| -> Result<SeriesMap, SeriesError> {
        let mut comps: Vec<Option<MapComp>> = vec![None; n];
        for (col, &v) in mult_vars.iter().enumerate() {
            // y_v = Π_r q_{mult_comps[r]}^{minv[col][r]} · exp(corrs[col])
            let mut mono = FracVec::zeros(n);
            for (r, &ci) in mult_comps.iter().enumerate() {
                mono.0[ci] = minv[col][r].clone();
            }
            comps[v] = Some(MapComp::MonExp { mono, corr: corrs[col].clone() });
        }
        let mut ai = 0;
        for (i, c) in m.comps().iter().enumerate() {
            if matches!(c, MapComp::Plain { .. }) {
                let v = additive_var_of_comp[i].unwrap();
                comps[v] = Some(MapComp::Plain { series: adds[ai].clone() });
                ai += 1;
            }
        }
        SeriesMap::new(n, comps.into_iter().map(|c| c.unwrap()).collect())
    };

    let zero_corrs: Vec<SSer> = (0..k).map(|_| SSer::zero(n, order.clone())).collect();
    let plain_inits: Vec<SSer> = m
        .comps()
        .iter()
        .enumerate()
        .filter(|(_, c)| matches!(c, MapComp::Plain { .. }))
        .map(|(i, _)| SSer::var(n, i, order.clone()))
        .collect();
    let mut cand = make_candidate(&zero_corrs, &plain_inits)?;

    for _ in 0..iters {
        // New multiplicative corrections: corr'_col = −Σ_r minv[col][r]·(corr_r ∘ cand).
        let mut new_corrs = Vec::with_capacity(k);
        for col in 0..k {
            let mut acc = SSer::zero(n, order.clone());
            for (r, &ci) in mult_comps.iter().enumerate() {
                if let MapComp::MonExp { corr, .. } = m.comp(ci) {
                    let composed = cand.compose_scalar(&corr.truncate(order.clone()))?;
                    acc = acc.add(&composed.scale_rat(&minv[col][r]));
                }
            }
            new_corrs.push(acc.neg());
        }
        // New additive components: y_{σ(i)} = q_i − G_i(cand) where
        // series_i = y_{σ(i)} + G_i.
        let mut new_adds = Vec::new();
        for (i, c) in m.comps().iter().enumerate() {
            if let MapComp::Plain { series } = c {
                let v = additive_var_of_comp[i].unwrap();
                let lead = SSer::var(n, v, series.order().clone());
                let g = series.sub(&lead);
                let composed = cand.compose_scalar(&g.truncate(order.clone()))?;
                new_adds.push(SSer::var(n, i, order.clone()).sub(&composed));
            }
        }
        let next = make_candidate(&new_corrs, &new_adds)?;
        if next == cand {
            break;
        }
        cand = next;
    }
    Ok(cand)
}

fn smallest_step(m: &SeriesMap, minv: &[Vec<Rat>]) -> Rat {
    let mut den: i64 = 1;
    let collect = |den: &mut i64, r: &Rat| {
        if let Some(d) = r.denom().to_i64() {
            *den = (*den).lcm(&d);
        }
    };
    for c in m.comps() {
        let s = match c {
            MapComp::MonExp { mono, corr } => {
                for e in &mono.0 {
                    collect(&mut den, e);
                }
                corr
            }
            MapComp::Plain { series } => series,
        };
        for (e, _) in s.terms() {
            for x in &e.0 {
                collect(&mut den, x);
            }
        }
    }
    for row in minv {
        for e in row {
            collect(&mut den, e);
        }
    }
    Rat::one() / rint(den.max(1))
}

/// Gaussian elimination over the rationals.
pub fn invert_rat_matrix(m: &[Vec<Rat>]) -> Option<Vec<Vec<Rat>>> {
    let n = m.len();
    let mut a: Vec<Vec<Rat>> = m.to_vec();
    let mut inv: Vec<Vec<Rat>> = (0..n)
        .map(|i| (0..n).map(|j| if i == j { Rat::one() } else { Rat::zero() }).collect())
        .collect();
    for col in 0..n {
        let pivot = (col..n).find(|&r| !a[r][col].is_zero())?;
        a.swap(col, pivot);
        inv.swap(col, pivot);
        let p = a[col][col].clone();
        for j in 0..n {
            a[col][j] /= &p;
            inv[col][j] /= &p;
        }
        for r in 0..n {
            if r != col && !a[r][col].is_zero() {
                let f = a[r][col].clone();
                for j in 0..n {
                    let t = &a[col][j] * &f;
                    a[r][j] -= t;
                    let t = &inv[col][j] * &f;
                    inv[r][j] -= t;
                }
            }
        }
    }
    Some(inv)
}
