//! Finite-dimensional graded Frobenius algebras over the rational-function
//! field in the equivariant parameter, given by explicit structure constants.

use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::rat::{Rat, RatFuncL};
use crate::CoreError;

/// One point of the finite spectrum of the algebra: an orthogonal idempotent
/// projecting onto a local factor, together with the character (scalar
/// eigenvalue, a rational function of the equivariant parameter) that each
/// basis element acts by on that factor.
#[derive(Clone, Serialize, Deserialize)]
pub struct SpectralPoint {
    /// Coordinates of the idempotent `e` over the basis.
    pub idempotent: Vec<RatFuncL>,
    /// `character[j]` is the scalar `χ(Φ_j)` with `Φ_j · e = χ(Φ_j) e + (nilpotent)`.
    pub character: Vec<RatFuncL>,
    /// Smallest `k` such that every product of `k` elements of the form
    /// `(Φ_j − χ(Φ_j))·e` vanishes; the Taylor truncation order on this factor.
    pub nilpotency: usize,
}

/// Immutable data pack describing one algebra: basis labels, (even) grading,
/// structure constants, Poincaré-type pairing, and the derived dual basis.
///
/// Basis element 0 is always the unit.
#[derive(Clone)]
pub struct AlgebraSpec {
    name: String,
    labels: Vec<String>,
    degrees: Vec<i64>,
    /// `mul[i][j][k]` is the coefficient of basis element `k` in `Φ_i · Φ_j`.
    mul: Vec<Vec<Vec<RatFuncL>>>,
    /// `pairing[i][j] = (Φ_i, Φ_j)`.
    pairing: Vec<Vec<RatFuncL>>,
    /// `dual[j]` is the coordinate vector of the dual element `Φ^j`,
    /// satisfying `(Φ_i, Φ^j) = δ_i^j`.
    dual: Vec<Vec<RatFuncL>>,
    /// Complete orthogonal decomposition into local factors, when available.
    /// `None` means no functional calculus: analytic functions of algebra
    /// elements cannot be evaluated.
    spectrum: Option<Vec<SpectralPoint>>,
}

/// Serializable mirror of [`AlgebraSpec`] with coefficients as text.
#[derive(Serialize, Deserialize)]
pub struct AlgebraSpecDoc {
    pub name: String,
    pub labels: Vec<String>,
    pub degrees: Vec<i64>,
    pub mul: Vec<Vec<Vec<RatFuncL>>>,
    pub pairing: Vec<Vec<RatFuncL>>,
    pub dual: Vec<Vec<RatFuncL>>,
    pub spectrum: Option<Vec<SpectralPoint>>,
}

impl AlgebraSpec {
    /// Build and validate an algebra from its raw data.
    ///
    /// Checks: unit at index 0, commutativity, associativity, symmetric
    /// nondegenerate pairing, Frobenius compatibility `(ab, c) = (a, bc)`,
    /// and degree additivity on nonzero products. Computes the dual basis
    /// and the nilpotency order.
    pub fn new(
        name: &str,
        labels: Vec<&str>,
        degrees: Vec<i64>,
        mul: Vec<Vec<Vec<RatFuncL>>>,
        pairing: Vec<Vec<RatFuncL>>,
    ) -> Result<Arc<Self>, CoreError> {
        Self::new_with_spectrum(name, labels, degrees, mul, pairing, None)
    }

    /// Like [`AlgebraSpec::new`], with an explicit spectral decomposition
    /// into local factors for algebras whose positive-degree part is not
    /// nilpotent but which still need a functional calculus. Each entry is
    /// `(idempotent coordinates, character values on the basis)`.
    ///
    /// When `spectrum` is `None`, the trivial decomposition (a single factor
    /// at the origin) is used if the positive-degree part is nilpotent;
    /// otherwise the algebra is still constructed but analytic functions of
    /// its elements cannot be evaluated.
    pub fn new_with_spectrum(
        name: &str,
        labels: Vec<&str>,
        degrees: Vec<i64>,
        mul: Vec<Vec<Vec<RatFuncL>>>,
        pairing: Vec<Vec<RatFuncL>>,
        spectrum: Option<Vec<(Vec<RatFuncL>, Vec<RatFuncL>)>>,
    ) -> Result<Arc<Self>, CoreError> {
        let n = labels.len();
        let bad = |msg: &str| CoreError::InvalidAlgebra {
            name: name.to_string(),
            reason: msg.to_string(),
        };
        if degrees.len() != n || mul.len() != n || pairing.len() != n {
            return Err(bad("dimension mismatch in algebra data"));
        }
        for row in &mul {
            if row.len() != n || row.iter().any(|v| v.len() != n) {
                return Err(bad("structure-constant tensor has wrong shape"));
            }
        }
        for row in &pairing {
            if row.len() != n {
                return Err(bad("pairing matrix has wrong shape"));
            }
        }
        if degrees[0] != 0 {
            return Err(bad("unit must have degree 0"));
        }
        // Unit checks: Φ_0 · Φ_j = Φ_j.
        for j in 0..n {
            for k in 0..n {
                let expected = if j == k {
                    RatFuncL::one()
                } else {
                    RatFuncL::zero()
                };
                if mul[0][j][k] != expected {
                    return Err(bad("basis element 0 is not a unit"));
                }
            }
        }
        // Commutativity.
        for i in 0..n {
            for j in 0..n {
                if mul[i][j] != mul[j][i] {
                    return Err(bad("product is not commutative"));
                }
            }
        }
        // Associativity on all basis triples: (Φ_i Φ_j) Φ_k = Φ_i (Φ_j Φ_k).
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    for m in 0..n {
                        let mut lhs = RatFuncL::zero();
                        let mut rhs = RatFuncL::zero();
                        for s in 0..n {
                            lhs += &(&mul[i][j][s] * &mul[s][k][m]);
                            rhs += &(&mul[j][k][s] * &mul[i][s][m]);
                        }
                        if lhs != rhs {
                            return Err(bad("product is not associative"));
                        }
                    }
                }
            }
        }
        // Pairing symmetry.
        for i in 0..n {
            for j in 0..n {
                if pairing[i][j] != pairing[j][i] {
                    return Err(bad("pairing is not symmetric"));
                }
            }
        }
        // Frobenius compatibility: (Φ_i Φ_j, Φ_k) = (Φ_i, Φ_j Φ_k).
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    let mut lhs = RatFuncL::zero();
                    let mut rhs = RatFuncL::zero();
                    for s in 0..n {
                        lhs += &(&mul[i][j][s] * &pairing[s][k]);
                        rhs += &(&mul[j][k][s] * &pairing[i][s]);
                    }
                    if lhs != rhs {
                        return Err(bad("pairing is not Frobenius-compatible with the product"));
                    }
                }
            }
        }
        // Degree additivity: Φ_iΦ_j nonzero in component k forces the
        // structure constant to be homogeneous of l-degree
        // (deg_i + deg_j - deg_k)/2.
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    let c = &mul[i][j][k];
                    if c.is_zero() {
                        continue;
                    }
                    let want = degrees[i] + degrees[j] - degrees[k];
                    if want < 0 || want % 2 != 0 {
                        return Err(bad("product violates the grading"));
                    }
                    match c.monomial_degree() {
                        Some(d) if 2 * d == want => {}
                        _ => return Err(bad("structure constant has wrong l-degree")),
                    }
                }
            }
        }
        // Dual basis: solve G · D^T = I, i.e. D = (G^{-1})^T = G^{-1} by symmetry.
        let dual = invert_matrix(&pairing)
            .ok_or_else(|| bad("pairing matrix is degenerate"))?;

        let vec_mul = |a: &[RatFuncL], b: &[RatFuncL]| -> Vec<RatFuncL> {
            let mut out = vec![RatFuncL::zero(); n];
            for i in 0..n {
                if a[i].is_zero() {
                    continue;
                }
                for j in 0..n {
                    if b[j].is_zero() {
                        continue;
                    }
                    let p = &a[i] * &b[j];
                    for k in 0..n {
                        let c = &mul[i][j][k];
                        if !c.is_zero() {
                            out[k] += &(&p * c);
                        }
                    }
                }
            }
            out
        };
        // Nilpotency order of a set of generators: smallest K such that every
        // product of K generators vanishes, computed on exact subspace spans;
        // None if the generators are not jointly nilpotent.
        let nil_order = |gens: &[Vec<RatFuncL>]| -> Option<usize> {
            let mut span = Span::new(n);
            for g in gens {
                span.insert(g.clone());
            }
            let mut k = 1usize;
            while !span.is_empty() {
                if k > n + 1 {
                    return None;
                }
                let mut next = Span::new(n);
                for w in &span.rows.clone() {
                    for g in gens {
                        next.insert(vec_mul(g, w));
                    }
                }
                span = next;
                k += 1;
            }
            Some(k)
        };

        let spectrum = match spectrum {
            None => {
                // Trivial decomposition: one factor at the origin, generated
                // by the positive-degree basis elements.
                let gens: Vec<Vec<RatFuncL>> = (0..n)
                    .filter(|&i| degrees[i] > 0)
                    .map(|i| {
                        let mut v = vec![RatFuncL::zero(); n];
                        v[i] = RatFuncL::one();
                        v
                    })
                    .collect();
                nil_order(&gens).map(|nilpotency| {
                    let mut idempotent = vec![RatFuncL::zero(); n];
                    idempotent[0] = RatFuncL::one();
                    let mut character = vec![RatFuncL::zero(); n];
                    character[0] = RatFuncL::one();
                    vec![SpectralPoint {
                        idempotent,
                        character,
                        nilpotency,
                    }]
                })
            }
            Some(points) => {
                // Validate: characters are one-dimensional representations,
                // idempotents are complete and orthogonal, and the reduced
                // generators on each factor are nilpotent.
                let mut total = vec![RatFuncL::zero(); n];
                for (e, chi) in &points {
                    if e.len() != n || chi.len() != n {
                        return Err(bad("spectral data has wrong shape"));
                    }
                    if !chi[0].is_one() {
                        return Err(bad("character does not send the unit to 1"));
                    }
                    for j in 0..n {
                        for k in 0..n {
                            let mut prod_chi = RatFuncL::zero();
                            for (m, c) in mul[j][k].iter().enumerate() {
                                if !c.is_zero() {
                                    prod_chi += &(c * &chi[m]);
                                }
                            }
                            if prod_chi != &chi[j] * &chi[k] {
                                return Err(bad("character is not multiplicative"));
                            }
                        }
                    }
                    for (t, c) in total.iter_mut().zip(e) {
                        *t += c;
                    }
                }
                for (i, t) in total.iter().enumerate() {
                    let want = if i == 0 {
                        RatFuncL::one()
                    } else {
                        RatFuncL::zero()
                    };
                    if *t != want {
                        return Err(bad("idempotents do not sum to the unit"));
                    }
                }
                for (a, (ea, _)) in points.iter().enumerate() {
                    for (b, (eb, _)) in points.iter().enumerate() {
                        let prod = vec_mul(ea, eb);
                        let want = if a == b { ea.clone() } else { vec![RatFuncL::zero(); n] };
                        if prod != want {
                            return Err(bad("idempotents are not orthogonal idempotents"));
                        }
                    }
                }
                let mut out = Vec::with_capacity(points.len());
                for (e, chi) in points {
                    // Generators of the maximal ideal of this factor:
                    // (Φ_j − χ(Φ_j))·e for every basis element.
                    let mut gens = Vec::new();
                    for j in 0..n {
                        let mut v = vec![RatFuncL::zero(); n];
                        v[j] = RatFuncL::one();
                        let mut ve = vec_mul(&v, &e);
                        for (k, c) in ve.iter_mut().enumerate() {
                            *c -= &(&chi[j] * &e[k]);
                        }
                        if ve.iter().any(|c| !c.is_zero()) {
                            gens.push(ve);
                        }
                    }
                    let nilpotency = nil_order(&gens)
                        .ok_or_else(|| bad("spectral factor is not local: reduced part is not nilpotent"))?;
                    out.push(SpectralPoint {
                        idempotent: e,
                        character: chi,
                        nilpotency,
                    });
                }
                Some(out)
            }
        };
        Ok(Arc::new(AlgebraSpec {
            name: name.to_string(),
            labels: labels.into_iter().map(|s| s.to_string()).collect(),
            degrees,
            mul,
            pairing,
            dual,
            spectrum,
        }))
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn degrees(&self) -> &[i64] {
        &self.degrees
    }

    pub fn pairing_matrix(&self) -> &Vec<Vec<RatFuncL>> {
        &self.pairing
    }

    pub fn dual_matrix(&self) -> &Vec<Vec<RatFuncL>> {
        &self.dual
    }

    pub fn structure_constants(&self) -> &Vec<Vec<Vec<RatFuncL>>> {
        &self.mul
    }

    /// Largest Taylor truncation order across the spectral factors, or
    /// `None` when no functional calculus is available.
    pub fn nilpotency(&self) -> Option<usize> {
        self.spectrum
            .as_ref()
            .map(|pts| pts.iter().map(|p| p.nilpotency).max().unwrap_or(1))
    }

    /// Spectral decomposition into local factors, when available.
    pub fn spectrum(&self) -> Option<&[SpectralPoint]> {
        self.spectrum.as_deref()
    }

    pub fn to_doc(&self) -> AlgebraSpecDoc {
        AlgebraSpecDoc {
            name: self.name.clone(),
            labels: self.labels.clone(),
            degrees: self.degrees.clone(),
            mul: self.mul.clone(),
            pairing: self.pairing.clone(),
            dual: self.dual.clone(),
            spectrum: self.spectrum.clone(),
        }
    }

    pub fn from_doc(doc: &AlgebraSpecDoc) -> Result<Arc<Self>, CoreError> {
        let spectrum = doc.spectrum.as_ref().and_then(|pts| {
            // A single trivial factor is recomputed rather than passed through.
            let trivial = pts.len() == 1
                && pts[0].idempotent.iter().skip(1).all(|c| c.is_zero())
                && pts[0].character.iter().skip(1).all(|c| c.is_zero());
            if trivial {
                None
            } else {
                Some(
                    pts.iter()
                        .map(|p| (p.idempotent.clone(), p.character.clone()))
                        .collect(),
                )
            }
        });
        AlgebraSpec::new_with_spectrum(
            &doc.name,
            doc.labels.iter().map(|s| s.as_str()).collect(),
            doc.degrees.clone(),
            doc.mul.clone(),
            doc.pairing.clone(),
            spectrum,
        )
    }
}

impl PartialEq for AlgebraSpec {
    fn eq(&self, other: &Self) -> bool {
        self.name == other.name && self.labels == other.labels
    }
}

impl fmt::Debug for AlgebraSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "AlgebraSpec({}, dim {})", self.name, self.dim())
    }
}

/// Row-reduced spanning set of a subspace of coordinate vectors over the
/// rational-function field.
struct Span {
    n: usize,
    rows: Vec<Vec<RatFuncL>>,
    pivots: Vec<usize>,
}

impl Span {
    fn new(n: usize) -> Self {
        Span {
            n,
            rows: Vec::new(),
            pivots: Vec::new(),
        }
    }

    fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    /// Reduce `v` against the existing rows and keep it if independent.
    fn insert(&mut self, mut v: Vec<RatFuncL>) {
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            if v[p].is_zero() {
                continue;
            }
            let f = v[p].clone();
            for j in 0..self.n {
                v[j] -= &(&f * &row[j]);
            }
        }
        if let Some(p) = (0..self.n).find(|&j| !v[j].is_zero()) {
            let inv = v[p].inverse().expect("nonzero rational function inverts");
            for c in v.iter_mut() {
                *c = &*c * &inv;
            }
            self.rows.push(v);
            self.pivots.push(p);
        }
    }
}

/// Invert a square matrix over the rational-function field by Gaussian
/// elimination; `None` if singular.
pub fn invert_matrix(m: &[Vec<RatFuncL>]) -> Option<Vec<Vec<RatFuncL>>> {
    let n = m.len();
    let mut a: Vec<Vec<RatFuncL>> = m.to_vec();
    let mut inv: Vec<Vec<RatFuncL>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| if i == j { RatFuncL::one() } else { RatFuncL::zero() })
                .collect()
        })
        .collect();
    for col in 0..n {
        let pivot = (col..n).find(|&r| !a[r][col].is_zero())?;
        a.swap(col, pivot);
        inv.swap(col, pivot);
        let p = a[col][col].clone();
        let pinv = p.inverse().ok()?;
        for j in 0..n {
            a[col][j] = &a[col][j] * &pinv;
            inv[col][j] = &inv[col][j] * &pinv;
        }
        for r in 0..n {
            if r == col || a[r][col].is_zero() {
                continue;
            }
            let f = a[r][col].clone();
            for j in 0..n {
                let t = &f * &a[col][j];
                a[r][j] = &a[r][j] - &t;
                let t = &f * &inv[col][j];
                inv[r][j] = &inv[r][j] - &t;
            }
        }
    }
    Some(inv)
}

/// Homogeneity classification of an algebra element.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Degree {
    /// Zero element: homogeneous of every degree.
    Zero,
    /// Homogeneous of the given (even) degree, counting the equivariant
    /// parameter with degree 2.
    Homogeneous(i64),
    /// Inhomogeneous.
    Mixed,
}

/// Element of an [`AlgebraSpec`], as a coordinate vector over the
/// rational-function field.
#[derive(Clone, PartialEq)]
pub struct AlgElem {
    spec: Arc<AlgebraSpec>,
    coeffs: Vec<RatFuncL>,
}

impl AlgElem {
    pub fn new(spec: Arc<AlgebraSpec>, coeffs: Vec<RatFuncL>) -> Result<Self, CoreError> {
        if coeffs.len() != spec.dim() {
            return Err(CoreError::InvalidAlgebra {
                name: spec.name().to_string(),
                reason: "coefficient vector length mismatch".to_string(),
            });
        }
        Ok(AlgElem { spec, coeffs })
    }

    pub fn zero(spec: Arc<AlgebraSpec>) -> Self {
        let n = spec.dim();
        AlgElem {
            spec,
            coeffs: vec![RatFuncL::zero(); n],
        }
    }

    pub fn unit(spec: Arc<AlgebraSpec>) -> Self {
        AlgElem::basis(spec, 0)
    }

    pub fn basis(spec: Arc<AlgebraSpec>, i: usize) -> Self {
        let n = spec.dim();
        let mut coeffs = vec![RatFuncL::zero(); n];
        coeffs[i] = RatFuncL::one();
        AlgElem { spec, coeffs }
    }

    /// The dual basis element `Φ^i`.
    pub fn dual_basis(spec: Arc<AlgebraSpec>, i: usize) -> Self {
        let coeffs = spec.dual_matrix()[i].clone();
        AlgElem { spec, coeffs }
    }

    /// `c · l^k` times the unit.
    pub fn scalar(spec: Arc<AlgebraSpec>, c: RatFuncL) -> Self {
        let n = spec.dim();
        let mut coeffs = vec![RatFuncL::zero(); n];
        coeffs[0] = c;
        AlgElem { spec, coeffs }
    }

    pub fn spec(&self) -> &Arc<AlgebraSpec> {
        &self.spec
    }

    pub fn coeffs(&self) -> &[RatFuncL] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> &RatFuncL {
        &self.coeffs[i]
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    /// Verify both elements live in the same algebra.
    pub fn check_same(&self, other: &AlgElem) -> Result<(), CoreError> {
        if !Arc::ptr_eq(&self.spec, &other.spec) && *self.spec != *other.spec {
            return Err(CoreError::MismatchedAlgebra {
                left: self.spec.name().to_string(),
                right: other.spec.name().to_string(),
            });
        }
        Ok(())
    }

    pub fn add(&self, other: &AlgElem) -> Result<AlgElem, CoreError> {
        self.check_same(other)?;
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| a + b)
            .collect();
        Ok(AlgElem {
            spec: self.spec.clone(),
            coeffs,
        })
    }

    pub fn sub(&self, other: &AlgElem) -> Result<AlgElem, CoreError> {
        self.check_same(other)?;
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| a - b)
            .collect();
        Ok(AlgElem {
            spec: self.spec.clone(),
            coeffs,
        })
    }

    pub fn neg(&self) -> AlgElem {
        AlgElem {
            spec: self.spec.clone(),
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }

    pub fn scale(&self, c: &RatFuncL) -> AlgElem {
        AlgElem {
            spec: self.spec.clone(),
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
        }
    }

    pub fn scale_rat(&self, c: &Rat) -> AlgElem {
        self.scale(&RatFuncL::constant(c.clone()))
    }

    /// Structure-constant contraction; the algebra product.
    pub fn mul(&self, other: &AlgElem) -> Result<AlgElem, CoreError> {
        self.check_same(other)?;
        let n = self.spec.dim();
        let mul = self.spec.structure_constants();
        let mut coeffs = vec![RatFuncL::zero(); n];
        for i in 0..n {
            if self.coeffs[i].is_zero() {
                continue;
            }
            for j in 0..n {
                if other.coeffs[j].is_zero() {
                    continue;
                }
                let prod = &self.coeffs[i] * &other.coeffs[j];
                for k in 0..n {
                    let c = &mul[i][j][k];
                    if !c.is_zero() {
                        coeffs[k] += &(&prod * c);
                    }
                }
            }
        }
        Ok(AlgElem {
            spec: self.spec.clone(),
            coeffs,
        })
    }

    /// The symmetric bilinear pairing.
    pub fn pairing(&self, other: &AlgElem) -> Result<RatFuncL, CoreError> {
        self.check_same(other)?;
        let n = self.spec.dim();
        let g = self.spec.pairing_matrix();
        let mut acc = RatFuncL::zero();
        for i in 0..n {
            if self.coeffs[i].is_zero() {
                continue;
            }
            for j in 0..n {
                if other.coeffs[j].is_zero() {
                    continue;
                }
                acc += &(&(&self.coeffs[i] * &other.coeffs[j]) * &g[i][j]);
            }
        }
        Ok(acc)
    }

    /// Age-shifted homogeneous degree, counting the equivariant parameter
    /// with degree 2; [`Degree::Mixed`] if inhomogeneous.
    pub fn degree(&self) -> Degree {
        let mut found: Option<i64> = None;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let d = match c.monomial_degree() {
                Some(d) => 2 * d + self.spec.degrees()[i],
                None => return Degree::Mixed,
            };
            match found {
                None => found = Some(d),
                Some(prev) if prev == d => {}
                Some(_) => return Degree::Mixed,
            }
        }
        match found {
            None => Degree::Zero,
            Some(d) => Degree::Homogeneous(d),
        }
    }
}

impl fmt::Debug for AlgElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "({})·{}", c, self.spec.labels()[i])?;
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}
