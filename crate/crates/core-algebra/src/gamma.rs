//! High-precision complex gamma, digamma, and polygamma functions.
//!
//! The primary route is the Stirling asymptotic series with exact Bernoulli
//! numbers and argument raising; an independent Spouge-approximation route is
//! provided as a cross-check oracle.

use num_bigint::BigInt;
use num_traits::{One, Zero};
use once_cell::sync::Lazy;
use rug::Float;
use std::sync::Mutex;

use crate::hp::{bits_for_digits, HPComplex};
use crate::rat::Rat;
use crate::CoreError;

static BERNOULLI: Lazy<Mutex<Vec<Rat>>> = Lazy::new(|| {
    Mutex::new(vec![
        Rat::one(),
        Rat::new(BigInt::from(-1), BigInt::from(2)),
    ])
});

/// Exact Bernoulli number B_n (B_1 = −1/2 convention), computed by the
/// defining recurrence and cached.
pub fn bernoulli(n: usize) -> Rat {
    let mut cache = BERNOULLI.lock().unwrap();
    while cache.len() <= n {
        let m = cache.len();
        if m % 2 == 1 {
            cache.push(Rat::zero());
            continue;
        }
        // B_m = −1/(m+1) · Σ_{j<m} C(m+1, j) B_j
        let mut acc = Rat::zero();
        let mut binom = BigInt::one(); // C(m+1, 0)
        for (j, b) in cache.iter().enumerate() {
            if !b.is_zero() {
                acc += b * Rat::from_integer(binom.clone());
            }
            // C(m+1, j+1) = C(m+1, j) · (m+1−j)/(j+1)
            binom = binom * BigInt::from(m + 1 - j) / BigInt::from(j + 1);
        }
        let bm = -acc / Rat::from_integer(BigInt::from(m + 1));
        cache.push(bm);
    }
    cache[n].clone()
}

fn is_nonpositive_integer(z: &HPComplex) -> bool {
    if !z.im.is_zero() {
        return false;
    }
    z.re.is_integer() && (z.re.is_zero() || z.re.is_sign_negative())
}

/// Stirling cut-off radius for the given binary precision.
fn stirling_radius(prec: u32) -> f64 {
    0.12 * prec as f64 + 12.0
}

/// Principal-branch log-gamma for Re z ≥ 1/2 via raised Stirling series.
/// ("Principal" up to the usual additive 2πi ambiguity inherited from the
/// raising product; consumers exponentiate or differentiate, so only the
/// value modulo 2πi of the product term matters and is tracked exactly.)
fn lngamma_raised(z: &HPComplex, prec: u32) -> HPComplex {
    let r = stirling_radius(prec);
    let mut w = z.clone();
    // ln Γ(z) = ln Γ(z+m) − Σ ln(z+j); accumulate the product and take one log.
    let mut logsum = HPComplex::zero(prec);
    while w.re.to_f64() < r {
        logsum = &logsum + &w.ln();
        w = &w + &HPComplex::one(prec);
    }
    // Stirling at w.
    let half = HPComplex::from_f64(0.5, prec);
    let ln2pi = HPComplex::from_real(Float::with_val(
        prec,
        2 * HPComplex::pi(prec),
    ))
    .ln();
    let mut acc = &(&(&w - &half) * &w.ln()) - &w;
    acc = &acc + &(&ln2pi * &half);
    let winv2 = w.recip().powi(2);
    let mut wpow = w.recip(); // w^{-(2n-1)}
    let eps = Float::with_val(prec, Float::i_exp(1, -(prec as i32)));
    let mut n = 1usize;
    loop {
        let b = bernoulli(2 * n);
        let coeff = &b / Rat::from_integer(BigInt::from(2 * n * (2 * n - 1)));
        let term = HPComplex::from_rat(&coeff, prec) * wpow.clone();
        acc = &acc + &term;
        if term.abs() < eps || n > 4 * prec as usize {
            break;
        }
        wpow = &wpow * &winv2;
        n += 1;
    }
    &acc - &logsum
}

/// Complex Γ(z) with relative error below 10^(1−digits).
pub fn hp_gamma(z: &HPComplex, digits: u32) -> Result<HPComplex, CoreError> {
    let prec = bits_for_digits(digits + 10);
    if is_nonpositive_integer(z) {
        return Err(CoreError::GammaPole);
    }
    if z.re.to_f64() < 0.5 {
        // Reflection: Γ(z) = π / (sin(πz) Γ(1−z)).
        let pi = HPComplex::from_real(HPComplex::pi(prec));
        let one = HPComplex::one(prec);
        let zz = raise_prec(z, prec);
        let s = (&pi * &zz).sin();
        let g = hp_gamma_raised(&(&one - &zz), prec);
        return Ok(&pi / &(&s * &g));
    }
    Ok(hp_gamma_raised(&raise_prec(z, prec), prec))
}

fn raise_prec(z: &HPComplex, prec: u32) -> HPComplex {
    HPComplex {
        re: Float::with_val(prec.max(z.re.prec()), &z.re),
        im: Float::with_val(prec.max(z.im.prec()), &z.im),
    }
}

fn hp_gamma_raised(z: &HPComplex, prec: u32) -> HPComplex {
    lngamma_raised(z, prec).exp()
}

/// Complex log Γ(z) (principal determination from the raised Stirling
/// series; exact modulo 2πi). Requires Re z ≥ 1/2 for a canonical branch.
pub fn hp_lngamma(z: &HPComplex, digits: u32) -> Result<HPComplex, CoreError> {
    let prec = bits_for_digits(digits + 10);
    if is_nonpositive_integer(z) {
        return Err(CoreError::GammaPole);
    }
    if z.re.to_f64() < 0.5 {
        let pi = HPComplex::from_real(HPComplex::pi(prec));
        let one = HPComplex::one(prec);
        let zz = raise_prec(z, prec);
        let s = (&pi * &zz).sin();
        let g = lngamma_raised(&(&one - &zz), prec);
        return Ok(&(&pi.ln() - &s.ln()) - &g);
    }
    Ok(lngamma_raised(&raise_prec(z, prec), prec))
}

/// Complex digamma ψ(z).
pub fn hp_digamma(z: &HPComplex, digits: u32) -> Result<HPComplex, CoreError> {
    let prec = bits_for_digits(digits + 10);
    if is_nonpositive_integer(z) {
        return Err(CoreError::GammaPole);
    }
    if z.re.to_f64() < 0.5 {
        // ψ(z) = ψ(1−z) − π·cot(πz)
        let pi = HPComplex::from_real(HPComplex::pi(prec));
        let one = HPComplex::one(prec);
        let zz = raise_prec(z, prec);
        let piz = &pi * &zz;
        let cot = &piz.cos() / &piz.sin();
        let d = digamma_raised(&(&one - &zz), prec);
        return Ok(&d - &(&pi * &cot));
    }
    Ok(digamma_raised(&raise_prec(z, prec), prec))
}

fn digamma_raised(z: &HPComplex, prec: u32) -> HPComplex {
    let r = stirling_radius(prec);
    let mut w = z.clone();
    let mut shift = HPComplex::zero(prec);
    while w.re.to_f64() < r {
        shift = &shift + &w.recip();
        w = &w + &HPComplex::one(prec);
    }
    // ψ(w) = ln w − 1/(2w) − Σ B_{2n}/(2n w^{2n})
    let mut acc = &w.ln() - &w.recip().scale_f(&Float::with_val(prec, 0.5));
    let winv2 = w.recip().powi(2);
    let mut wpow = winv2.clone(); // w^{-2n}
    let eps = Float::with_val(prec, Float::i_exp(1, -(prec as i32)));
    let mut n = 1usize;
    loop {
        let b = bernoulli(2 * n);
        let coeff = &b / Rat::from_integer(BigInt::from(2 * n));
        let term = HPComplex::from_rat(&coeff, prec) * wpow.clone();
        acc = &acc - &term;
        if term.abs() < eps || n > 4 * prec as usize {
            break;
        }
        wpow = &wpow * &winv2;
        n += 1;
    }
    &acc - &shift
}

/// Complex polygamma ψ^(m)(z), m ≥ 1 (m = 0 delegates to digamma).
pub fn hp_polygamma(z: &HPComplex, order: u32, digits: u32) -> Result<HPComplex, CoreError> {
    if order == 0 {
        return hp_digamma(z, digits);
    }
    if order > 16 {
        return Err(CoreError::UnsupportedOrder(order));
    }
    let prec = bits_for_digits(digits + 10);
    if is_nonpositive_integer(z) {
        return Err(CoreError::GammaPole);
    }
    let m = order as usize;
    let r = stirling_radius(prec) + order as f64;
    let mut w = raise_prec(z, prec);
    // ψ^(m)(z) = ψ^(m)(z+1) − (d/dz)^m (1/z) = ψ^(m)(z+1) − (−1)^m m! z^{−m−1}
    let mut shift = HPComplex::zero(prec);
    let m_fact = factorial_f(m, prec);
    let sign_m = if m % 2 == 0 { 1.0 } else { -1.0 };
    while w.re.to_f64() < r {
        let t = w.recip().powi((m + 1) as i64).scale_f(&m_fact);
        let t = t.scale_f(&Float::with_val(prec, sign_m));
        shift = &shift + &t;
        w = &w + &HPComplex::one(prec);
    }
    // Asymptotic: ψ^(m)(w) = (−1)^{m−1} [ (m−1)!/w^m + m!/(2 w^{m+1})
    //   + Σ_{n≥1} B_{2n} (2n+m−1)!/((2n)! w^{2n+m}) ].
    let mut acc = w
        .recip()
        .powi(m as i64)
        .scale_f(&factorial_f(m - 1, prec));
    acc = &acc
        + &w
            .recip()
            .powi((m + 1) as i64)
            .scale_f(&Float::with_val(prec, &m_fact / 2u32));
    let winv2 = w.recip().powi(2);
    let mut wpow = w.recip().powi((m + 2) as i64); // w^{-(2n+m)} at n=1
    let eps = Float::with_val(prec, Float::i_exp(1, -(prec as i32)));
    let mut n = 1usize;
    loop {
        let b = bernoulli(2 * n);
        // (2n+m−1)!/(2n)!
        let mut fac = Float::with_val(prec, 1);
        for j in (2 * n + 1)..=(2 * n + m - 1) {
            fac *= j as u32;
        }
        let term = &HPComplex::from_rat(&b, prec).scale_f(&fac) * &wpow;
        acc = &acc + &term;
        if term.abs() < eps || n > 4 * prec as usize {
            break;
        }
        wpow = &wpow * &winv2;
        n += 1;
    }
    let sign = if m % 2 == 1 { 1.0 } else { -1.0 };
    Ok(&acc.scale_f(&Float::with_val(prec, sign)) - &shift)
}

fn factorial_f(n: usize, prec: u32) -> Float {
    let mut f = Float::with_val(prec, 1);
    for j in 2..=n {
        f *= j as u32;
    }
    f
}

/// Independent gamma oracle: Spouge's approximation.
///
/// Used only in tests to cross-validate [`hp_gamma`]; the coefficient count
/// grows linearly with the requested digits.
pub fn spouge_gamma(z: &HPComplex, digits: u32) -> Result<HPComplex, CoreError> {
    let prec = bits_for_digits(digits + 12);
    if is_nonpositive_integer(z) {
        return Err(CoreError::GammaPole);
    }
    if z.re.to_f64() < 0.5 {
        let pi = HPComplex::from_real(HPComplex::pi(prec));
        let one = HPComplex::one(prec);
        let zz = raise_prec(z, prec);
        let s = (&pi * &zz).sin();
        let g = spouge_gamma(&(&one - &zz), digits)?;
        return Ok(&pi / &(&s * &g));
    }
    let z = raise_prec(z, prec);
    // Accuracy ~ (2π)^{-(a+1/2)}: a ≈ digits·ln(10)/ln(2π) + margin.
    let a = ((digits as f64) * std::f64::consts::LN_10 / (2.0 * std::f64::consts::PI).ln()).ceil()
        as usize
        + 8;
    let two_pi = Float::with_val(prec, 2 * HPComplex::pi(prec));
    let sqrt2pi = two_pi.clone().sqrt();
    let one = HPComplex::one(prec);
    let zm1 = &z - &one;
    let mut sum = HPComplex::from_real(sqrt2pi);
    let mut k_fact = Float::with_val(prec, 1); // (k−1)!
    for k in 1..a {
        if k > 1 {
            k_fact *= (k - 1) as u32;
        }
        // c_k = (−1)^{k−1}/(k−1)! · (a−k)^{k−1/2} · e^{a−k}
        let amk = Float::with_val(prec, (a - k) as u32);
        let expo = Float::with_val(prec, k as f64 - 0.5);
        let pw = crate::hp::real_pow(&amk, &expo);
        let e = Float::with_val(prec, amk.exp_ref());
        let mut c = Float::with_val(prec, &pw * &e) / &k_fact;
        if k % 2 == 0 {
            c = -c;
        }
        let denom = &zm1 + &HPComplex::from_i64(k as i64, prec);
        sum = &sum + &(&HPComplex::from_real(c) * &denom.recip());
    }
    // Γ(z) = (z−1+a)^{z−1/2} e^{−(z−1+a)} · sum
    let base = &zm1 + &HPComplex::from_i64(a as i64, prec);
    let expnt = &z - &HPComplex::from_f64(0.5, prec);
    let lead = &base.pow(&expnt) * &(-&base).exp();
    Ok(&lead * &sum)
}
