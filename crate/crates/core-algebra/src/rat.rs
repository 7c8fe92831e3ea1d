//! Exact arithmetic: arbitrary-precision rationals, polynomials in the
//! equivariant parameter `l` (printed as λ), and rational functions thereof.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};
use std::str::FromStr;

use crate::CoreError;

/// Arbitrary-precision rational number in canonical reduced form
/// (the underlying type keeps denominators positive and gcd-reduced).
pub type Rat = num_rational::BigRational;

/// Convenience constructor: the rational `n/d`.
pub fn rat(n: i64, d: i64) -> Rat {
    Rat::new(BigInt::from(n), BigInt::from(d))
}

/// Convenience constructor: the integer `n` as a rational.
pub fn rint(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

/// Polynomial in the equivariant parameter with rational coefficients.
///
/// `coeffs[i]` is the coefficient of `l^i`; the vector never has a trailing
/// zero, and the zero polynomial is the empty vector.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct PolyL {
    coeffs: Vec<Rat>,
}

impl PolyL {
    pub fn zero() -> Self {
        PolyL { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        PolyL::constant(Rat::one())
    }

    pub fn constant(c: Rat) -> Self {
        let mut p = PolyL { coeffs: vec![c] };
        p.trim();
        p
    }

    /// The monomial `c·l^k`.
    pub fn monomial(c: Rat, k: usize) -> Self {
        if c.is_zero() {
            return PolyL::zero();
        }
        let mut coeffs = vec![Rat::zero(); k + 1];
        coeffs[k] = c;
        PolyL { coeffs }
    }

    /// The parameter itself, `l`.
    pub fn lambda() -> Self {
        PolyL::monomial(Rat::one(), 1)
    }

    pub fn from_coeffs(coeffs: Vec<Rat>) -> Self {
        let mut p = PolyL { coeffs };
        p.trim();
        p
    }

    pub fn coeffs(&self) -> &[Rat] {
        &self.coeffs
    }

    /// Coefficient of `l^k` (zero beyond the degree).
    pub fn coeff(&self, k: usize) -> Rat {
        self.coeffs.get(k).cloned().unwrap_or_else(Rat::zero)
    }

    fn trim(&mut self) {
        while self.coeffs.last().map_or(false, |c| c.is_zero()) {
            self.coeffs.pop();
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading_coeff(&self) -> Rat {
        self.coeffs.last().cloned().unwrap_or_else(Rat::zero)
    }

    /// True if the polynomial is `c·l^k` for a single `k`.
    pub fn is_monomial(&self) -> bool {
        self.coeffs.iter().filter(|c| !c.is_zero()).count() <= 1
    }

    pub fn scale(&self, c: &Rat) -> Self {
        if c.is_zero() {
            return PolyL::zero();
        }
        PolyL {
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
        }
    }

    pub fn eval(&self, x: &Rat) -> Rat {
        let mut acc = Rat::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    /// Division with remainder by a nonzero divisor.
    pub fn div_rem(&self, d: &PolyL) -> Result<(PolyL, PolyL), CoreError> {
        if d.is_zero() {
            return Err(CoreError::DivisionByZero);
        }
        let dd = d.degree().unwrap();
        let lead = d.leading_coeff();
        let mut rem = self.clone();
        let mut quot = vec![Rat::zero(); self.coeffs.len().saturating_sub(dd)];
        while let Some(rd) = rem.degree() {
            if rd < dd {
                break;
            }
            let c = rem.leading_coeff() / &lead;
            let shift = rd - dd;
            quot[shift] = c.clone();
            let sub = d.scale(&c);
            // rem -= sub * l^shift
            for (i, s) in sub.coeffs.iter().enumerate() {
                rem.coeffs[i + shift] -= s;
            }
            rem.trim();
        }
        Ok((PolyL::from_coeffs(quot), rem))
    }

    /// Monic greatest common divisor.
    pub fn gcd(&self, other: &PolyL) -> PolyL {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b).expect("nonzero divisor");
            a = b;
            b = r;
        }
        if a.is_zero() {
            a
        } else {
            let lead = a.leading_coeff();
            a.scale(&(Rat::one() / lead))
        }
    }
}

impl Add for &PolyL {
    type Output = PolyL;
    fn add(self, rhs: &PolyL) -> PolyL {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let mut coeffs = Vec::with_capacity(n);
        for i in 0..n {
            coeffs.push(self.coeff(i) + rhs.coeff(i));
        }
        PolyL::from_coeffs(coeffs)
    }
}

impl Sub for &PolyL {
    type Output = PolyL;
    fn sub(self, rhs: &PolyL) -> PolyL {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let mut coeffs = Vec::with_capacity(n);
        for i in 0..n {
            coeffs.push(self.coeff(i) - rhs.coeff(i));
        }
        PolyL::from_coeffs(coeffs)
    }
}

impl Mul for &PolyL {
    type Output = PolyL;
    fn mul(self, rhs: &PolyL) -> PolyL {
        if self.is_zero() || rhs.is_zero() {
            return PolyL::zero();
        }
        let mut coeffs = vec![Rat::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                coeffs[i + j] += a * b;
            }
        }
        PolyL::from_coeffs(coeffs)
    }
}

impl Neg for &PolyL {
    type Output = PolyL;
    fn neg(self) -> PolyL {
        PolyL {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl fmt::Debug for PolyL {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", poly_to_string(self))
    }
}

/// Rational function in the equivariant parameter.
///
/// Canonical form: gcd(num, den) = 1, denominator monic, zero is `0/1`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RatFuncL {
    num: PolyL,
    den: PolyL,
}

impl RatFuncL {
    pub fn new(num: PolyL, den: PolyL) -> Result<Self, CoreError> {
        if den.is_zero() {
            return Err(CoreError::DivisionByZero);
        }
        let mut r = RatFuncL { num, den };
        r.normalize();
        Ok(r)
    }

    fn normalize(&mut self) {
        if self.num.is_zero() {
            self.den = PolyL::one();
            return;
        }
        let g = self.num.gcd(&self.den);
        if g.degree().unwrap_or(0) > 0 {
            self.num = self.num.div_rem(&g).unwrap().0;
            self.den = self.den.div_rem(&g).unwrap().0;
        }
        let lead = self.den.leading_coeff();
        if !lead.is_one() {
            let inv = Rat::one() / lead;
            self.num = self.num.scale(&inv);
            self.den = self.den.scale(&inv);
        }
    }

    pub fn zero() -> Self {
        RatFuncL {
            num: PolyL::zero(),
            den: PolyL::one(),
        }
    }

    pub fn one() -> Self {
        RatFuncL {
            num: PolyL::one(),
            den: PolyL::one(),
        }
    }

    pub fn constant(c: Rat) -> Self {
        RatFuncL {
            num: PolyL::constant(c),
            den: PolyL::one(),
        }
    }

    pub fn from_poly(p: PolyL) -> Self {
        RatFuncL {
            num: p,
            den: PolyL::one(),
        }
    }

    /// The parameter `l` itself.
    pub fn lambda() -> Self {
        RatFuncL::from_poly(PolyL::lambda())
    }

    /// `c·l^k`.
    pub fn lambda_pow(c: Rat, k: usize) -> Self {
        RatFuncL::from_poly(PolyL::monomial(c, k))
    }

    pub fn num(&self) -> &PolyL {
        &self.num
    }

    pub fn den(&self) -> &PolyL {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num == PolyL::one() && self.den == PolyL::one()
    }

    pub fn is_polynomial(&self) -> bool {
        self.den == PolyL::one()
    }

    /// The constant value if this is a constant, else `None`.
    pub fn as_constant(&self) -> Option<Rat> {
        if !self.is_polynomial() {
            return None;
        }
        match self.num.degree() {
            None => Some(Rat::zero()),
            Some(0) => Some(self.num.coeff(0)),
            _ => None,
        }
    }

    pub fn inverse(&self) -> Result<Self, CoreError> {
        if self.is_zero() {
            return Err(CoreError::DivisionByZero);
        }
        RatFuncL::new(self.den.clone(), self.num.clone())
    }

    /// Homogeneous degree in `l` if both numerator and denominator are
    /// monomials (so the function scales like `l^d`); `None` otherwise or
    /// for zero.
    pub fn monomial_degree(&self) -> Option<i64> {
        if self.is_zero() || !self.num.is_monomial() || !self.den.is_monomial() {
            return None;
        }
        Some(self.num.degree().unwrap() as i64 - self.den.degree().unwrap() as i64)
    }

    /// Exact value at `l = 0`, or the pole order if the function has a pole
    /// there.
    pub fn eval_at_zero(&self) -> Result<Rat, CoreError> {
        let den0 = self.den.coeff(0);
        if !den0.is_zero() {
            return Ok(self.num.coeff(0) / den0);
        }
        // Denominator vanishes at 0; numerator is coprime to it, so this is
        // a genuine pole. Its order is the l-adic valuation of the denominator.
        let order = self
            .den
            .coeffs()
            .iter()
            .position(|c| !c.is_zero())
            .unwrap_or(0);
        Err(CoreError::PoleAtLambdaZero { order })
    }

    /// Exact value at a rational `l = x` (pole reported as an error).
    pub fn eval(&self, x: &Rat) -> Result<Rat, CoreError> {
        let d = self.den.eval(x);
        if d.is_zero() {
            return Err(CoreError::PoleAtLambdaZero { order: 0 });
        }
        Ok(self.num.eval(x) / d)
    }
}

impl Add for &RatFuncL {
    type Output = RatFuncL;
    fn add(self, rhs: &RatFuncL) -> RatFuncL {
        let num = &(&self.num * &rhs.den) + &(&rhs.num * &self.den);
        let den = &self.den * &rhs.den;
        RatFuncL::new(num, den).expect("nonzero denominator")
    }
}

impl Sub for &RatFuncL {
    type Output = RatFuncL;
    fn sub(self, rhs: &RatFuncL) -> RatFuncL {
        let num = &(&self.num * &rhs.den) - &(&rhs.num * &self.den);
        let den = &self.den * &rhs.den;
        RatFuncL::new(num, den).expect("nonzero denominator")
    }
}

impl Mul for &RatFuncL {
    type Output = RatFuncL;
    fn mul(self, rhs: &RatFuncL) -> RatFuncL {
        RatFuncL::new(&self.num * &rhs.num, &self.den * &rhs.den).expect("nonzero denominator")
    }
}

impl Div for &RatFuncL {
    type Output = RatFuncL;
    fn div(self, rhs: &RatFuncL) -> RatFuncL {
        if rhs.is_zero() {
            panic!("division of rational functions by zero");
        }
        RatFuncL::new(&self.num * &rhs.den, &self.den * &rhs.num).expect("nonzero denominator")
    }
}

impl Neg for &RatFuncL {
    type Output = RatFuncL;
    fn neg(self) -> RatFuncL {
        RatFuncL {
            num: -&self.num,
            den: self.den.clone(),
        }
    }
}

impl AddAssign<&RatFuncL> for RatFuncL {
    fn add_assign(&mut self, rhs: &RatFuncL) {
        *self = &*self + rhs;
    }
}

impl SubAssign<&RatFuncL> for RatFuncL {
    fn sub_assign(&mut self, rhs: &RatFuncL) {
        *self = &*self - rhs;
    }
}

impl MulAssign<&RatFuncL> for RatFuncL {
    fn mul_assign(&mut self, rhs: &RatFuncL) {
        *self = &*self * rhs;
    }
}

fn rat_to_string(c: &Rat) -> String {
    if c.denom().is_one() {
        format!("{}", c.numer())
    } else {
        format!("{}/{}", c.numer(), c.denom())
    }
}

/// Render a polynomial as a canonical text form, highest degree first,
/// e.g. `3*l^2 - 1/2*l + 4`; the zero polynomial is `0`.
pub fn poly_to_string(p: &PolyL) -> String {
    if p.is_zero() {
        return "0".to_string();
    }
    let mut out = String::new();
    for k in (0..p.coeffs().len()).rev() {
        let c = p.coeff(k);
        if c.is_zero() {
            continue;
        }
        let sign_neg = c.is_negative();
        let abs = c.abs();
        if out.is_empty() {
            if sign_neg {
                out.push('-');
            }
        } else {
            out.push_str(if sign_neg { " - " } else { " + " });
        }
        let unit_coeff = abs.is_one();
        match (k, unit_coeff) {
            (0, _) => out.push_str(&rat_to_string(&abs)),
            (1, true) => out.push('l'),
            (1, false) => {
                out.push_str(&rat_to_string(&abs));
                out.push_str("*l");
            }
            (_, true) => out.push_str(&format!("l^{}", k)),
            (_, false) => out.push_str(&format!("{}*l^{}", rat_to_string(&abs), k)),
        }
    }
    out
}

/// Parse the text form produced by [`poly_to_string`].
pub fn poly_from_string(s: &str) -> Result<PolyL, CoreError> {
    let s = s.trim();
    if s.is_empty() {
        return Err(CoreError::Parse(s.to_string()));
    }
    // Split into signed terms at top level.
    let mut terms: Vec<(bool, String)> = Vec::new();
    let mut cur = String::new();
    let mut sign_neg = false;
    let mut chars = s.chars().peekable();
    // optional leading sign
    if let Some(&c) = chars.peek() {
        if c == '-' {
            sign_neg = true;
            chars.next();
        } else if c == '+' {
            chars.next();
        }
    }
    let mut prev_space = false;
    while let Some(c) = chars.next() {
        match c {
            ' ' => prev_space = true,
            '+' | '-' if prev_space => {
                terms.push((sign_neg, cur.trim().to_string()));
                cur = String::new();
                sign_neg = c == '-';
                prev_space = false;
            }
            _ => {
                prev_space = false;
                cur.push(c);
            }
        }
    }
    terms.push((sign_neg, cur.trim().to_string()));

    let mut result = PolyL::zero();
    for (neg, term) in terms {
        if term.is_empty() {
            return Err(CoreError::Parse(s.to_string()));
        }
        let (coeff_str, pow): (&str, usize) = if let Some(idx) = term.find('l') {
            let coeff_part = term[..idx].trim_end_matches('*').trim();
            let rest = &term[idx + 1..];
            let pow = if let Some(stripped) = rest.strip_prefix('^') {
                stripped
                    .parse::<usize>()
                    .map_err(|_| CoreError::Parse(s.to_string()))?
            } else if rest.is_empty() {
                1
            } else {
                return Err(CoreError::Parse(s.to_string()));
            };
            (if coeff_part.is_empty() { "1" } else { coeff_part }, pow)
        } else {
            (term.as_str(), 0)
        };
        let c = Rat::from_str(coeff_str).map_err(|_| CoreError::Parse(s.to_string()))?;
        let c = if neg { -c } else { c };
        result = &result + &PolyL::monomial(c, pow);
    }
    Ok(result)
}

impl fmt::Display for RatFuncL {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_polynomial() {
            write!(f, "{}", poly_to_string(&self.num))
        } else {
            write!(
                f,
                "({}) / ({})",
                poly_to_string(&self.num),
                poly_to_string(&self.den)
            )
        }
    }
}

impl fmt::Debug for RatFuncL {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl FromStr for RatFuncL {
    type Err = CoreError;
    fn from_str(s: &str) -> Result<Self, CoreError> {
        let s = s.trim();
        if let Some(idx) = s.find(") / (") {
            let num = &s[..idx];
            let den = &s[idx + 5..];
            let num = num
                .strip_prefix('(')
                .ok_or_else(|| CoreError::Parse(s.to_string()))?;
            let den = den
                .strip_suffix(')')
                .ok_or_else(|| CoreError::Parse(s.to_string()))?;
            RatFuncL::new(poly_from_string(num)?, poly_from_string(den)?)
        } else {
            Ok(RatFuncL::from_poly(poly_from_string(s)?))
        }
    }
}

impl serde::Serialize for RatFuncL {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.to_string())
    }
}

impl<'de> serde::Deserialize<'de> for RatFuncL {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

