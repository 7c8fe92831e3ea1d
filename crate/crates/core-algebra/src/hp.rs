//! High-precision complex arithmetic on top of MPFR real floats.
//!
//! Complex numbers are stored as explicit real/imaginary pairs at a recorded
//! binary precision; arithmetic always works at the larger precision of its
//! operands, never silently downgrading.

use rug::float::Round;
use rug::ops::Pow;
use rug::Float;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use crate::rat::Rat;

/// Binary precision (bits) needed for roughly `digits` decimal digits, with
/// guard bits.
pub fn bits_for_digits(digits: u32) -> u32 {
    ((digits as f64) * std::f64::consts::LOG2_10).ceil() as u32 + 48
}

/// Complex number with explicit arbitrary-precision real and imaginary parts.
#[derive(Clone)]
pub struct HPComplex {
    pub re: Float,
    pub im: Float,
}

impl HPComplex {
    pub fn new(re: Float, im: Float) -> Self {
        HPComplex { re, im }
    }

    pub fn zero(prec: u32) -> Self {
        HPComplex {
            re: Float::with_val(prec, 0),
            im: Float::with_val(prec, 0),
        }
    }

    pub fn one(prec: u32) -> Self {
        HPComplex {
            re: Float::with_val(prec, 1),
            im: Float::with_val(prec, 0),
        }
    }

    pub fn i(prec: u32) -> Self {
        HPComplex {
            re: Float::with_val(prec, 0),
            im: Float::with_val(prec, 1),
        }
    }

    pub fn from_i64(n: i64, prec: u32) -> Self {
        HPComplex {
            re: Float::with_val(prec, n),
            im: Float::with_val(prec, 0),
        }
    }

    pub fn from_f64(x: f64, prec: u32) -> Self {
        HPComplex {
            re: Float::with_val(prec, x),
            im: Float::with_val(prec, 0),
        }
    }

    pub fn from_real(re: Float) -> Self {
        let prec = re.prec();
        HPComplex {
            im: Float::with_val(prec, 0),
            re,
        }
    }

    pub fn from_rat(r: &Rat, prec: u32) -> Self {
        let q = rug::Rational::from((
            rug::Integer::from_str_radix(&r.numer().to_string(), 10).expect("valid integer"),
            rug::Integer::from_str_radix(&r.denom().to_string(), 10).expect("valid integer"),
        ));
        HPComplex {
            re: Float::with_val(prec, &q),
            im: Float::with_val(prec, 0),
        }
    }

    pub fn prec(&self) -> u32 {
        self.re.prec().max(self.im.prec())
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn pi(prec: u32) -> Float {
        Float::with_val(prec, rug::float::Constant::Pi)
    }

    pub fn conj(&self) -> Self {
        HPComplex {
            re: self.re.clone(),
            im: -self.im.clone(),
        }
    }

    /// Squared modulus as a real float.
    pub fn norm_sqr(&self) -> Float {
        let prec = self.prec();
        Float::with_val(prec, &self.re * &self.re) + Float::with_val(prec, &self.im * &self.im)
    }

    /// Modulus |z|.
    pub fn abs(&self) -> Float {
        self.norm_sqr().sqrt()
    }

    /// Principal argument in (−π, π].
    pub fn arg(&self) -> Float {
        let prec = self.prec();
        Float::with_val(prec, self.im.atan2_ref(&self.re))
    }

    pub fn scale_f(&self, f: &Float) -> Self {
        let prec = self.prec().max(f.prec());
        HPComplex {
            re: Float::with_val(prec, &self.re * f),
            im: Float::with_val(prec, &self.im * f),
        }
    }

    pub fn recip(&self) -> Self {
        let prec = self.prec();
        let n = self.norm_sqr();
        HPComplex {
            re: Float::with_val(prec, &self.re / &n),
            im: -Float::with_val(prec, &self.im / &n),
        }
    }

    /// Complex exponential.
    pub fn exp(&self) -> Self {
        let prec = self.prec();
        let r = Float::with_val(prec, self.re.exp_ref());
        let c = Float::with_val(prec, self.im.cos_ref());
        let s = Float::with_val(prec, self.im.sin_ref());
        HPComplex {
            re: Float::with_val(prec, &r * &c),
            im: Float::with_val(prec, &r * &s),
        }
    }

    /// Principal logarithm: log|z| + i·arg(z), arg ∈ (−π, π].
    pub fn ln(&self) -> Self {
        let prec = self.prec();
        let m = self.abs();
        HPComplex {
            re: Float::with_val(prec, m.ln_ref()),
            im: self.arg(),
        }
    }

    pub fn sin(&self) -> Self {
        let prec = self.prec();
        let (sr, cr) = (
            Float::with_val(prec, self.re.sin_ref()),
            Float::with_val(prec, self.re.cos_ref()),
        );
        let (sh, ch) = (
            Float::with_val(prec, self.im.sinh_ref()),
            Float::with_val(prec, self.im.cosh_ref()),
        );
        HPComplex {
            re: Float::with_val(prec, &sr * &ch),
            im: Float::with_val(prec, &cr * &sh),
        }
    }

    pub fn cos(&self) -> Self {
        let prec = self.prec();
        let (sr, cr) = (
            Float::with_val(prec, self.re.sin_ref()),
            Float::with_val(prec, self.re.cos_ref()),
        );
        let (sh, ch) = (
            Float::with_val(prec, self.im.sinh_ref()),
            Float::with_val(prec, self.im.cosh_ref()),
        );
        HPComplex {
            re: Float::with_val(prec, &cr * &ch),
            im: -Float::with_val(prec, &sr * &sh),
        }
    }

    /// Principal square root.
    pub fn sqrt(&self) -> Self {
        let half = HPComplex::from_f64(0.5, self.prec());
        self.pow(&half)
    }

    /// Principal power z^w = exp(w · Log z).
    pub fn pow(&self, w: &HPComplex) -> Self {
        if self.is_zero() {
            return HPComplex::zero(self.prec().max(w.prec()));
        }
        (w * &self.ln()).exp()
    }

    /// Integer power (exact repeated squaring; no branch issues).
    pub fn powi(&self, mut n: i64) -> Self {
        let prec = self.prec();
        if n == 0 {
            return HPComplex::one(prec);
        }
        let neg = n < 0;
        if neg {
            n = -n;
        }
        let mut base = self.clone();
        let mut acc = HPComplex::one(prec);
        while n > 0 {
            if n & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            n >>= 1;
        }
        if neg {
            acc.recip()
        } else {
            acc
        }
    }

    /// Distance |self − other|.
    pub fn dist(&self, other: &HPComplex) -> Float {
        (self - other).abs()
    }

    /// Coarse f64 view for diagnostics.
    pub fn to_f64(&self) -> (f64, f64) {
        (self.re.to_f64(), self.im.to_f64())
    }

    /// Decimal rendering with the given number of significant digits.
    pub fn to_decimal_string(&self, digits: usize) -> String {
        let fmt_part = |f: &Float| -> String {
            let (sign, mantissa, exp) = f.to_sign_string_exp_round(10, Some(digits), Round::Nearest);
            if mantissa.starts_with('0') || mantissa.is_empty() {
                return "0".to_string();
            }
            let e = exp.unwrap_or(0);
            format!(
                "{}0.{}e{}",
                if sign { "-" } else { "" },
                mantissa,
                e
            )
        };
        format!("{} + {}i", fmt_part(&self.re), fmt_part(&self.im))
    }
}

impl fmt::Debug for HPComplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (re, im) = self.to_f64();
        write!(f, "({:e} + {:e}i)", re, im)
    }
}

macro_rules! binop {
    ($trait:ident, $method:ident, |$a:ident, $b:ident, $prec:ident| $body:expr) => {
        impl $trait for &HPComplex {
            type Output = HPComplex;
            fn $method(self, rhs: &HPComplex) -> HPComplex {
                let $prec = self.prec().max(rhs.prec());
                let $a = self;
                let $b = rhs;
                $body
            }
        }
        impl $trait for HPComplex {
            type Output = HPComplex;
            fn $method(self, rhs: HPComplex) -> HPComplex {
                $trait::$method(&self, &rhs)
            }
        }
    };
}

binop!(Add, add, |a, b, prec| HPComplex {
    re: Float::with_val(prec, &a.re + &b.re),
    im: Float::with_val(prec, &a.im + &b.im),
});

binop!(Sub, sub, |a, b, prec| HPComplex {
    re: Float::with_val(prec, &a.re - &b.re),
    im: Float::with_val(prec, &a.im - &b.im),
});

binop!(Mul, mul, |a, b, prec| HPComplex {
    re: Float::with_val(prec, &a.re * &b.re) - Float::with_val(prec, &a.im * &b.im),
    im: Float::with_val(prec, &a.re * &b.im) + Float::with_val(prec, &a.im * &b.re),
});

binop!(Div, div, |a, b, prec| {
    let _ = prec;
    a * &b.recip()
});

impl Neg for &HPComplex {
    type Output = HPComplex;
    fn neg(self) -> HPComplex {
        HPComplex {
            re: -self.re.clone(),
            im: -self.im.clone(),
        }
    }
}

impl Neg for HPComplex {
    type Output = HPComplex;
    fn neg(self) -> HPComplex {
        -&self
    }
}

/// Real x^y for positive real base at matching precision.
pub fn real_pow(x: &Float, y: &Float) -> Float {
    Float::with_val(x.prec().max(y.prec()), x.pow(y))
}
