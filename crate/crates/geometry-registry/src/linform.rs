//! Rational affine forms in the summation indices of a hypergeometric
//! generator: `c0 + Σ_i c_i · d_i` with exact rational coefficients.

use core_algebra::rat::{rat, rint, Rat};
use num_traits::Zero;
use series_engine::FracVec;

/// Affine form in the exponent vector d.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct LinForm {
    pub constant: Rat,
    pub coeffs: Vec<Rat>,
}

impl LinForm {
    pub fn zero(nvars: usize) -> Self {
        LinForm {
            constant: Rat::zero(),
            coeffs: vec![Rat::zero(); nvars],
        }
    }

    pub fn constant(nvars: usize, c: Rat) -> Self {
        LinForm {
            constant: c,
            coeffs: vec![Rat::zero(); nvars],
        }
    }

    /// The form `c · d_i`.
    pub fn var(nvars: usize, i: usize, c: Rat) -> Self {
        let mut coeffs = vec![Rat::zero(); nvars];
        coeffs[i] = c;
        LinForm {
            constant: Rat::zero(),
            coeffs,
        }
    }

    /// Convenience: `(n_0/den)·d_0 + (n_1/den)·d_1 + …` for integer data.
    pub fn from_ints(nums: &[i64], den: i64) -> Self {
        LinForm {
            constant: Rat::zero(),
            coeffs: nums.iter().map(|&n| rat(n, den)).collect(),
        }
    }

    pub fn nvars(&self) -> usize {
        self.coeffs.len()
    }

    pub fn add(&self, other: &LinForm) -> LinForm {
        LinForm {
            constant: &self.constant + &other.constant,
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    pub fn neg(&self) -> LinForm {
        LinForm {
            constant: -&self.constant,
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }

    pub fn scale(&self, c: &Rat) -> LinForm {
        LinForm {
            constant: &self.constant * c,
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
        }
    }

    pub fn eval(&self, d: &FracVec) -> Rat {
        let mut acc = self.constant.clone();
        for (c, x) in self.coeffs.iter().zip(&d.0) {
            acc += c * x;
        }
        acc
    }
}

/// Fractional part in `[0, 1)`.
pub fn frac_part(x: &Rat) -> Rat {
    x - x.floor()
}

/// The values `b` with `lo < b ≤ hi` and `fr(b) = fr(frref)`, ascending.
/// Exact rational endpoints; the step is 1.
pub fn fractional_range(lo: &Rat, hi: &Rat, frref: &Rat) -> Vec<Rat> {
    let phi = frac_part(frref);
    // b = phi + n with n integer and lo − phi < n ≤ hi − phi.
    let n_lo = (lo - &phi).floor() + rint(1);
    let n_hi = (hi - &phi).floor();
    let mut out = Vec::new();
    let mut n = n_lo;
    while n <= n_hi {
        out.push(&phi + &n);
        n += rint(1);
    }
    out
}
