//! Exponent vectors with exact rational entries, and per-variable validity
//! windows for truncated series.

use core_algebra::rat::{rint, Rat};
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};
use std::fmt;

/// Exponent vector: one exact rational exponent per variable.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct FracVec(pub Vec<Rat>);

impl FracVec {
    pub fn zeros(n: usize) -> Self {
        FracVec(vec![Rat::zero(); n])
    }

    pub fn unit(n: usize, i: usize) -> Self {
        let mut v = vec![Rat::zero(); n];
        v[i] = rint(1);
        FracVec(v)
    }

    pub fn from_ints(v: &[i64]) -> Self {
        FracVec(v.iter().map(|&k| rint(k)).collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|e| e.is_zero())
    }

    pub fn add(&self, other: &FracVec) -> FracVec {
        FracVec(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn sub(&self, other: &FracVec) -> FracVec {
        FracVec(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
    }

    pub fn neg(&self) -> FracVec {
        FracVec(self.0.iter().map(|a| -a).collect())
    }

    pub fn scale(&self, c: &Rat) -> FracVec {
        FracVec(self.0.iter().map(|a| a * c).collect())
    }

    /// Sum of the entries (total exponent order).
    pub fn total(&self) -> Rat {
        self.0.iter().fold(Rat::zero(), |acc, e| acc + e)
    }

    pub fn is_nonnegative(&self) -> bool {
        self.0.iter().all(|e| !e.is_negative())
    }

    /// Smallest positive denominator N with N·e integral, per entry.
    pub fn denominators(&self) -> Vec<Rat> {
        self.0.iter().map(|e| Rat::from_integer(e.denom().clone())).collect()
    }
}

impl fmt::Debug for FracVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, e) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{e}")?;
        }
        write!(f, ")")
    }
}

impl Serialize for FracVec {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let strings: Vec<String> = self.0.iter().map(|e| e.to_string()).collect();
        strings.serialize(s)
    }
}

impl<'de> Deserialize<'de> for FracVec {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let strings = Vec::<String>::deserialize(d)?;
        let mut out = Vec::with_capacity(strings.len());
        for s in &strings {
            out.push(s.parse::<Rat>().map_err(serde::de::Error::custom)?);
        }
        Ok(FracVec(out))
    }
}

/// Per-variable closed exponent window `[lo_i, hi_i]` on which a truncated
/// series is complete, plus an optional bound on the total exponent order.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Window {
    pub lo: FracVec,
    pub hi: FracVec,
    /// When present, coefficients are only complete for total order ≤ this.
    pub total_hi: Option<Rat>,
}

#[derive(Serialize, Deserialize)]
struct WindowDoc {
    lo: FracVec,
    hi: FracVec,
    total_hi: Option<String>,
}

impl Serialize for Window {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        WindowDoc {
            lo: self.lo.clone(),
            hi: self.hi.clone(),
            total_hi: self.total_hi.as_ref().map(|t| t.to_string()),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for Window {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let doc = WindowDoc::deserialize(d)?;
        let total_hi = match doc.total_hi {
            Some(s) => Some(s.parse::<Rat>().map_err(serde::de::Error::custom)?),
            None => None,
        };
        Ok(Window { lo: doc.lo, hi: doc.hi, total_hi })
    }
}

impl Window {
    /// The standard window `[0, order]` in every variable.
    pub fn box_to(n: usize, order: &Rat) -> Self {
        Window {
            lo: FracVec::zeros(n),
            hi: FracVec(vec![order.clone(); n]),
            total_hi: None,
        }
    }

    pub fn nvars(&self) -> usize {
        self.lo.len()
    }

    pub fn contains(&self, d: &FracVec) -> bool {
        let inside = d
            .0
            .iter()
            .zip(self.lo.0.iter().zip(&self.hi.0))
            .all(|(e, (lo, hi))| e >= lo && e <= hi);
        inside
            && match &self.total_hi {
                Some(t) => d.total() <= *t,
                None => true,
            }
    }

    /// Translate the window by `a` (the valid region of a series multiplied
    /// by the monomial x^a).
    pub fn shift(&self, a: &FracVec) -> Window {
        Window {
            lo: self.lo.add(a),
            hi: self.hi.add(a),
            total_hi: self.total_hi.as_ref().map(|t| t + a.total()),
        }
    }

    /// Intersection of two windows over the same variables.
    pub fn intersect(&self, other: &Window) -> Window {
        let lo = FracVec(
            self.lo
                .0
                .iter()
                .zip(&other.lo.0)
                .map(|(a, b)| if a >= b { a.clone() } else { b.clone() })
                .collect(),
        );
        let hi = FracVec(
            self.hi
                .0
                .iter()
                .zip(&other.hi.0)
                .map(|(a, b)| if a <= b { a.clone() } else { b.clone() })
                .collect(),
        );
        let total_hi = match (&self.total_hi, &other.total_hi) {
            (Some(a), Some(b)) => Some(if a <= b { a.clone() } else { b.clone() }),
            (Some(a), None) => Some(a.clone()),
            (None, Some(b)) => Some(b.clone()),
            (None, None) => None,
        };
        Window { lo, hi, total_hi }
    }

    /// Validity window of a Cauchy product of series valid on `self`/`other`.
    pub fn product(&self, other: &Window) -> Window {
        let lo = self.lo.add(&other.lo);
        let hi = FracVec(
            (0..self.nvars())
                .map(|j| {
                    let a = &self.hi.0[j] + &other.lo.0[j];
                    let b = &self.lo.0[j] + &other.hi.0[j];
                    if a <= b {
                        a
                    } else {
                        b
                    }
                })
                .collect(),
        );
        let total_hi = match (&self.total_hi, &other.total_hi) {
            (None, None) => None,
            (ta, tb) => {
                let a = ta
                    .clone()
                    .map(|t| t + other.lo.total())
                    .unwrap_or_else(|| self.hi.total() + other.lo.total());
                let b = tb
                    .clone()
                    .map(|t| t + self.lo.total())
                    .unwrap_or_else(|| other.hi.total() + self.lo.total());
                Some(if a <= b { a } else { b })
            }
        };
        Window { lo, hi, total_hi }
    }
}
