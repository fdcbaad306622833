//! Floating-point machinery shared by the series engines: truncation
//! targets, compensated accumulators and a double-double type.

use std::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};

/// Target relative error plus a hard cap on the number of series terms.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Precision {
    eps: f64,
    max_terms: usize,
}

impl Precision {
    pub const MIN_EPS: f64 = 1e-14;
    pub const MIN_TERMS: usize = 64;

    pub fn new(eps: f64, max_terms: usize) -> Result<Self> {
        if !(eps >= Self::MIN_EPS && eps.is_finite()) {
            return Err(Error::Precondition(format!(
                "eps must be finite and >= {:e}, got {eps:e}",
                Self::MIN_EPS
            )));
        }
        if max_terms < Self::MIN_TERMS {
            return Err(Error::Precondition(format!(
                "max_terms must be >= {}, got {max_terms}",
                Self::MIN_TERMS
            )));
        }
        Ok(Self { eps, max_terms })
    }

    pub fn with_eps(eps: f64) -> Result<Self> {
        Self::new(eps, Self::default().max_terms)
    }

    pub fn eps(&self) -> f64 {
        self.eps
    }

    pub fn max_terms(&self) -> usize {
        self.max_terms
    }
}

impl Default for Precision {
    fn default() -> Self {
        Self {
            eps: Self::MIN_EPS,
            max_terms: 5_000_000,
        }
    }
}

/// A truncated series value together with the number of terms summed and
/// an upper bound on the absolute truncation error.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct SeriesEstimate<T> {
    pub value: T,
    pub terms: usize,
    pub bound: f64,
}

/// Neumaier's variant of Kahan summation.
#[derive(Clone, Copy, Debug, Default)]
pub struct CompensatedSum {
    sum: f64,
    comp: f64,
}

impl CompensatedSum {
    pub fn add(&mut self, x: f64) {
        let t = self.sum + x;
        if self.sum.abs() >= x.abs() {
            self.comp += (self.sum - t) + x;
        } else {
            self.comp += (x - t) + self.sum;
        }
        self.sum = t;
    }

    pub fn value(&self) -> f64 {
        self.sum + self.comp
    }
}

/// Values that can be accumulated with compensation.
pub trait Accumulate: Copy {
    type Acc: Default;
    fn push(acc: &mut Self::Acc, x: Self);
    fn total(acc: &Self::Acc) -> Self;
    fn magnitude(self) -> f64;
}

impl Accumulate for f64 {
    type Acc = CompensatedSum;

    fn push(acc: &mut CompensatedSum, x: f64) {
        acc.add(x);
    }

    fn total(acc: &CompensatedSum) -> f64 {
        acc.value()
    }

    fn magnitude(self) -> f64 {
        self.abs()
    }
}

impl Accumulate for Complex64 {
    type Acc = (CompensatedSum, CompensatedSum);

    fn push(acc: &mut Self::Acc, x: Complex64) {
        acc.0.add(x.re);
        acc.1.add(x.im);
    }

    fn total(acc: &Self::Acc) -> Complex64 {
        Complex64::new(acc.0.value(), acc.1.value())
    }

    fn magnitude(self) -> f64 {
        self.norm()
    }
}

/// Unevaluated sum `hi + lo` with `|lo| <= ulp(hi)/2`, giving roughly 32
/// significant decimal digits.
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct DoubleDouble {
    hi: f64,
    lo: f64,
}

#[inline]
fn two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    let bb = s - a;
    (s, (a - (s - bb)) + (b - bb))
}

#[inline]
fn quick_two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    (s, b - (s - a))
}

impl DoubleDouble {
    pub const ONE: DoubleDouble = DoubleDouble { hi: 1.0, lo: 0.0 };

    pub fn hi(self) -> f64 {
        self.hi
    }

    pub fn to_f64(self) -> f64 {
        self.hi + self.lo
    }

    pub fn abs(self) -> Self {
        if self.hi < 0.0 {
            -self
        } else {
            self
        }
    }

    pub fn powi(self, mut e: u32) -> Self {
        let mut base = self;
        let mut acc = Self::ONE;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base;
            }
            e >>= 1;
            if e > 0 {
                base = base * base;
            }
        }
        acc
    }
}

impl From<f64> for DoubleDouble {
    fn from(hi: f64) -> Self {
        Self { hi, lo: 0.0 }
    }
}

impl Add for DoubleDouble {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        let (s, e) = two_sum(self.hi, rhs.hi);
        let (t, f) = two_sum(self.lo, rhs.lo);
        let (s, e) = quick_two_sum(s, e + t);
        let (hi, lo) = quick_two_sum(s, e + f);
        Self { hi, lo }
    }
}

impl Neg for DoubleDouble {
    type Output = Self;
    fn neg(self) -> Self {
        Self {
            hi: -self.hi,
            lo: -self.lo,
        }
    }
}

impl Sub for DoubleDouble {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        self + (-rhs)
    }
}

impl Mul for DoubleDouble {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        let p = self.hi * rhs.hi;
        let e = self.hi.mul_add(rhs.hi, -p) + (self.hi * rhs.lo + self.lo * rhs.hi);
        let (hi, lo) = quick_two_sum(p, e);
        Self { hi, lo }
    }
}
