//! q-number primitives shared by every q-identity.

use num_traits::{One, Zero};
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::rational::{as_integer, pow, to_f64, Rational};
use crate::scalar::Scalar;

/// The deformation parameter, `0 < q < 1`, held exactly or as a float.
#[derive(Clone, Debug, PartialEq)]
pub enum QPoint {
    Exact(Rational),
    Numeric(f64),
}

impl QPoint {
    pub fn exact(q: Rational) -> Result<Self> {
        if q > Rational::zero() && q < Rational::one() {
            Ok(QPoint::Exact(q))
        } else {
            Err(Error::Precondition(format!("q must lie in (0,1), got {q}")))
        }
    }

    pub fn numeric(q: f64) -> Result<Self> {
        if q > 0.0 && q < 1.0 {
            Ok(QPoint::Numeric(q))
        } else {
            Err(Error::Precondition(format!("q must lie in (0,1), got {q}")))
        }
    }

    pub fn from_scalar(q: &Scalar) -> Result<Self> {
        match q {
            Scalar::Exact(r) => Self::exact(r.clone()),
            Scalar::Float(v) => Self::numeric(*v),
        }
    }

    pub fn to_f64(&self) -> f64 {
        match self {
            QPoint::Exact(r) => to_f64(r),
            QPoint::Numeric(v) => *v,
        }
    }

    pub fn as_exact(&self) -> Option<&Rational> {
        match self {
            QPoint::Exact(r) => Some(r),
            QPoint::Numeric(_) => None,
        }
    }

    pub fn to_scalar(&self) -> Scalar {
        match self {
            QPoint::Exact(r) => Scalar::Exact(r.clone()),
            QPoint::Numeric(v) => Scalar::Float(*v),
        }
    }
}

impl Serialize for QPoint {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_scalar().serialize(serializer)
    }
}

/// `[k]_base = (1 - base^k)/(1 - base)` for any integer `k` and any
/// positive rational base (reduces to `k` at base 1).
pub fn qint(k: i64, base: &Rational) -> Rational {
    if base.is_one() {
        return Rational::from_integer(k.into());
    }
    (Rational::one() - pow(base, k)) / (Rational::one() - base)
}

/// `[lambda]_base` for real `lambda` and positive `base != 1`.
pub fn qnum_f64(lambda: f64, base: f64) -> f64 {
    if base == 1.0 {
        return lambda;
    }
    -(lambda * base.ln()).exp_m1() / (1.0 - base)
}

fn integral(lambda: &Rational, what: &str) -> Result<i64> {
    as_integer(lambda).ok_or_else(|| Error::Mode(format!("{what} with non-integer exponent {lambda}")))
}

/// `[lambda]_q = (1 - q^lambda)/(1 - q)`.
///
/// Exact when both inputs are exact; then `lambda` must be an integer so
/// that `q^lambda` is rational. A float on either side selects numeric mode.
pub fn q_number(lambda: &Scalar, q: &QPoint) -> Result<Scalar> {
    match (lambda, q) {
        (Scalar::Exact(l), QPoint::Exact(qr)) => {
            let k = integral(l, "q-number")?;
            Ok(Scalar::Exact(qint(k, qr)))
        }
        _ => Ok(Scalar::Float(qnum_f64(lambda.to_f64(), q.to_f64()))),
    }
}

/// `q^(-a) [y]_(q^(-a))`, evaluated as `(1 - q^(-a y))/(q^a - 1)`.
pub fn neg_base_exact(y: &Rational, q: &Rational, a: u32) -> Result<Rational> {
    let ay = y * Rational::from_integer(a.into());
    let k = integral(&ay, "transformed argument")?;
    Ok((Rational::one() - pow(q, -k)) / (pow(q, a.into()) - Rational::one()))
}

pub fn neg_base_f64(y: f64, q: f64, a: u32) -> f64 {
    let lq = q.ln();
    let a = f64::from(a);
    -(-a * y * lq).exp_m1() / (a * lq).exp_m1()
}

/// The transformed argument `q^(-a) [y]_(q^(-a))` in exact or numeric mode.
/// Exact mode requires `a y` to be an integer.
pub fn q_number_negative_base(y: &Scalar, q: &QPoint, a: u32) -> Result<Scalar> {
    if a == 0 {
        return Err(Error::Precondition("a must be positive".into()));
    }
    match (y, q) {
        (Scalar::Exact(yr), QPoint::Exact(qr)) => neg_base_exact(yr, qr, a).map(Scalar::Exact),
        _ => Ok(Scalar::Float(neg_base_f64(y.to_f64(), q.to_f64(), a))),
    }
}

/// `S^(j)_(m:base)(a) = sum_{i<a} (-1)^i base^(j i) [i]_base^m` for an
/// arbitrary positive rational base; negative-power variants pass
/// `q^(-b)` here directly.
pub fn q_alt_power_sum_exact(m: u32, j: i64, a: u32, base: &Rational) -> Rational {
    let mut acc = Rational::zero();
    for i in 0..i64::from(a) {
        let term = pow(base, j * i) * pow(&qint(i, base), m.into());
        if i % 2 == 0 {
            acc += term;
        } else {
            acc -= term;
        }
    }
    acc
}

pub fn q_alt_power_sum_f64(m: u32, j: i64, a: u32, base: f64) -> f64 {
    let mut acc = crate::numeric::CompensatedSum::default();
    for i in 0..i64::from(a) {
        let term = base.powf((j * i) as f64) * qnum_f64(i as f64, base).powi(m as i32);
        acc.add(if i % 2 == 0 { term } else { -term });
    }
    acc.value()
}

pub fn q_alt_power_sum(m: u32, j: i64, a: u32, q: &QPoint) -> Scalar {
    match q {
        QPoint::Exact(r) => Scalar::Exact(q_alt_power_sum_exact(m, j, a, r)),
        QPoint::Numeric(v) => Scalar::Float(q_alt_power_sum_f64(m, j, a, *v)),
    }
}
