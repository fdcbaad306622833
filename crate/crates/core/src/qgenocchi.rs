//! Modified q-Genocchi numbers and polynomials.
//!
//! Two engines evaluate `G_{n,q}(x) = n [2]_q sum_{m>=0} (-q)^m (x + [m]_q)^(n-1)`,
//! the `t^n/n!` coefficient of the generating function
//! `[2]_q t sum_m (-q)^m e^((x + [m]_q) t)`:
//!
//! * the exact engine expands `[m]_q^k` binomially in powers of `q^m` and
//!   sums each geometric series in closed form,
//!   `sum_m (-q)^m q^(m j) = 1/(1 + q^(j+1))`;
//! * the series engine truncates the alternating sum in double-double
//!   arithmetic with a rigorous geometric tail bound.
//!
//! The exact engine is a resummation and is cross-checked against the
//! series engine before any identity verdict is trusted.

use num_traits::{One, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::numeric::{DoubleDouble, Precision, SeriesEstimate};
use crate::qcore::QPoint;
use crate::rational::{binomial_q, pow, Polynomial, Rational};
use crate::scalar::Scalar;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Engine {
    Exact,
    Series,
}

/// A single evaluated `G_{n,q}(x)`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct QGenocchiValue {
    pub n: u32,
    pub q: QPoint,
    pub x: Scalar,
    pub value: Scalar,
    pub engine: Engine,
    /// Series engine only: number of terms summed.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub terms: Option<usize>,
    /// Series engine only: bound on the absolute truncation error.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub bound: Option<f64>,
}

fn check_q(q: &Rational) -> Result<()> {
    QPoint::exact(q.clone()).map(|_| ())
}

/// `mu_k = (1 - q)^(-k) sum_{j<=k} C(k,j) (-1)^j / (1 + q^(j+1))`, the
/// resummed value of `sum_m (-q)^m [m]_q^k`, for `k < count`.
fn resummed_moments(count: usize, q: &Rational) -> Vec<Rational> {
    let one = Rational::one();
    let inv_one_minus_q = (&one - q).recip();
    let recips: Vec<Rational> = (0..count)
        .map(|j| (&one + pow(q, j as i64 + 1)).recip())
        .collect();
    let mut scale = Rational::one();
    (0..count)
        .map(|k| {
            let mut s = Rational::zero();
            for (j, r) in recips.iter().enumerate().take(k + 1) {
                let t = binomial_q(k as u64, j as u64) * r;
                if j % 2 == 0 {
                    s += t;
                } else {
                    s -= t;
                }
            }
            let out = s * &scale;
            scale *= &inv_one_minus_q;
            out
        })
        .collect()
}

fn two_q(q: &Rational) -> Rational {
    Rational::one() + q
}

/// `G_{n,q}(x)` evaluated exactly.
pub fn mod_q_genocchi_exact(n: u32, q: &Rational, x: &Rational) -> Result<Rational> {
    check_q(q)?;
    Ok(exact_unchecked(n, q, x))
}

pub(crate) fn exact_unchecked(n: u32, q: &Rational, x: &Rational) -> Rational {
    if n == 0 {
        return Rational::zero();
    }
    let d = (n - 1) as usize;
    let mu = resummed_moments(d + 1, q);
    let mut sum = Rational::zero();
    let mut xp = Rational::one();
    // k runs downward so x^(d-k) grows with the loop
    for k in (0..=d).rev() {
        sum += binomial_q(d as u64, k as u64) * &xp * &mu[k];
        xp *= x;
    }
    sum * Rational::from_integer(n.into()) * two_q(q)
}

/// `G_{n,q}(x)` as a polynomial in `x`, of degree `n - 1` with leading
/// coefficient `n` (zero polynomial for `n = 0`).
pub fn mod_q_genocchi_poly(n: u32, q: &Rational) -> Result<Polynomial> {
    check_q(q)?;
    Ok(poly_unchecked(n, q))
}

pub(crate) fn poly_unchecked(n: u32, q: &Rational) -> Polynomial {
    if n == 0 {
        return Polynomial::zero();
    }
    let d = (n - 1) as usize;
    let mu = resummed_moments(d + 1, q);
    let scale = Rational::from_integer(n.into()) * two_q(q);
    let coeffs = (0..=d)
        .map(|i| binomial_q(d as u64, (d - i) as u64) * &mu[d - i] * &scale)
        .collect();
    Polynomial::from_coeffs(coeffs)
}

/// Truncated series for `G_{n,q}(x)`.
///
/// Summation stops at the first `M` with
/// `q^(M+1)/(1-q) * sup_{m>M} |x + [m]_q|^(n-1) <= eps * |partial sum|`
/// (both sides without the common factor `n [2]_q`). The supremum is taken
/// at the endpoints of `[[M+1]_q, 1/(1-q)]` since `[m]_q` increases
/// monotonically to `1/(1-q)`.
pub fn mod_q_genocchi_series(n: u32, q: f64, x: f64, prec: &Precision) -> Result<SeriesEstimate<f64>> {
    QPoint::numeric(q)?;
    if !x.is_finite() {
        return Err(Error::Domain(format!("x must be finite, got {x}")));
    }
    if n == 0 {
        return Ok(SeriesEstimate { value: 0.0, terms: 0, bound: 0.0 });
    }
    let e = n - 1;
    let prefactor = f64::from(n) * (1.0 + q);
    let limit = 1.0 / (1.0 - q);
    let qd = DoubleDouble::from(q);
    let xd = DoubleDouble::from(x);
    let mut sign_pow = DoubleDouble::ONE; // (-q)^m
    let mut qm = DoubleDouble::from(0.0); // [m]_q
    let mut sum = DoubleDouble::from(0.0);
    let mut last_bound = f64::INFINITY;
    for m in 0..prec.max_terms() {
        sum = sum + sign_pow * (xd + qm).powi(e);
        sign_pow = -(sign_pow * qd);
        qm = DoubleDouble::ONE + qd * qm;
        // qm now holds [m+1]_q and |sign_pow| = q^(m+1)
        let near = (x + qm.to_f64()).abs();
        let far = (x + limit).abs();
        let tail = sign_pow.hi().abs() * limit * near.max(far).powi(e as i32);
        last_bound = prefactor * tail;
        let partial = sum.to_f64().abs();
        if tail <= prec.eps() * partial || tail == 0.0 {
            return Ok(SeriesEstimate {
                value: prefactor * sum.to_f64(),
                terms: m + 1,
                bound: last_bound,
            });
        }
    }
    Err(Error::Precision {
        terms: prec.max_terms(),
        estimate: (prefactor * sum.to_f64()).into(),
        bound: last_bound,
    })
}

/// `sum_k C(n,k) G_{k,q}(x) y^(n-k)`, which equals `G_{n,q}(x + y)`.
pub fn addition_shift(n: u32, q: &Rational, x: &Rational, y: &Rational) -> Result<Rational> {
    check_q(q)?;
    let mut acc = Rational::zero();
    for k in 0..=n {
        acc += binomial_q(n.into(), k.into()) * exact_unchecked(k, q, x) * pow(y, (n - k).into());
    }
    Ok(acc)
}

/// Evaluates `G_{n,q}(x)` with whichever engine the inputs allow: exact
/// when `q` and `x` are both exact, otherwise the series engine.
pub fn evaluate(n: u32, q: &QPoint, x: &Scalar, prec: &Precision) -> Result<QGenocchiValue> {
    match (q, x) {
        (QPoint::Exact(qr), Scalar::Exact(xr)) => Ok(QGenocchiValue {
            n,
            q: q.clone(),
            x: x.clone(),
            value: Scalar::Exact(exact_unchecked(n, qr, xr)),
            engine: Engine::Exact,
            terms: None,
            bound: None,
        }),
        _ => {
            let est = mod_q_genocchi_series(n, q.to_f64(), x.to_f64(), prec)?;
            Ok(QGenocchiValue {
                n,
                q: q.clone(),
                x: x.clone(),
                value: Scalar::Float(est.value),
                engine: Engine::Series,
                terms: Some(est.terms),
                bound: Some(est.bound),
            })
        }
    }
}

/// Value of `G_{n,q}(x)` in f64 through the series engine.
pub(crate) fn series_value(n: u32, q: f64, x: f64, prec: &Precision) -> Result<f64> {
    mod_q_genocchi_series(n, q, x, prec).map(|e| e.value)
}

/// Unit-free distance used by the engine cross-check:
/// `|exact - series| / max(1, |exact|)`.
pub fn engine_discrepancy(exact: f64, series: f64) -> f64 {
    (exact - series).abs() / exact.abs().max(1.0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::genocchi::genocchi_number;
    use crate::rational::{int, rat, to_f64};
    use num_traits::Signed;

    fn prec() -> Precision {
        Precision::default()
    }

    #[test]
    fn exact_examples() {
        let q = rat(1, 2);
        assert_eq!(mod_q_genocchi_exact(0, &q, &rat(3, 7)).unwrap(), int(0));
        for x in [int(0), rat(1, 2), int(-3)] {
            for q in [rat(1, 3), rat(9, 10)] {
                assert_eq!(mod_q_genocchi_exact(1, &q, &x).unwrap(), int(1));
            }
        }
        assert_eq!(mod_q_genocchi_exact(2, &q, &int(0)).unwrap(), rat(-4, 5));
        // 2x - 2q/(1+q^2) at q = 1/3, x = 5
        let q3 = rat(1, 3);
        let expect = int(10) - int(2) * &q3 / (int(1) + &q3 * &q3);
        assert_eq!(mod_q_genocchi_exact(2, &q3, &int(5)).unwrap(), expect);
        assert!(mod_q_genocchi_exact(2, &int(1), &int(0)).is_err());
    }

    #[test]
    fn poly_examples() {
        let q = rat(1, 2);
        assert!(mod_q_genocchi_poly(0, &q).unwrap().is_zero());
        assert_eq!(mod_q_genocchi_poly(1, &q).unwrap(), Polynomial::constant(int(1)));
        assert_eq!(
            mod_q_genocchi_poly(2, &q).unwrap(),
            Polynomial::from_coeffs(vec![rat(-4, 5), int(2)])
        );
        for n in 1..10u32 {
            let p = mod_q_genocchi_poly(n, &rat(2, 7)).unwrap();
            assert_eq!(p.degree(), Some((n - 1) as usize));
            assert_eq!(p.coeff((n - 1) as usize), int(n.into()));
            assert_eq!(p.coeff(0), mod_q_genocchi_exact(n, &rat(2, 7), &int(0)).unwrap());
            for x in [rat(1, 2), int(-2)] {
                assert_eq!(p.eval(&x), mod_q_genocchi_exact(n, &rat(2, 7), &x).unwrap());
            }
        }
    }

    #[test]
    fn series_examples() {
        let e = mod_q_genocchi_series(1, 0.37, 2.5, &prec()).unwrap();
        assert!((e.value - 1.0).abs() < 1e-14);
        let e = mod_q_genocchi_series(2, 0.5, 0.0, &prec()).unwrap();
        assert!((e.value + 0.8).abs() < 1e-14);
        assert!(e.bound <= 1e-14);
        assert_eq!(mod_q_genocchi_series(0, 0.5, 1.0, &prec()).unwrap().value, 0.0);
    }

    #[test]
    fn series_near_one_approaches_classical() {
        for n in 1..=6u32 {
            let s = mod_q_genocchi_series(n, 0.999, 0.0, &prec()).unwrap().value;
            let e = to_f64(&mod_q_genocchi_exact(n, &rat(999, 1000), &int(0)).unwrap());
            assert!(engine_discrepancy(e, s) < 1e-10, "n={n}: {s} vs {e}");
            let g = to_f64(&genocchi_number(n as usize));
            assert!((s - g).abs() < 1e-2, "n={n}: {s} vs G_n={g}");
        }
    }

    #[test]
    fn series_term_cap() {
        let p = Precision::new(1e-14, 64).unwrap();
        match mod_q_genocchi_series(4, 0.99, 0.0, &p) {
            Err(Error::Precision { terms, bound, .. }) => {
                assert_eq!(terms, 64);
                assert!(bound > 0.0);
            }
            other => panic!("expected precision error, got {other:?}"),
        }
    }

    #[test]
    fn engines_agree_on_grid() {
        for n in 0..=8u32 {
            for (qn, qd) in [(3, 10), (1, 2), (7, 10)] {
                for (xn, xd) in [(0, 1), (1, 2), (1, 1)] {
                    let q = rat(qn, qd);
                    let x = rat(xn, xd);
                    let e = to_f64(&mod_q_genocchi_exact(n, &q, &x).unwrap());
                    let s = mod_q_genocchi_series(n, to_f64(&q), to_f64(&x), &prec()).unwrap().value;
                    assert!(engine_discrepancy(e, s) <= 1e-12, "n={n} q={q} x={x}: {e} vs {s}");
                }
            }
        }
    }

    #[test]
    fn addition_formula() {
        assert_eq!(addition_shift(2, &rat(1, 2), &int(0), &int(1)).unwrap(), rat(6, 5));
        for n in 0..=10u32 {
            for q in [rat(1, 3), rat(1, 2)] {
                for x in [int(0), rat(1, 2), int(1)] {
                    assert_eq!(
                        addition_shift(n, &q, &x, &int(0)).unwrap(),
                        mod_q_genocchi_exact(n, &q, &x).unwrap()
                    );
                    for y in [int(0), rat(1, 2), int(1)] {
                        let direct = mod_q_genocchi_exact(n, &q, &(&x + &y)).unwrap();
                        assert_eq!(addition_shift(n, &q, &x, &y).unwrap(), direct);
                    }
                }
            }
        }
    }

    #[test]
    fn classical_limit_is_monotone() {
        for n in 0..=6u32 {
            let g = genocchi_number(n as usize);
            let diffs: Vec<Rational> = (1..=4)
                .map(|k| {
                    let q = int(1) - rat(1, 10i64.pow(k));
                    (mod_q_genocchi_exact(n, &q, &int(0)).unwrap() - &g).abs()
                })
                .collect();
            if diffs.iter().all(Zero::is_zero) {
                continue;
            }
            assert!(diffs.windows(2).all(|w| w[1] < w[0]), "n={n}");
            assert!(diffs[3] <= rat(1, 1000), "n={n}");
        }
    }

    #[test]
    fn evaluate_dispatch() {
        let v = evaluate(2, &QPoint::Exact(rat(1, 2)), &Scalar::Exact(int(0)), &prec()).unwrap();
        assert_eq!(v.engine, Engine::Exact);
        assert_eq!(v.value, Scalar::Exact(rat(-4, 5)));
        let v = evaluate(2, &QPoint::Exact(rat(1, 2)), &Scalar::Float(0.0), &prec()).unwrap();
        assert_eq!(v.engine, Engine::Series);
        assert!(v.terms.unwrap() > 0);
    }
}
