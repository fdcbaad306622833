//! Classical Genocchi numbers and polynomials, the alternating power sum
//! `S_m(a)` and the classical (a, b) symmetry identity.

use std::sync::RwLock;

use num_bigint::BigInt;
use num_traits::{One, Pow, Zero};

use crate::error::{Error, Result};
use crate::rational::{binomial_q, int, pow, Polynomial, Rational};
use crate::report::{params, Check, IdentityId, IdentityReport};
use crate::scalar::Scalar;

/// Append-only table of Genocchi numbers, `values[n] = G_n`.
#[derive(Clone, Debug, Default)]
pub struct GenocchiTable {
    values: Vec<Rational>,
}

impl GenocchiTable {
    pub const fn new() -> Self {
        Self { values: Vec::new() }
    }

    /// Table holding `G_0..=G_max_n`.
    pub fn with_max(max_n: usize) -> Self {
        let mut t = Self::new();
        t.extend_to(max_n);
        t
    }

    pub fn values(&self) -> &[Rational] {
        &self.values
    }

    pub fn get(&self, n: usize) -> Option<&Rational> {
        self.values.get(n)
    }

    /// Fills entries up to index `max_n` using
    /// `sum_{k<=n} C(n,k) G_k + G_n = 2[n = 1]` for `n >= 1`, seeded with `G_0 = 0`.
    pub fn extend_to(&mut self, max_n: usize) {
        if self.values.is_empty() {
            self.values.push(Rational::zero());
        }
        let two = int(2);
        for n in self.values.len()..=max_n {
            let mut acc: Rational = (0..n)
                .map(|k| binomial_q(n as u64, k as u64) * &self.values[k])
                .sum();
            if n == 1 {
                acc -= &two;
            }
            self.values.push(-acc / &two);
        }
    }
}

static TABLE: RwLock<GenocchiTable> = RwLock::new(GenocchiTable::new());

/// `G_n`, memoized in a process-wide table.
pub fn genocchi_number(n: usize) -> Rational {
    if let Some(v) = TABLE.read().expect("genocchi table poisoned").get(n) {
        return v.clone();
    }
    let mut table = TABLE.write().expect("genocchi table poisoned");
    table.extend_to(n);
    table.values[n].clone()
}

/// `G_n(x) = sum_k C(n,k) G_k x^(n-k)`.
pub fn genocchi_polynomial(n: usize) -> Polynomial {
    let mut coeffs = vec![Rational::zero(); n + 1];
    for k in 0..=n {
        coeffs[n - k] = binomial_q(n as u64, k as u64) * genocchi_number(k);
    }
    Polynomial::from_coeffs(coeffs)
}

/// `S_m(a) = sum_{j<a} (-1)^j j^m` with `0^0 = 1`.
pub fn alt_power_sum(m: u32, a: u32) -> Rational {
    let mut acc = BigInt::zero();
    for j in 0..a {
        let term: BigInt = Pow::pow(BigInt::from(j), m);
        if j % 2 == 0 {
            acc += term;
        } else {
            acc -= term;
        }
    }
    Rational::from_integer(acc)
}

pub(crate) fn require_odd(name: &str, v: u32) -> Result<()> {
    if v % 2 == 1 {
        Ok(())
    } else {
        Err(Error::Precondition(format!("{name} must be an odd positive integer, got {v}")))
    }
}

/// One side of the classical identity:
/// `sum_i C(m,i) a^(i-1) b^(m-i) G_i(bx) S_(m-i)(a)`.
pub fn theorem1_side(a: u32, b: u32, m: u32, x: &Rational) -> Rational {
    let ar = int(a.into());
    let br = int(b.into());
    let bx = &br * x;
    (0..=m)
        .map(|i| {
            binomial_q(m.into(), i.into())
                * pow(&ar, i64::from(i) - 1)
                * pow(&br, i64::from(m - i))
                * genocchi_polynomial(i as usize).eval(&bx)
                * alt_power_sum(m - i, a)
        })
        .sum()
}

/// Exact check of the classical symmetry identity for odd `a`, `b`.
pub fn verify_theorem1(a: u32, b: u32, m: u32, x: &Rational) -> Result<IdentityReport> {
    require_odd("a", a)?;
    require_odd("b", b)?;
    Ok(IdentityReport::exact(
        IdentityId::ThmClassical,
        params([
            ("a", Scalar::from(a)),
            ("b", Scalar::from(b)),
            ("m", Scalar::from(m)),
            ("x", Scalar::Exact(x.clone())),
        ]),
        theorem1_side(a, b, m, x),
        theorem1_side(b, a, m, x),
        Check::Assert,
    ))
}

/// True when every entry is an integer.
pub fn is_integral(values: &[Rational]) -> bool {
    values.iter().all(|v| v.denom().is_one())
}
