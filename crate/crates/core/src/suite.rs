//! The default verification suite and report serialization.
//!
//! Rows are generated in a fixed order: identity blocks in the order of
//! [`IdentityId`], and inside a block nested loops over the parameters in
//! lexicographic order of their names.

use std::io::Write;

use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::genocchi::{genocchi_number, is_integral, verify_theorem1};
use crate::numeric::Precision;
use crate::qcore::QPoint;
use crate::qgenocchi::{addition_shift, engine_discrepancy, exact_unchecked, mod_q_genocchi_series};
use crate::rational::{int, rat, to_f64, Rational};
use crate::report::{params, Check, IdentityId, IdentityReport, Verdict};
use crate::scalar::Scalar;
use crate::symmetry::{
    audit_thm25, check_thm25_limit, probe_corollary_a2, q_near_one, verify_distribution, verify_remark1,
    verify_thm_qgenocchi, verify_thm_qzeta, ExactnessWitness, Variant,
};
use crate::zeta::{verify_e7, verify_e8};

/// Genocchi numbers as listed for `n <= 8`.
pub const GENOCCHI_LIST: [i64; 9] = [0, 1, -1, 0, 1, 0, -3, 0, 17];

/// Threshold of the exact/series engine cross-check.
pub const ENGINE_TOLERANCE: f64 = 1e-12;

/// Threshold of the q -> 1 limit of the q-Genocchi numbers at the last
/// step.
pub const Q_LIMIT_TOLERANCE: f64 = 1e-3;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Suite {
    Default,
}

impl std::str::FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "default" => Ok(Suite::Default),
            _ => Err(Error::Parse(format!("unknown suite {s}"))),
        }
    }
}

/// Rows for the listed Genocchi numbers, the vanishing of `G_(2k+1)` for
/// `1 <= k <= odd_max` and integrality of the whole table.
pub fn genocchi_list_reports(odd_max: u32) -> Vec<IdentityReport> {
    let mut out = Vec::new();
    for (n, &g) in GENOCCHI_LIST.iter().enumerate() {
        out.push(IdentityReport::exact(
            IdentityId::GenocchiList,
            params([("n", n as i64)]),
            genocchi_number(n),
            int(g),
            Check::Assert,
        ));
    }
    for k in 1..=odd_max {
        let n = 2 * k as usize + 1;
        out.push(IdentityReport::exact(
            IdentityId::GenocchiList,
            params([("n", n as i64)]),
            genocchi_number(n),
            Rational::zero(),
            Check::Assert,
        ));
    }
    let max = 2 * odd_max as usize + 1;
    let values: Vec<Rational> = (0..=max).map(genocchi_number).collect();
    out.push(IdentityReport::exact(
        IdentityId::GenocchiList,
        params([("integral-up-to", max as i64)]),
        int(is_integral(&values).into()),
        int(1),
        Check::Assert,
    ));
    out
}

/// Exact engine against series engine for `G_{n,q}(x)`; the residual is
/// [`engine_discrepancy`].
pub fn engine_agreement(n: u32, q: &Rational, x: &Rational, prec: &Precision) -> Result<IdentityReport> {
    QPoint::exact(q.clone())?;
    let exact = to_f64(&exact_unchecked(n, q, x));
    let series = mod_q_genocchi_series(n, to_f64(q), to_f64(x), prec)?.value;
    Ok(IdentityReport::numeric_with_residual(
        IdentityId::EngineAgreement,
        params([
            ("n", Scalar::from(n)),
            ("q", Scalar::Exact(q.clone())),
            ("x", Scalar::Exact(x.clone())),
        ]),
        exact,
        series,
        engine_discrepancy(exact, series),
        ENGINE_TOLERANCE,
        Check::Assert,
    ))
}

/// `|G_{n,q} - G_n|` along `q = 1 - 10^(-k)`, `k = 1..=k_max`, in exact
/// arithmetic. The row compares the value at `k_max` with `G_n` (absolute
/// residual) and fails unless the distances strictly decrease; a sequence
/// that is identically zero counts as converged.
pub fn q_limit(n: u32, k_max: u32) -> IdentityReport {
    let target = genocchi_number(n as usize);
    let mut values = Vec::new();
    let mut gaps: Vec<Rational> = Vec::new();
    for k in 1..=k_max {
        let v = exact_unchecked(n, &q_near_one(k), &Rational::zero());
        gaps.push((&v - &target).abs());
        values.push(v);
    }
    let monotone = gaps.iter().all(Zero::is_zero) || gaps.windows(2).all(|g| g[1] < g[0]);
    let last = values.last().cloned().unwrap_or_default();
    let gap = gaps.last().map(to_f64).unwrap_or_default();
    let mut row = IdentityReport::numeric_with_residual(
        IdentityId::QLimit,
        params([
            ("k", Scalar::from(k_max)),
            ("monotone", Scalar::from(i64::from(monotone))),
            ("n", Scalar::from(n)),
        ]),
        to_f64(&last),
        to_f64(&target),
        gap,
        Q_LIMIT_TOLERANCE,
        Check::Assert,
    );
    if !monotone {
        row.verdict = Verdict::Fail;
    }
    row
}

/// The exact addition formula `sum_k C(n,k) G_{k,q}(x) y^(n-k) = G_{n,q}(x+y)`.
pub fn verify_addition(n: u32, q: &Rational, x: &Rational, y: &Rational) -> Result<IdentityReport> {
    let lhs = addition_shift(n, q, x, y)?;
    let rhs = exact_unchecked(n, q, &(x + y));
    Ok(IdentityReport::exact(
        IdentityId::Addition,
        params([
            ("n", Scalar::from(n)),
            ("q", Scalar::Exact(q.clone())),
            ("x", Scalar::Exact(x.clone())),
            ("y", Scalar::Exact(y.clone())),
        ]),
        lhs,
        rhs,
        Check::Assert,
    ))
}

fn halves() -> [Rational; 3] {
    [int(0), rat(1, 2), int(1)]
}

/// Runs the full default grid.
pub fn default_suite(prec: &Precision) -> Result<Vec<IdentityReport>> {
    let mut out = genocchi_list_reports(25);

    for a in [1u32, 3, 5, 7, 9] {
        for b in [1u32, 3, 5, 7, 9] {
            for m in 0..=12 {
                for x in [int(0), rat(1, 2), int(1), rat(-1, 3)] {
                    out.push(verify_theorem1(a, b, m, &x)?);
                }
            }
        }
    }

    for n in 0..=8 {
        for q in [rat(3, 10), rat(1, 2), rat(7, 10)] {
            for x in halves() {
                out.push(engine_agreement(n, &q, &x, prec)?);
            }
        }
    }

    for n in 0..=6 {
        out.push(q_limit(n, 4));
    }

    for n in 0..=8 {
        for q in [rat(1, 3), rat(1, 2)] {
            for x in halves() {
                out.push(verify_e7(n, &x, &q)?);
            }
        }
    }

    for q in [0.5, 0.8] {
        for s in [1.5, 2.5] {
            for x in [0.5, 1.0, 2.0] {
                out.push(verify_e8(s, x, q, prec)?);
            }
        }
    }

    let pairs = [(1, 1), (1, 3), (3, 1), (3, 3), (3, 5), (5, 3), (5, 5), (5, 7), (7, 5), (7, 7)];
    for (a, b) in pairs {
        for q in [0.5, 0.8] {
            for s in [-1.5, 1.5, 2.5] {
                out.push(verify_thm_qzeta(a, b, s, 1.0, q, prec)?);
            }
        }
    }

    for a in [1u32, 3, 5] {
        for q in [0.5, 0.8] {
            for s in [1.5, 2.5] {
                for x in [0.5, 1.0] {
                    out.push(verify_remark1(a, s, x, q, prec)?);
                }
            }
        }
    }

    for q in [0.5, 0.8] {
        for s in [1.5, 2.5, 3.5] {
            for x in [0.5, 1.0, 2.0] {
                out.push(probe_corollary_a2(s, x, q, prec)?);
            }
        }
    }

    for variant in [Variant::Derived, Variant::Printed] {
        for (a, b, d) in [(3, 3, 9), (3, 5, 15), (5, 3, 15)] {
            for n in 0..=8 {
                for x in [int(0), rat(1, d), rat(2, d)] {
                    let w = ExactnessWitness::new(a, b, rat(1, 2), x)?;
                    out.push(verify_thm_qgenocchi(&w, n, variant)?);
                }
            }
        }
    }

    for variant in [Variant::Derived, Variant::Printed] {
        for a in [1u32, 3, 5] {
            for n in 0..=6 {
                for q in [rat(1, 3), rat(1, 2)] {
                    for x in 0..3i64 {
                        let q = QPoint::Exact(q.clone());
                        out.push(verify_distribution(a, n, &Scalar::from(x), &q, variant, prec)?);
                    }
                }
            }
        }
    }

    for n in 0..=10 {
        for q in [rat(1, 3), rat(1, 2)] {
            for x in halves() {
                for y in halves() {
                    out.push(verify_addition(n, &q, &x, &y)?);
                }
            }
        }
    }

    for variant in [Variant::Printed, Variant::BaseQaQb] {
        for (a, b, d) in [(3, 3, 9), (3, 5, 15), (5, 3, 15)] {
            for n in 0..=8 {
                let w = ExactnessWitness::new(a, b, rat(1, 2), rat(1, d))?;
                out.push(audit_thm25(&w, n, variant)?);
            }
        }
    }

    for (a, b) in [(3, 5), (5, 3)] {
        out.push(check_thm25_limit(a, b, 6, &int(1), 4)?);
    }

    Ok(out)
}

pub fn run_suite(suite: Suite, prec: &Precision) -> Result<Vec<IdentityReport>> {
    match suite {
        Suite::Default => default_suite(prec),
    }
}

fn io_error(e: impl std::fmt::Display) -> Error {
    Error::Io(e.to_string())
}

/// Writes reports as a JSON array, one object per row, followed by a
/// newline.
pub fn write_json<W: Write>(reports: &[IdentityReport], mut w: W) -> Result<()> {
    serde_json::to_writer_pretty(&mut w, reports).map_err(io_error)?;
    writeln!(w).map_err(io_error)
}

/// Writes reports as CSV. Parameters collapse into one `name=value;...`
/// column.
pub fn write_csv<W: Write>(reports: &[IdentityReport], w: W) -> Result<()> {
    let mut out = csv::Writer::from_writer(w);
    out.write_record([
        "identity_id",
        "parameters",
        "lhs",
        "rhs",
        "abs_residual",
        "rel_residual",
        "mode",
        "tolerance",
        "verdict",
    ])
    .map_err(io_error)?;
    for r in reports {
        let p: Vec<String> = r.parameters.iter().map(|(k, v)| format!("{k}={v}")).collect();
        out.write_record([
            r.identity_id.as_str().to_string(),
            p.join(";"),
            r.lhs.to_string(),
            r.rhs.to_string(),
            r.abs_residual.to_string(),
            r.rel_residual.to_string(),
            r.mode.as_str().to_string(),
            r.tolerance.to_string(),
            r.verdict.as_str().to_string(),
        ])
        .map_err(io_error)?;
    }
    out.flush().map_err(io_error)
}
