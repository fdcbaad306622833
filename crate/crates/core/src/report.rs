//! Structured outcome of a single identity check.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::rational::Rational;
use crate::scalar::Scalar;

/// Default pass threshold for numeric identity checks.
pub const NUMERIC_TOLERANCE: f64 = 1e-9;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum IdentityId {
    GenocchiList,
    ThmClassical,
    EngineAgreement,
    QLimit,
    E7,
    E8,
    ThmQzeta,
    Remark1,
    CorollaryA2,
    ThmQgenocchi,
    ThmQgenocchiPrinted,
    Distribution,
    DistributionPrinted,
    Addition,
    Thm25Printed,
    Thm25BaseQaQb,
    Thm25Limit,
}

impl IdentityId {
    pub fn as_str(self) -> &'static str {
        match self {
            IdentityId::GenocchiList => "genocchi-list",
            IdentityId::ThmClassical => "thm-classical",
            IdentityId::EngineAgreement => "engine-agreement",
            IdentityId::QLimit => "q-limit",
            IdentityId::E7 => "e7",
            IdentityId::E8 => "e8",
            IdentityId::ThmQzeta => "thm-qzeta",
            IdentityId::Remark1 => "remark1",
            IdentityId::CorollaryA2 => "corollary-a2",
            IdentityId::ThmQgenocchi => "thm-qgenocchi",
            IdentityId::ThmQgenocchiPrinted => "thm-qgenocchi-printed",
            IdentityId::Distribution => "distribution",
            IdentityId::DistributionPrinted => "distribution-printed",
            IdentityId::Addition => "addition",
            IdentityId::Thm25Printed => "thm25-printed",
            IdentityId::Thm25BaseQaQb => "thm25-base-qa-qb",
            IdentityId::Thm25Limit => "thm25-limit",
        }
    }
}

impl fmt::Display for IdentityId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Mode {
    Exact,
    Numeric,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    Pass,
    Fail,
    ReportOnly,
}

impl Mode {
    pub fn as_str(self) -> &'static str {
        match self {
            Mode::Exact => "exact",
            Mode::Numeric => "numeric",
        }
    }
}

impl Verdict {
    pub fn as_str(self) -> &'static str {
        match self {
            Verdict::Pass => "pass",
            Verdict::Fail => "fail",
            Verdict::ReportOnly => "report-only",
        }
    }
}

/// Whether a check is asserted or only archived.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Check {
    Assert,
    ReportOnly,
}

pub type Parameters = BTreeMap<String, Scalar>;

/// Builds a parameter map from `(name, value)` pairs.
pub fn params<I, K, V>(items: I) -> Parameters
where
    I: IntoIterator<Item = (K, V)>,
    K: Into<String>,
    V: Into<Scalar>,
{
    items
        .into_iter()
        .map(|(k, v)| (k.into(), v.into()))
        .collect()
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct IdentityReport {
    pub identity_id: IdentityId,
    pub parameters: Parameters,
    pub lhs: Scalar,
    pub rhs: Scalar,
    pub abs_residual: Scalar,
    pub rel_residual: Scalar,
    pub mode: Mode,
    pub tolerance: Scalar,
    pub verdict: Verdict,
}

fn relative_exact(abs: &Rational, lhs: &Rational, rhs: &Rational) -> Rational {
    let scale = lhs.abs().max(rhs.abs());
    if abs.is_zero() || scale.is_zero() {
        Rational::zero()
    } else {
        abs / scale
    }
}

/// `|lhs - rhs| / max(|lhs|, |rhs|)`, or zero when both sides vanish.
pub fn relative_f64(lhs: f64, rhs: f64) -> f64 {
    let abs = (lhs - rhs).abs();
    let scale = lhs.abs().max(rhs.abs());
    if abs == 0.0 {
        0.0
    } else {
        abs / scale
    }
}

impl IdentityReport {
    /// Exact comparison; an asserted check passes only on equality.
    pub fn exact(
        identity_id: IdentityId,
        parameters: Parameters,
        lhs: Rational,
        rhs: Rational,
        check: Check,
    ) -> Self {
        let abs = (&lhs - &rhs).abs();
        let rel = relative_exact(&abs, &lhs, &rhs);
        let verdict = match check {
            Check::ReportOnly => Verdict::ReportOnly,
            Check::Assert if abs.is_zero() => Verdict::Pass,
            Check::Assert => Verdict::Fail,
        };
        Self {
            identity_id,
            parameters,
            lhs: lhs.into(),
            rhs: rhs.into(),
            abs_residual: abs.into(),
            rel_residual: rel.into(),
            mode: Mode::Exact,
            tolerance: Rational::zero().into(),
            verdict,
        }
    }

    /// Numeric comparison on the symmetric relative residual.
    pub fn numeric(
        identity_id: IdentityId,
        parameters: Parameters,
        lhs: f64,
        rhs: f64,
        tolerance: f64,
        check: Check,
    ) -> Self {
        let rel = relative_f64(lhs, rhs);
        Self::numeric_with_residual(identity_id, parameters, lhs, rhs, rel, tolerance, check)
    }

    /// Numeric comparison where the caller defines the residual the
    /// tolerance applies to.
    pub fn numeric_with_residual(
        identity_id: IdentityId,
        parameters: Parameters,
        lhs: f64,
        rhs: f64,
        residual: f64,
        tolerance: f64,
        check: Check,
    ) -> Self {
        let verdict = match check {
            Check::ReportOnly => Verdict::ReportOnly,
            // NaN residuals fail
            Check::Assert if residual <= tolerance => Verdict::Pass,
            Check::Assert => Verdict::Fail,
        };
        Self {
            identity_id,
            parameters,
            lhs: lhs.into(),
            rhs: rhs.into(),
            abs_residual: (lhs - rhs).abs().into(),
            rel_residual: residual.into(),
            mode: Mode::Numeric,
            tolerance: tolerance.into(),
            verdict,
        }
    }

    pub fn passed(&self) -> bool {
        self.verdict != Verdict::Fail
    }

    pub fn abs_residual_f64(&self) -> f64 {
        self.abs_residual.to_f64()
    }

    pub fn rel_residual_f64(&self) -> f64 {
        self.rel_residual.to_f64()
    }

    /// The same check with the two sides exchanged.
    pub fn swapped(&self) -> Self {
        let mut out = self.clone();
        std::mem::swap(&mut out.lhs, &mut out.rhs);
        out
    }
}

/// True when no asserted check failed.
pub fn all_passed(reports: &[IdentityReport]) -> bool {
    reports.iter().all(IdentityReport::passed)
}
