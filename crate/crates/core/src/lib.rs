//! Exact and numeric evaluation of Genocchi numbers, modified q-Genocchi
//! polynomials and q-Zeta type functions, together with verifiers for the
//! symmetry identities that relate them.
//!
//! Exact computations run over arbitrary-precision rationals; numeric ones
//! over `f64` (or double-double where cancellation demands it) with
//! explicit truncation bounds. Every identity check yields an
//! [`IdentityReport`].

pub mod cli;
pub mod error;
pub mod genocchi;
pub mod numeric;
pub mod qcore;
pub mod qgenocchi;
pub mod rational;
pub mod report;
pub mod scalar;
pub mod suite;
pub mod symmetry;
pub mod zeta;

pub use error::{Error, Result};
pub use numeric::{Precision, SeriesEstimate};
pub use qcore::QPoint;
pub use rational::{Polynomial, Rational};
pub use report::{IdentityId, IdentityReport, Mode, Verdict};
pub use scalar::Scalar;
