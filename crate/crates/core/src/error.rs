use num_complex::Complex64;
use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// A documented precondition (parity, sign, range) does not hold.
    #[error("precondition violated: {0}")]
    Precondition(String),

    /// Exact mode was asked for a quantity that is not rational.
    #[error("exact mode cannot represent {0}")]
    Mode(String),

    #[error("pole: base of the power vanishes at term {term}")]
    Pole { term: usize },

    #[error("outside the domain: {0}")]
    Domain(String),

    #[error("unsupported domain: {0}")]
    UnsupportedDomain(String),

    /// The term cap was reached before the tail bound met the target.
    /// For real-valued series `estimate.im` is zero.
    #[error("term cap {terms} reached before tolerance: estimate {estimate}, tail bound {bound:e}")]
    Precision {
        terms: usize,
        estimate: Complex64,
        bound: f64,
    },

    #[error("cannot parse {0:?}")]
    Parse(String),

    #[error("i/o: {0}")]
    Io(String),
}
