//! Arbitrary-precision scalars and sign-certified root finding.

mod real;
mod root;

pub use real::{ExtReal, PrecisionReal, DEFAULT_PRECISION_BITS};
pub use root::{find_root, find_root_partial, scan_all_brackets, scan_for_bracket, Bracket};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum NumericsError {
    #[error("invalid bracket: {0}")]
    InvalidBracket(String),
    #[error("no convergence: bracket width {width:e} cannot shrink at this precision")]
    NoConvergence { width: f64 },
    #[error("no sign change on the scan grid")]
    NoSignChange,
    #[error("function is not defined at an interior point of the bracket")]
    InvalidPoint,
    #[error("cannot parse `{0}` as a decimal number")]
    Parse(String),
}

/// Working precision and the default relative root tolerance.
#[derive(Clone, Debug)]
pub struct WorkingPrecision {
    pub bits: usize,
    pub tol: PrecisionReal,
}

impl WorkingPrecision {
    pub fn new(bits: usize, tol: PrecisionReal) -> Self {
        WorkingPrecision {
            bits,
            tol: tol.with_precision(bits),
        }
    }

    /// `bits` with a tolerance of `1e-30`.
    pub fn with_bits(bits: usize) -> Self {
        let tol = PrecisionReal::parse("1e-30", bits).expect("literal");
        WorkingPrecision { bits, tol }
    }

    pub fn real(&self, v: i64) -> PrecisionReal {
        PrecisionReal::from_i64(v, self.bits)
    }

    pub fn ratio(&self, num: i64, den: i64) -> PrecisionReal {
        PrecisionReal::ratio(num, den, self.bits)
    }

    /// Absolute tolerance for a root expected near `scale`.
    pub fn abs_tol(&self, scale: &PrecisionReal) -> PrecisionReal {
        let s = scale.abs();
        let floor = PrecisionReal::pow2(-(self.bits as i64) / 2, self.bits);
        &self.tol * &PrecisionReal::max_of(&s, &floor)
    }

    /// Relative round-off slack used when checking identities that hold
    /// exactly in real arithmetic (a few hundred ulps).
    pub fn slack(&self) -> PrecisionReal {
        PrecisionReal::pow2(10 - self.bits as i64, self.bits)
    }
}

impl Default for WorkingPrecision {
    fn default() -> Self {
        WorkingPrecision::with_bits(DEFAULT_PRECISION_BITS)
    }
}
