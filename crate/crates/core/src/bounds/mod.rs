//! Exponent bounds: the Marnat–Moshchevitin defect, the dual-exponent
//! bounds built on it, the implicit-equation constants for the Veronese
//! curve, and the transference identities.

mod constants;
mod defect;
mod transfer;

pub use constants::{
    chi_estimate, constants_report, integer_approx_exponents, laurent_odd_bound, mu,
    regular_graph_equation, regular_graph_lambda_bound, sigma, sigma_equation, tau,
    tau_polynomial, theta, theta_equation, w_equation, ConstantsReport,
};
pub use defect::{
    beta_for_equality, dual_bounds, dual_bounds_unchecked, mm_defect, regular_graph_duals,
    what_lower_raw, BoundContext, DualBoundSet,
};
pub use transfer::{
    classical_low_dim, lefths_equation, lefths_solve, psi_from_dual, transfer_dual,
    ClassicalBounds, Extremum,
};

use crate::numerics::NumericsError;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum BoundsError {
    #[error("domain error: {0}")]
    Domain(String),
    #[error("hypothesis violated: epsilon = {epsilon} exceeds threshold = {threshold}")]
    HypothesisViolated { epsilon: String, threshold: String },
    #[error("negative defect epsilon = {0}: the pair violates the Marnat-Moshchevitin inequality")]
    NegativeDefect(String),
    #[error("degenerate context: {0}")]
    DegenerateContext(String),
    #[error("not a regular graph: |epsilon| = {0} exceeds tolerance")]
    NotRegularGraph(String),
    #[error("no root: {0}")]
    NoRoot(String),
    #[error(transparent)]
    Numerics(#[from] NumericsError),
}

impl BoundsError {
    /// Short machine-readable tag.
    pub fn kind(&self) -> &'static str {
        match self {
            BoundsError::Domain(_) => "DomainError",
            BoundsError::HypothesisViolated { .. } | BoundsError::NegativeDefect(_) => {
                "HypothesisViolated"
            }
            BoundsError::DegenerateContext(_) => "DegenerateContext",
            BoundsError::NotRegularGraph(_) => "NotRegularGraph",
            BoundsError::NoRoot(_) => "NoRoot",
            BoundsError::Numerics(_) => "NumericFailure",
        }
    }

    /// Domain/hypothesis problems (the inputs are wrong) versus numeric failures.
    pub fn is_numeric_failure(&self) -> bool {
        matches!(self, BoundsError::NoRoot(_) | BoundsError::Numerics(_))
    }
}
