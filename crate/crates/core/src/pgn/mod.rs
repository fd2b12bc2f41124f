//! Parametric geometry of numbers over an enumerated pool of integer vectors.
//!
//! A target `ξ = (ξ₁, …, ξₙ)` is approximated by integer vectors
//! `(x, y₁, …, yₙ)`; each such vector induces the piecewise linear function
//! `L_x(q) = max(log x − q, log Y_x + q/n)` with `Y_x = max |xξᵢ − yᵢ|`.
//! Successive minima `L₁(q) ≤ … ≤ L_{n+1}(q)` are min-max values over
//! linearly independent sets from the pool.
//!
//! Logarithms and `L` values are `f64`; `Y` itself is kept at the target's
//! working precision so record comparisons are not affected by round-off.

mod estimate;
pub mod export;
pub mod oracle;
mod profile;
mod rank;
mod target;
mod vector;

pub use estimate::{
    check_theorem_v, estimate_exponents, intersection_diagnostics, synthetic_regular_graph,
    ExponentEstimates, IntersectionRow, TheoremVReport,
};
pub use profile::{default_q_grid, minkowski_defect, profile, profile_horizon, ProfileSample};
pub use rank::{integer_rank, RankTracker};
pub use target::{NamedConstant, TargetPoint, TargetSource};
pub use vector::{
    enumerate_candidates, min_point, minimal_points, vector_l, ApproxVector,
    MinimalPointSequence,
};

use crate::bounds::BoundsError;
use crate::numerics::NumericsError;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum PgnError {
    #[error("rational dependence: Y = 0 for x = {x}; the target is rational or the precision is too low")]
    RationalDependence { x: i64 },
    #[error("insufficient rank: {found} independent vectors in the pool, {needed} needed")]
    InsufficientRank { found: usize, needed: usize },
    #[error("insufficient data: {0}")]
    InsufficientData(String),
    #[error("invalid target: {0}")]
    InvalidTarget(String),
    #[error("domain error: {0}")]
    Domain(String),
    #[error(transparent)]
    Bounds(#[from] BoundsError),
    #[error(transparent)]
    Numerics(#[from] NumericsError),
}
