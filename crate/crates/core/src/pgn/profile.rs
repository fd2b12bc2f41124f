use std::cmp::Ordering;

#[cfg(feature = "parallel")]
use rayon::prelude::*;

use super::vector::{min_point, vector_l, ApproxVector, MinimalPointSequence};
use super::{PgnError, RankTracker};

/// Successive minima `L₁(q) ≤ … ≤ L_{n+1}(q)` at one parameter value.
/// `witnesses[j]` indexes the pool vector realising `l[j]`.
#[derive(Clone, Debug, PartialEq)]
pub struct ProfileSample {
    pub q: f64,
    pub l: Vec<f64>,
    pub witnesses: Vec<usize>,
}

impl ProfileSample {
    pub fn sum(&self) -> f64 {
        self.l.iter().sum()
    }
}

fn by_value(a: &(f64, usize), b: &(f64, usize)) -> Ordering {
    a.0.total_cmp(&b.0).then(a.1.cmp(&b.1))
}

fn sample_at(pool: &[ApproxVector], coords: &[Vec<i64>], q: f64, n: usize) -> Result<ProfileSample, PgnError> {
    let dim = n + 1;
    let mut vals: Vec<(f64, usize)> = pool.iter().enumerate().map(|(i, v)| (vector_l(v, q, n), i)).collect();
    let mut tracker = RankTracker::new(dim);
    let mut l = Vec::with_capacity(dim);
    let mut witnesses = Vec::with_capacity(dim);

    // Most of the time the n+1 winners are among the few smallest values, so
    // only a short prefix is sorted before falling back to the full order.
    let head = (8 * dim).min(vals.len());
    if head < vals.len() {
        vals.select_nth_unstable_by(head, by_value);
    }
    vals[..head].sort_unstable_by(by_value);
    let mut take = |slice: &[(f64, usize)], tracker: &mut RankTracker| {
        for &(lv, i) in slice {
            if tracker.try_add(&coords[i]) {
                l.push(lv);
                witnesses.push(i);
                if tracker.is_full() {
                    break;
                }
            }
        }
    };
    take(&vals[..head], &mut tracker);
    if !tracker.is_full() && head < vals.len() {
        vals[head..].sort_unstable_by(by_value);
        take(&vals[head..], &mut tracker);
    }
    if !tracker.is_full() {
        return Err(PgnError::InsufficientRank {
            found: tracker.rank(),
            needed: dim,
        });
    }
    Ok(ProfileSample { q, l, witnesses })
}

/// Pool-exact successive minima at every `q` in `q_grid`.
///
/// At each `q` the pool is ordered by `L_x(q)` (ties by pool index) and
/// vectors are taken greedily when they are linearly independent of those
/// already taken; the `j`-th taken value is `L_j(q)`. Because independent
/// sets form a matroid this is the exact min-max over the pool.
pub fn profile(candidates: &[ApproxVector], q_grid: &[f64], n: usize) -> Result<Vec<ProfileSample>, PgnError> {
    if n == 0 {
        return Err(PgnError::Domain("n must be positive".into()));
    }
    if q_grid.windows(2).any(|w| w[1] < w[0]) || q_grid.iter().any(|q| !q.is_finite()) {
        return Err(PgnError::Domain("q grid must be finite and increasing".into()));
    }
    if let Some(v) = candidates.iter().find(|v| v.y.len() != n) {
        return Err(PgnError::Domain(format!("vector with x = {} has dimension {} != {n}", v.x, v.y.len())));
    }
    let coords: Vec<Vec<i64>> = candidates.iter().map(|v| v.coords()).collect();

    #[cfg(feature = "parallel")]
    let samples: Vec<Result<ProfileSample, PgnError>> =
        q_grid.par_iter().map(|&q| sample_at(candidates, &coords, q, n)).collect();
    #[cfg(not(feature = "parallel"))]
    let samples: Vec<Result<ProfileSample, PgnError>> =
        q_grid.iter().map(|&q| sample_at(candidates, &coords, q, n)).collect();

    samples.into_iter().collect()
}

/// Largest `q` at which vectors beyond `x_max` cannot enter the profile:
/// `n log(x_max)/(n+1)`.
pub fn profile_horizon(n: usize, x_max: u64) -> f64 {
    let nf = n as f64;
    nf * (x_max as f64).ln() / (nf + 1.0)
}

/// A uniform grid of `uniform_points` values on `[0, q_max]` together with
/// every record minimum `q_k` and every crossing
/// `r_k = n(log x_{k+1} − log Y_k)/(n+1)` inside that range.
pub fn default_q_grid(seq: &MinimalPointSequence, n: usize, q_max: f64, uniform_points: usize) -> Vec<f64> {
    let mut grid = Vec::new();
    if uniform_points >= 2 {
        for i in 0..uniform_points {
            grid.push(q_max * i as f64 / (uniform_points - 1) as f64);
        }
    } else {
        grid.push(0.0);
        grid.push(q_max);
    }
    let nf = n as f64;
    for (k, v) in seq.points.iter().enumerate() {
        if let Some((q, _)) = min_point(v, n) {
            grid.push(q);
        }
        if let Some(next) = seq.points.get(k + 1) {
            grid.push(nf * (next.log_x - v.log_y) / (nf + 1.0));
        }
    }
    grid.retain(|q| q.is_finite() && *q >= 0.0 && *q <= q_max);
    grid.sort_by(f64::total_cmp);
    grid.dedup();
    grid
}

/// `max_q |Σ_j L_j(q)|` over the samples (0 for an empty profile).
pub fn minkowski_defect(profile: &[ProfileSample]) -> f64 {
    profile.iter().map(|s| s.sum().abs()).fold(0.0, f64::max)
}
