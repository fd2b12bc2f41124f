use std::cmp::Ordering;

#[cfg(feature = "parallel")]
use rayon::prelude::*;

use super::{PgnError, TargetPoint};
use crate::numerics::PrecisionReal;

/// An integer vector `(x, y₁, …, yₙ)` with its error `Y = max |xξᵢ − yᵢ|`.
///
/// `x = 0` only occurs for the unit vectors added as support for `L_{n+1}`;
/// their `log_x` is `−∞`.
#[derive(Clone, Debug, PartialEq)]
pub struct ApproxVector {
    pub x: i64,
    pub y: Vec<i64>,
    pub big_y: PrecisionReal,
    pub log_x: f64,
    pub log_y: f64,
}

fn ln_of(v: &PrecisionReal) -> f64 {
    let f = v.to_f64();
    if f.is_normal() && f > 0.0 {
        f.ln()
    } else {
        v.ln().to_f64()
    }
}

impl ApproxVector {
    /// The vector `(x, y)` measured against `target`.
    pub fn new(target: &TargetPoint, x: i64, y: Vec<i64>) -> Self {
        assert_eq!(y.len(), target.n, "y has the wrong length");
        let bits = target.precision_bits;
        let xr = PrecisionReal::from_i64(x, bits);
        let mut big_y = PrecisionReal::zero(bits);
        for (xi, &yi) in target.coords.iter().zip(&y) {
            let d = (&xr * xi - PrecisionReal::from_i64(yi, bits)).abs();
            if d > big_y {
                big_y = d;
            }
        }
        Self::from_parts(x, y, big_y)
    }

    fn from_parts(x: i64, y: Vec<i64>, big_y: PrecisionReal) -> Self {
        let log_x = if x > 0 { (x as f64).ln() } else { f64::NEG_INFINITY };
        let log_y = if big_y.is_zero() {
            f64::NEG_INFINITY
        } else {
            ln_of(&big_y)
        };
        ApproxVector {
            x,
            y,
            big_y,
            log_x,
            log_y,
        }
    }

    /// A vector whose logarithms are prescribed rather than measured.
    ///
    /// The integer coordinates are only used for linear-independence checks.
    pub fn synthetic(x: i64, y: Vec<i64>, log_x: f64, log_y: f64, bits: usize) -> Self {
        ApproxVector {
            x,
            y,
            big_y: PrecisionReal::from_f64(log_y, bits).exp(),
            log_x,
            log_y,
        }
    }

    /// `(x, y₁, …, yₙ)` as a single integer vector.
    pub fn coords(&self) -> Vec<i64> {
        let mut v = Vec::with_capacity(self.y.len() + 1);
        v.push(self.x);
        v.extend_from_slice(&self.y);
        v
    }

    fn key_cmp(&self, other: &Self) -> Ordering {
        self.x.cmp(&other.x).then_with(|| self.y.cmp(&other.y))
    }
}

/// `L_x(q) = max(log x − q, log Y + q/n)`.
pub fn vector_l(v: &ApproxVector, q: f64, n: usize) -> f64 {
    let rising = v.log_y + q / n as f64;
    if v.x <= 0 {
        rising
    } else {
        (v.log_x - q).max(rising)
    }
}

/// `(q_v, L_x(q_v))` where `q_v = n(log x − log Y)/(n+1)` minimises `L_x`.
/// `None` for `x = 0`.
pub fn min_point(v: &ApproxVector, n: usize) -> Option<(f64, f64)> {
    if v.x <= 0 {
        return None;
    }
    let nf = n as f64;
    let q = nf * (v.log_x - v.log_y) / (nf + 1.0);
    Some((q, v.log_x - q))
}

fn vectors_at_x(target: &TargetPoint, x: i64, widen: i64) -> Result<Vec<ApproxVector>, PgnError> {
    let bits = target.precision_bits;
    let xr = PrecisionReal::from_i64(x, bits);
    let n = target.n;
    let width = (2 * widen + 1) as usize;
    // Per coordinate: candidate y values and their |xξᵢ − y|.
    let mut per_coord: Vec<Vec<(i64, PrecisionReal)>> = Vec::with_capacity(n);
    for xi in &target.coords {
        let prod = &xr * xi;
        let r: i64 = prod
            .round_to_ibig()
            .try_into()
            .map_err(|_| PgnError::Domain(format!("x * xi overflows i64 at x = {x}")))?;
        let opts = (-widen..=widen)
            .map(|o| {
                let y = r + o;
                (y, (&prod - PrecisionReal::from_i64(y, bits)).abs())
            })
            .collect();
        per_coord.push(opts);
    }
    let total = width.pow(n as u32);
    let mut out = Vec::with_capacity(total);
    let mut idx = vec![0usize; n];
    for _ in 0..total {
        let mut y = Vec::with_capacity(n);
        let mut big_y = PrecisionReal::zero(bits);
        for (c, &k) in per_coord.iter().zip(&idx) {
            y.push(c[k].0);
            if c[k].1 > big_y {
                big_y = c[k].1.clone();
            }
        }
        if big_y.is_zero() {
            return Err(PgnError::RationalDependence { x });
        }
        out.push(ApproxVector::from_parts(x, y, big_y));
        // Odometer increment, last coordinate fastest, so output is sorted by y.
        for d in (0..n).rev() {
            idx[d] += 1;
            if idx[d] < width {
                break;
            }
            idx[d] = 0;
        }
    }
    Ok(out)
}

/// Rounded vectors `yᵢ = round(xξᵢ) + oᵢ` with `|oᵢ| ≤ widen` for every
/// `1 ≤ x ≤ x_max`, plus the `n+1` standard unit vectors. The result is
/// sorted by `(x, y)` and free of duplicates.
pub fn enumerate_candidates(
    target: &TargetPoint,
    x_max: u64,
    widen: u32,
) -> Result<Vec<ApproxVector>, PgnError> {
    if x_max == 0 {
        return Err(PgnError::Domain("x_max must be at least 1".into()));
    }
    if x_max > i64::MAX as u64 / 4 {
        return Err(PgnError::Domain("x_max is too large".into()));
    }
    let n = target.n;
    let widen = widen as i64;
    let xs = 1..=x_max as i64;

    #[cfg(feature = "parallel")]
    let chunks: Vec<Result<Vec<ApproxVector>, PgnError>> =
        xs.into_par_iter().map(|x| vectors_at_x(target, x, widen)).collect();
    #[cfg(not(feature = "parallel"))]
    let chunks: Vec<Result<Vec<ApproxVector>, PgnError>> =
        xs.map(|x| vectors_at_x(target, x, widen)).collect();

    let mut out = Vec::new();
    for i in 0..n {
        let mut y = vec![0i64; n];
        y[n - 1 - i] = 1;
        out.push(ApproxVector::new(target, 0, y));
    }
    out.push(ApproxVector::new(target, 1, vec![0; n]));
    for c in chunks {
        out.extend(c?);
    }
    out.sort_by(|a, b| a.key_cmp(b));
    out.dedup_by(|a, b| a.x == b.x && a.y == b.y);
    Ok(out)
}

/// Best approximations in increasing order of `x`.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct MinimalPointSequence {
    pub points: Vec<ApproxVector>,
}

impl MinimalPointSequence {
    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn xs(&self) -> Vec<i64> {
        self.points.iter().map(|p| p.x).collect()
    }
}

/// Records of `Y` scanning by increasing `x`; equal `x` favours smaller `Y`,
/// then the lexicographically smallest `y`. Vectors with `x = 0` are ignored.
pub fn minimal_points(candidates: &[ApproxVector]) -> MinimalPointSequence {
    let mut order: Vec<&ApproxVector> = candidates.iter().filter(|v| v.x > 0).collect();
    order.sort_by(|a, b| {
        a.x.cmp(&b.x)
            .then_with(|| a.big_y.cmp(&b.big_y))
            .then_with(|| a.y.cmp(&b.y))
    });
    let mut points: Vec<ApproxVector> = Vec::new();
    for v in order {
        let better = match points.last() {
            None => true,
            Some(last) => v.big_y < last.big_y,
        };
        if better {
            points.push(v.clone());
        }
    }
    MinimalPointSequence { points }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn golden(n: usize) -> TargetPoint {
        TargetPoint::from_spec("veronese:golden", n, 256).unwrap()
    }

    #[test]
    fn golden_records_are_fibonacci() {
        let pool = enumerate_candidates(&golden(1), 13, 0).unwrap();
        let seq = minimal_points(&pool);
        assert_eq!(seq.xs(), vec![1, 2, 3, 5, 8, 13]);
    }

    #[test]
    fn x_max_one_has_rounded_vector() {
        let t = TargetPoint::from_spec("veronese:pi", 2, 256).unwrap();
        let pool = enumerate_candidates(&t, 1, 0).unwrap();
        assert!(pool.iter().any(|v| v.x == 1 && v.y == vec![3, 10]));
        // Two unit vectors with x = 0, (1, 0, 0), and the rounded vector.
        assert_eq!(pool.len(), 4);
    }

    #[test]
    fn pool_is_sorted_and_deduplicated() {
        let t = TargetPoint::from_spec("explicit:0.3,0.45", 2, 128).unwrap();
        let pool = enumerate_candidates(&t, 5, 1).unwrap();
        for w in pool.windows(2) {
            assert_eq!(w[0].key_cmp(&w[1]), Ordering::Less);
        }
        // (1, 0, 0) is both a unit vector and a widened vector at x = 1.
        assert_eq!(pool.iter().filter(|v| v.x == 1 && v.y == vec![0, 0]).count(), 1);
    }

    #[test]
    fn rational_target_is_rejected() {
        let t = TargetPoint::from_spec("explicit:0.5", 1, 128).unwrap();
        assert_eq!(
            enumerate_candidates(&t, 10, 0),
            Err(PgnError::RationalDependence { x: 2 })
        );
    }

    #[test]
    fn vector_l_examples() {
        let v = ApproxVector::synthetic(3, vec![1], 1.0, -1.0, 64);
        assert_eq!(min_point(&v, 1), Some((1.0, 0.0)));
        assert_eq!(vector_l(&v, 0.0, 1), 1.0);
        assert_eq!(vector_l(&v, 1.0, 1), 0.0);
        assert_eq!(vector_l(&v, 3.0, 1), 2.0);
        let u = ApproxVector::synthetic(0, vec![1], f64::NEG_INFINITY, 0.0, 64);
        assert_eq!(vector_l(&u, 2.0, 2), 1.0);
        assert_eq!(min_point(&u, 2), None);
    }

    #[test]
    fn single_candidate_sequence() {
        let t = golden(1);
        let v = ApproxVector::new(&t, 5, vec![8]);
        assert_eq!(minimal_points(std::slice::from_ref(&v)).points, vec![v]);
    }
}
