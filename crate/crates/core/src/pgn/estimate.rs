use super::vector::{min_point, ApproxVector, MinimalPointSequence};
use super::{PgnError, ProfileSample, RankTracker};
use crate::bounds::{mm_defect, transfer_dual, Extremum};
use crate::numerics::{ExtReal, PrecisionReal};

/// Finite-data proxies for the approximation exponents.
///
/// `lambda_est` / `lambda_hat_est` are slope estimates over consecutive
/// records in the window: `max −Δlog Y_k / Δlog x_k` and
/// `min −(log Y_{k+1} − log Y_k)/(log x_{k+2} − log x_{k+1})`. The plain ratios
/// `−log Y_k / log x_k` and `−log Y_k / log x_{k+1}` are reported alongside;
/// they converge to the same limits but carry an `O(1/log x)` bias.
#[derive(Clone, Debug, PartialEq)]
pub struct ExponentEstimates {
    pub lambda_est: f64,
    pub lambda_hat_est: f64,
    pub lambda_ratio: f64,
    pub lambda_hat_ratio: f64,
    pub psi_low_est: PrecisionReal,
    pub psi_high_est: PrecisionReal,
    pub w_est: ExtReal,
    pub w_hat_est: ExtReal,
    /// `(log x_min, log x_max)` of the records used.
    pub log_x_window: (f64, f64),
    /// `(q_min, q_max)` of the profile samples used.
    pub q_window: (f64, f64),
    pub records_used: usize,
    pub samples_used: usize,
}

fn trailing_cut(lo: f64, hi: f64, fraction: f64) -> f64 {
    hi - fraction * (hi - lo)
}

pub fn estimate_exponents(
    seq: &MinimalPointSequence,
    profile: &[ProfileSample],
    n: usize,
    window_fraction: f64,
    bits: usize,
) -> Result<ExponentEstimates, PgnError> {
    if !(window_fraction > 0.0 && window_fraction <= 1.0) {
        return Err(PgnError::Domain(format!(
            "window fraction {window_fraction} must lie in (0, 1]"
        )));
    }
    if n == 0 {
        return Err(PgnError::Domain("n must be positive".into()));
    }
    let pts: Vec<&ApproxVector> = seq.points.iter().filter(|p| p.x > 0).collect();
    let (Some(first), Some(last)) = (pts.first(), pts.last()) else {
        return Err(PgnError::InsufficientData("no minimal points".into()));
    };
    let cut = trailing_cut(first.log_x, last.log_x, window_fraction);
    let win: Vec<&ApproxVector> = pts.iter().copied().filter(|p| p.log_x >= cut).collect();
    if win.len() < 3 {
        return Err(PgnError::InsufficientData(format!(
            "{} minimal points in the trailing window, at least 3 needed",
            win.len()
        )));
    }

    let mut lambda = f64::NEG_INFINITY;
    for w in win.windows(2) {
        lambda = lambda.max(-(w[1].log_y - w[0].log_y) / (w[1].log_x - w[0].log_x));
    }
    let mut lambda_hat = f64::INFINITY;
    for w in win.windows(3) {
        lambda_hat = lambda_hat.min(-(w[1].log_y - w[0].log_y) / (w[2].log_x - w[1].log_x));
    }
    let lambda_hat = lambda_hat.min(lambda);

    let mut lambda_ratio = f64::NEG_INFINITY;
    let mut lambda_hat_ratio = f64::INFINITY;
    for (k, p) in win.iter().enumerate() {
        if p.log_x > 0.0 {
            lambda_ratio = lambda_ratio.max(-p.log_y / p.log_x);
        }
        if let Some(next) = win.get(k + 1) {
            lambda_hat_ratio = lambda_hat_ratio.min(-p.log_y / next.log_x);
        }
    }

    let positive: Vec<&ProfileSample> = profile.iter().filter(|s| s.q > 0.0).collect();
    let (Some(qa), Some(qb)) = (positive.first(), positive.last()) else {
        return Err(PgnError::InsufficientData("profile has no sample with q > 0".into()));
    };
    let qcut = trailing_cut(qa.q, qb.q, window_fraction);
    let used: Vec<&ProfileSample> = positive.into_iter().filter(|s| s.q >= qcut).collect();
    let nf = n as f64;
    let mut psi_lo = f64::INFINITY;
    let mut psi_hi = f64::NEG_INFINITY;
    for s in &used {
        let top = *s.l.last().ok_or_else(|| PgnError::InsufficientData("empty profile sample".into()))?;
        let v = top / s.q;
        psi_lo = psi_lo.min(v);
        psi_hi = psi_hi.max(v);
    }
    let clamp = |v: f64| v.clamp(-1.0, 1.0 / nf);
    let one_over_n = PrecisionReal::ratio(1, n as i64, bits);
    let to_psi = |v: f64| {
        if v >= 1.0 / nf {
            one_over_n.clone()
        } else {
            PrecisionReal::from_f64(clamp(v), bits)
        }
    };
    let psi_low_est = to_psi(psi_lo);
    let psi_high_est = to_psi(psi_hi);
    let w_hat_est = transfer_dual(n as u32, &psi_low_est, Extremum::Liminf)?;
    let w_est = transfer_dual(n as u32, &psi_high_est, Extremum::Limsup)?;

    Ok(ExponentEstimates {
        lambda_est: lambda,
        lambda_hat_est: lambda_hat,
        lambda_ratio,
        lambda_hat_ratio,
        psi_low_est,
        psi_high_est,
        w_est,
        w_hat_est,
        log_x_window: (win[0].log_x, last.log_x),
        q_window: (used.first().map_or(0.0, |s| s.q), used.last().map_or(0.0, |s| s.q)),
        records_used: win.len(),
        samples_used: used.len(),
    })
}

/// Data check of the structural properties of best approximations for a
/// pair `(α, β)` with small defect.
#[derive(Clone, Debug, PartialEq)]
pub struct TheoremVReport {
    pub alpha: PrecisionReal,
    pub beta: PrecisionReal,
    pub epsilon: PrecisionReal,
    pub threshold: PrecisionReal,
    /// `ε ≤ threshold`.
    pub hypothesis_ok: bool,
    /// Smallest `C` for which both growth inequalities hold on the window.
    pub fitted_c: f64,
    /// Largest `|α log x_{j+1} − β log x_j| − 4ε(β/α)^n log x_{j+1}`, floored at 0.
    pub prop1_margin: f64,
    /// Largest `|log Y_j + β log x_j| − 4ε(β/α)² log x_j`, floored at 0.
    pub prop2_margin: f64,
    /// Every run of `n+1` consecutive points is linearly independent.
    pub independence_ok: bool,
    pub first_dependent_run: Option<usize>,
    /// `x` increases, `Y` decreases, and (with a pool) no pool vector with
    /// smaller or equal `x` beats a listed point.
    pub record_ok: bool,
    pub first_record_violation: Option<usize>,
    pub pairs_checked: usize,
}

/// Residuals below this multiple of the operand size are round-off.
const ROUNDOFF: f64 = 64.0 * f64::EPSILON;

fn floored(resid: f64, scale: f64) -> f64 {
    if resid <= ROUNDOFF * scale {
        0.0
    } else {
        resid
    }
}

/// Check the minimal-point properties of `seq` against `(α, β)`.
///
/// Growth inequalities are evaluated on the trailing `window_fraction` of the
/// sequence; independence and the record property on the whole sequence.
/// Failed checks are report fields, not errors.
pub fn check_theorem_v(
    seq: &MinimalPointSequence,
    n: usize,
    alpha: &PrecisionReal,
    beta: &PrecisionReal,
    pool: Option<&[ApproxVector]>,
    window_fraction: f64,
) -> Result<TheoremVReport, PgnError> {
    if seq.len() < n + 2 {
        return Err(PgnError::InsufficientData(format!(
            "{} points, at least n + 2 = {} needed",
            seq.len(),
            n + 2
        )));
    }
    let ctx = mm_defect(n as u32, alpha, &ExtReal::Finite(beta.clone()))?;
    let slack = PrecisionReal::from_i64(n as i64, alpha.precision_bits())
        * PrecisionReal::pow2(8 - alpha.precision_bits() as i64, alpha.precision_bits());
    let hypothesis_ok = ctx.epsilon <= &ctx.threshold + &slack && ctx.epsilon >= -slack;

    let a = alpha.to_f64();
    let b = beta.to_f64();
    let eps = ctx.epsilon.to_f64().max(0.0);
    let grow1 = 4.0 * eps * (b / a).powi(n as i32);
    let grow2 = 4.0 * eps * (b / a).powi(2);

    let pts = &seq.points;
    let start = {
        let lo = pts[0].log_x;
        let hi = pts[pts.len() - 1].log_x;
        let cut = trailing_cut(lo, hi, window_fraction.clamp(0.0, 1.0));
        pts.iter().position(|p| p.log_x >= cut).unwrap_or(0)
    };
    let mut prop1 = 0.0f64;
    let mut prop2 = 0.0f64;
    let mut pairs = 0;
    for j in start..pts.len() {
        let p = &pts[j];
        let r2 = (p.log_y + b * p.log_x).abs() - grow2 * p.log_x;
        prop2 = prop2.max(floored(r2, p.log_y.abs() + (b * p.log_x).abs()));
        if let Some(nx) = pts.get(j + 1) {
            let r1 = (a * nx.log_x - b * p.log_x).abs() - grow1 * nx.log_x;
            prop1 = prop1.max(floored(r1, (a * nx.log_x).abs() + (b * p.log_x).abs()));
            pairs += 1;
        }
    }

    let mut first_dependent_run = None;
    for start in 0..=pts.len() - (n + 1) {
        let mut t = RankTracker::new(n + 1);
        for p in &pts[start..start + n + 1] {
            t.try_add(&p.coords());
        }
        if !t.is_full() {
            first_dependent_run = Some(start);
            break;
        }
    }

    let mut first_record_violation = None;
    for j in 1..pts.len() {
        if pts[j].x <= pts[j - 1].x || pts[j].big_y >= pts[j - 1].big_y {
            first_record_violation = Some(j);
            break;
        }
    }
    if let (None, Some(pool)) = (first_record_violation, pool) {
        let mut sorted: Vec<&ApproxVector> = pool.iter().filter(|v| v.x > 0).collect();
        sorted.sort_by_key(|v| v.x);
        let mut best: Option<&PrecisionReal> = None;
        let mut i = 0;
        for (j, p) in pts.iter().enumerate() {
            while i < sorted.len() && sorted[i].x <= p.x {
                let y = &sorted[i].big_y;
                if best.is_none_or(|b| y < b) {
                    best = Some(y);
                }
                i += 1;
            }
            if best.is_some_and(|b| b < &p.big_y) {
                first_record_violation = Some(j);
                break;
            }
        }
    }

    Ok(TheoremVReport {
        alpha: alpha.clone(),
        beta: beta.clone(),
        epsilon: ctx.epsilon,
        threshold: ctx.threshold,
        hypothesis_ok,
        fitted_c: prop1.max(prop2),
        prop1_margin: prop1,
        prop2_margin: prop2,
        independence_ok: first_dependent_run.is_none(),
        first_dependent_run,
        record_ok: first_record_violation.is_none(),
        first_record_violation,
        pairs_checked: pairs,
    })
}

/// Crossing points of consecutive `L`-functions for record `k`.
#[derive(Clone, Debug, PartialEq)]
pub struct IntersectionRow {
    pub k: usize,
    pub q_k: f64,
    pub r_k: f64,
    pub s_k: f64,
    pub u_k: f64,
    pub p_k: f64,
    /// `q_k < r_k < q_{k+1}`.
    pub q_order_ok: bool,
    /// `u_k < p_k < u_{k+1}`.
    pub u_order_ok: bool,
}

pub fn intersection_diagnostics(seq: &MinimalPointSequence, n: usize) -> Vec<IntersectionRow> {
    let pts = &seq.points;
    let nf = n as f64;
    let c = nf / (nf + 1.0);
    let mut rows = Vec::new();
    if pts.len() < n + 2 || pts.iter().any(|p| p.x <= 0) {
        return rows;
    }
    for k in n..pts.len() - 1 {
        let lx = |i: usize| pts[i].log_x;
        let ly = |i: usize| pts[i].log_y;
        let q_k = min_point(&pts[k], n).map_or(f64::NAN, |m| m.0);
        let q_next = min_point(&pts[k + 1], n).map_or(f64::NAN, |m| m.0);
        let r_k = c * (lx(k + 1) - ly(k));
        let s_k = c * (lx(k + 1) - ly(k + 1 - n));
        let u_k = c * (lx(k) - ly(k - n));
        let p_k = c * (lx(k + 1) - ly(k - n));
        let u_next = c * (lx(k + 1) - ly(k + 1 - n));
        rows.push(IntersectionRow {
            k,
            q_k,
            r_k,
            s_k,
            u_k,
            p_k,
            q_order_ok: q_k < r_k && r_k < q_next,
            u_order_ok: u_k < p_k && p_k < u_next,
        });
    }
    rows
}

/// Exact regular-graph data: `log x_{j+1} = (β/α) log x_j` and
/// `log Y_j = −β log x_j`, starting from `log x_0 = log_x0`.
///
/// The integer parts are `(t, t², …, t^{n+1})` with `t = j + 1`, so any
/// `n+1` of them are linearly independent.
pub fn synthetic_regular_graph(
    n: usize,
    alpha: f64,
    beta: f64,
    len: usize,
    log_x0: f64,
    bits: usize,
) -> MinimalPointSequence {
    let theta = beta / alpha;
    let mut lx = log_x0;
    let mut points = Vec::with_capacity(len);
    for j in 0..len {
        let t = j as i64 + 1;
        let mut coords = Vec::with_capacity(n);
        let mut p = t;
        for _ in 0..n {
            p *= t;
            coords.push(p);
        }
        points.push(ApproxVector::synthetic(t, coords, lx, -beta * lx, bits));
        lx *= theta;
    }
    MinimalPointSequence { points }
}
