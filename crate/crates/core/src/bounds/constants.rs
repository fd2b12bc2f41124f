use super::defect::{beta_for_equality, mm_defect, what_lower_raw};
use super::BoundsError;
use crate::numerics::{
    find_root, find_root_partial, scan_all_brackets, scan_for_bracket, Bracket, ExtReal,
    NumericsError, PrecisionReal, WorkingPrecision,
};

fn require_even(n: u32, min: u32) -> Result<(), BoundsError> {
    if n < min || !n.is_multiple_of(2) {
        return Err(BoundsError::Domain(format!(
            "n = {n} must be an even integer >= {min}"
        )));
    }
    Ok(())
}

fn no_root(what: &str, e: NumericsError) -> BoundsError {
    match e {
        NumericsError::NoSignChange => BoundsError::NoRoot(format!("{what}: no sign change")),
        other => BoundsError::Numerics(other),
    }
}

/// `(n/2)^n t^{n+1} − (n/2 + 1) t + 1`.
pub fn tau_polynomial(n: u32, t: &PrecisionReal) -> PrecisionReal {
    let bits = t.precision_bits();
    let half_n = PrecisionReal::ratio(n as i64, 2, bits);
    let one = PrecisionReal::one(bits);
    (&half_n * t).powi(n as i64) * t - (&half_n + &one) * t + one
}

/// The root of [`tau_polynomial`] in `(2/(n+2), 2/n)` for even `n ≥ 2`.
///
/// The polynomial also vanishes at `t = 2/n`; the scan keeps the first sign
/// change, which is the interior root.
pub fn tau(n: u32, wp: &WorkingPrecision) -> Result<PrecisionReal, BoundsError> {
    require_even(n, 2)?;
    let lo = wp.ratio(2, n as i64 + 2);
    let hi = wp.ratio(2, n as i64);
    let f = |t: &PrecisionReal| tau_polynomial(n, t);
    let br = scan_for_bracket(|t| Some(f(t)), &lo, &hi, 64).map_err(|e| no_root("tau", e))?;
    Ok(find_root(f, &br, &wp.abs_tol(&hi))?)
}

/// `2/(n+1)` for odd `n ≥ 3`.
pub fn laurent_odd_bound(n: u32, wp: &WorkingPrecision) -> Result<PrecisionReal, BoundsError> {
    if n < 3 || n.is_multiple_of(2) {
        return Err(BoundsError::Domain(format!("n = {n} must be an odd integer >= 3")));
    }
    Ok(wp.ratio(2, n as i64 + 1))
}

/// `(n−1)w/(w−n) − w + 1 − ((n−1)/(w−n))^n`; `None` at the pole `w = n`.
pub fn w_equation(n: u32, w: &PrecisionReal) -> Option<PrecisionReal> {
    let bits = w.precision_bits();
    let n_r = PrecisionReal::from_i64(n as i64, bits);
    let nm1 = PrecisionReal::from_i64(n as i64 - 1, bits);
    let d = w - &n_r;
    if d.is_zero() {
        return None;
    }
    let q = &nm1 / &d;
    Some(&q * w - w + PrecisionReal::one(bits) - q.powi(n as i64))
}

/// `(w(n), μ_n)` with `μ_n = max(2n − 2, w(n))`.
///
/// `w = 2n − 1` solves the equation identically, so the scan stops just short
/// of it; the pole at `w = n` is excluded the same way.
pub fn mu(n: u32, wp: &WorkingPrecision) -> Result<(PrecisionReal, PrecisionReal), BoundsError> {
    if n < 2 {
        return Err(BoundsError::Domain(format!("n = {n} must be >= 2")));
    }
    let n_r = wp.real(n as i64);
    let guard = &n_r * PrecisionReal::pow2(-20, wp.bits);
    let lo = &n_r + &guard;
    let hi = wp.real(2 * n as i64 - 1) - &guard;
    let br = scan_for_bracket(|w| w_equation(n, w), &lo, &hi, 2000)
        .map_err(|e| no_root("w(n)", e))?;
    let w = find_root_partial(|w| w_equation(n, w), &br, &wp.abs_tol(&n_r))?;
    let floor = wp.real(2 * n as i64 - 2);
    let m = PrecisionReal::max_of(&w, &floor);
    Ok((w, m))
}

/// Left side of the implicit `σ_n` equation minus `μ_n`: the uniform dual
/// lower bound at `(α, β = 2/n)`. `None` where the bound is undefined.
pub fn sigma_equation(n: u32, alpha: &PrecisionReal, mu_n: &PrecisionReal) -> Option<PrecisionReal> {
    let beta = PrecisionReal::ratio(2, n as i64, alpha.precision_bits());
    if alpha > &beta || !alpha.is_positive() {
        return None;
    }
    let ctx = mm_defect(n, alpha, &ExtReal::Finite(beta)).ok()?;
    what_lower_raw(&ctx).map(|w| w - mu_n)
}

/// `σ_n` for even `n ≥ 4`: the sign change of [`sigma_equation`] on
/// `(1/n, τ_n]` nearest to `τ_n`.
pub fn sigma(n: u32, wp: &WorkingPrecision) -> Result<PrecisionReal, BoundsError> {
    require_even(n, 4)?;
    let (_, mu_n) = mu(n, wp)?;
    let t = tau(n, wp)?;
    let lo = wp.ratio(1, n as i64);
    let f = |a: &PrecisionReal| sigma_equation(n, a, &mu_n);
    let brackets = scan_all_brackets(f, &lo, &t, 400)?;
    let br = brackets
        .last()
        .ok_or_else(|| BoundsError::NoRoot("sigma: no sign change among valid alpha".into()))?;
    Ok(find_root_partial(f, br, &wp.abs_tol(&t))?)
}

/// `e^t/t − 2√e`.
pub fn theta_equation(t: &PrecisionReal) -> PrecisionReal {
    let bits = t.precision_bits();
    let two_sqrt_e = PrecisionReal::from_i64(2, bits) * PrecisionReal::ratio(1, 2, bits).exp();
    t.exp() / t - two_sqrt_e
}

/// The root of `e^t/t = 2√e` in `(1, 3)`.
pub fn theta(wp: &WorkingPrecision) -> Result<PrecisionReal, BoundsError> {
    let br = Bracket::certify(theta_equation, wp.real(1), wp.real(3))?;
    Ok(find_root(theta_equation, &br, &wp.abs_tol(&wp.real(2)))?)
}

/// `β₀(α)^{n−1}/α^n − μ_n` with `β₀ = beta_for_equality(n, α)`.
pub fn regular_graph_equation(
    n: u32,
    alpha: &PrecisionReal,
    mu_n: &PrecisionReal,
    wp: &WorkingPrecision,
) -> Result<PrecisionReal, BoundsError> {
    let ni = n as i64;
    let b = beta_for_equality(n, alpha, wp)?;
    Ok(b.powi(ni - 1) / alpha.powi(ni) - mu_n)
}

/// Bound for the uniform exponent on the regular graph: the `α` where
/// [`regular_graph_equation`] vanishes, for even `n ≥ 4`.
pub fn regular_graph_lambda_bound(n: u32, wp: &WorkingPrecision) -> Result<PrecisionReal, BoundsError> {
    require_even(n, 4)?;
    let (_, mu_n) = mu(n, wp)?;
    let g = |a: &PrecisionReal| regular_graph_equation(n, a, &mu_n, wp);
    let mut lo = wp.ratio(1, n as i64);
    if !g(&lo)?.is_negative() {
        return Err(BoundsError::NoRoot("regular graph: no sign change at alpha = 1/n".into()));
    }
    // Geometric search 2^k/n, then towards 1 by halving the gap.
    let one = wp.real(1);
    let two = wp.real(2);
    let mut hi = None;
    let mut cand = &lo * &two;
    while cand < one {
        if g(&cand)?.is_positive() {
            hi = Some(cand);
            break;
        }
        lo = cand.clone();
        cand = &cand * &two;
    }
    if hi.is_none() {
        let mut gap = &one - &lo;
        for _ in 0..60 {
            gap = &gap / &two;
            let c = &one - &gap;
            if g(&c)?.is_positive() {
                hi = Some(c);
                break;
            }
            lo = c;
        }
    }
    let hi = hi.ok_or_else(|| BoundsError::NoRoot("regular graph: no sign change on [1/n, 1)".into()))?;
    let br = Bracket::new(lo, hi, -1, 1)?;
    let tol = wp.abs_tol(&br.lo);
    let root = find_root_partial(|a| g(a).ok(), &br, &tol)?;
    Ok(root)
}

/// `n² (2/n − τ_n)`, which tends to `χ ≈ 3.18`.
pub fn chi_estimate(n: u32, wp: &WorkingPrecision) -> Result<PrecisionReal, BoundsError> {
    require_even(n, 4)?;
    let t = tau(n, wp)?;
    let n2 = wp.real(n as i64 * n as i64);
    Ok(&n2 * &(wp.ratio(2, n as i64) - t))
}

/// `(1/σ_n + 1, n/Θ + 1)`.
pub fn integer_approx_exponents(
    n: u32,
    wp: &WorkingPrecision,
) -> Result<(PrecisionReal, PrecisionReal), BoundsError> {
    require_even(n, 4)?;
    let one = wp.real(1);
    let s = sigma(n, wp)?;
    let th = theta(wp)?;
    Ok((s.recip() + &one, wp.real(n as i64) / th + one))
}

/// Every constant defined for a given `n`; entries that do not apply to
/// this `n` are `None`.
#[derive(Clone, Debug, PartialEq)]
pub struct ConstantsReport {
    pub n: u32,
    pub tau_n: Option<PrecisionReal>,
    pub laurent_bound: Option<PrecisionReal>,
    pub sigma_n: Option<PrecisionReal>,
    pub w_n_aux: Option<PrecisionReal>,
    pub mu_n: Option<PrecisionReal>,
    pub regular_graph_bound: Option<PrecisionReal>,
    pub chi_estimate: Option<PrecisionReal>,
    pub theta: PrecisionReal,
}

pub fn constants_report(n: u32, wp: &WorkingPrecision) -> Result<ConstantsReport, BoundsError> {
    if n == 0 {
        return Err(BoundsError::Domain("n must be positive".into()));
    }
    let even = n.is_multiple_of(2);
    let tau_n = if even { Some(tau(n, wp)?) } else { None };
    let laurent_bound = if !even && n >= 3 {
        Some(laurent_odd_bound(n, wp)?)
    } else {
        None
    };
    let (w_n_aux, mu_n) = if n >= 2 {
        let (w, m) = mu(n, wp)?;
        (Some(w), Some(m))
    } else {
        (None, None)
    };
    let big_even = even && n >= 4;
    let sigma_n = if big_even { Some(sigma(n, wp)?) } else { None };
    let regular_graph_bound = if big_even {
        Some(regular_graph_lambda_bound(n, wp)?)
    } else {
        None
    };
    let chi = match (&tau_n, big_even) {
        (Some(t), true) => {
            let n2 = wp.real(n as i64 * n as i64);
            Some(&n2 * &(wp.ratio(2, n as i64) - t))
        }
        _ => None,
    };
    Ok(ConstantsReport {
        n,
        tau_n,
        laurent_bound,
        sigma_n,
        w_n_aux,
        mu_n,
        regular_graph_bound,
        chi_estimate: chi,
        theta: theta(wp)?,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn wp() -> WorkingPrecision {
        WorkingPrecision::default()
    }

    fn near(x: &PrecisionReal, v: f64, tol: f64) -> bool {
        (x.to_f64() - v).abs() <= tol
    }

    #[test]
    fn tau_values() {
        let w = wp();
        let golden = (w.real(5).sqrt() - w.real(1)) / w.real(2);
        assert!((tau(2, &w).unwrap() - golden).abs() < PrecisionReal::parse("1e-28", 256).unwrap());
        assert!(near(&tau(4, &w).unwrap(), 0.3706354553, 1e-9));
        assert!(near(&tau(6, &w).unwrap(), 0.2681846506, 1e-9));
        assert!(near(&tau(20, &w).unwrap(), 0.0928033856, 1e-9));
        assert!(matches!(tau(3, &w), Err(BoundsError::Domain(_))));
        assert!(matches!(tau(0, &w), Err(BoundsError::Domain(_))));
    }

    #[test]
    fn tau_in_interval_with_small_residual() {
        let w = wp();
        let eps = PrecisionReal::parse("1e-25", 256).unwrap();
        for n in (2..=16).step_by(2) {
            let t = tau(n, &w).unwrap();
            assert!(t > w.ratio(2, n as i64 + 2) && t < w.ratio(2, n as i64));
            assert!(tau_polynomial(n, &t).abs() < eps);
        }
    }

    #[test]
    fn laurent() {
        let w = wp();
        assert_eq!(laurent_odd_bound(3, &w).unwrap(), w.ratio(1, 2));
        assert_eq!(laurent_odd_bound(5, &w).unwrap(), w.ratio(1, 3));
        assert_eq!(laurent_odd_bound(7, &w).unwrap(), w.ratio(1, 4));
        assert!(laurent_odd_bound(4, &w).is_err());
    }

    #[test]
    fn mu_values() {
        let w = wp();
        let eps = PrecisionReal::parse("1e-20", 256).unwrap();
        for (n, expect) in [(2u32, 2.6180339887), (4, 6.28744), (6, 10.13822), (10, 17.99838)] {
            let (wn, m) = mu(n, &w).unwrap();
            assert!(near(&wn, expect, 1e-4), "n={n}: {wn}");
            assert!(w_equation(n, &wn).unwrap().abs() < eps);
            assert!(m >= wn);
        }
        assert_eq!(mu(10, &w).unwrap().1, w.real(18));
        assert_eq!(mu(20, &w).unwrap().1, w.real(38));
        assert!(mu(1, &w).is_err());
    }

    #[test]
    fn sigma_values() {
        let w = wp();
        assert!(near(&sigma(4, &w).unwrap(), 0.3706295115, 1e-9));
        assert!(near(&sigma(6, &w).unwrap(), 0.2681832291, 1e-9));
        let s8 = sigma(8, &w).unwrap();
        assert!(s8 > w.ratio(2, 10) && s8 < tau(8, &w).unwrap());
        assert!(sigma(2, &w).is_err());
    }

    #[test]
    fn theta_value() {
        let w = wp();
        let t = theta(&w).unwrap();
        assert!(near(&t, 1.756431208626, 1e-11));
        assert!(theta_equation(&t).abs() < PrecisionReal::parse("1e-25", 256).unwrap());
    }

    #[test]
    fn regular_graph_values() {
        let w = wp();
        let b4 = regular_graph_lambda_bound(4, &w).unwrap();
        assert!(near(&b4, 0.3587903069, 1e-9));
        let b8 = regular_graph_lambda_bound(8, &w).unwrap();
        assert!(near(&b8, 0.1967838858, 1e-9));
    }

    #[test]
    fn chi_and_exponents() {
        let w = wp();
        assert!(near(&chi_estimate(4, &w).unwrap(), 2.070, 1e-3));
        assert!(near(&chi_estimate(20, &w).unwrap(), 2.879, 1e-3));
        let (a, b) = integer_approx_exponents(4, &w).unwrap();
        assert!(near(&a, 3.698, 1e-3));
        assert!(near(&b, 3.277, 1e-3));
    }

    #[test]
    fn report_shapes() {
        let w = wp();
        let r3 = constants_report(3, &w).unwrap();
        assert!(r3.tau_n.is_none() && r3.sigma_n.is_none());
        assert_eq!(r3.laurent_bound, Some(w.ratio(1, 2)));
        let r2 = constants_report(2, &w).unwrap();
        assert!(r2.tau_n.is_some() && r2.sigma_n.is_none() && r2.chi_estimate.is_none());
        let r1 = constants_report(1, &w).unwrap();
        assert!(r1.mu_n.is_none());
    }
}
