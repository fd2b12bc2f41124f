use super::BoundsError;
use crate::numerics::{find_root, Bracket, ExtReal, PrecisionReal, WorkingPrecision};

/// `(n, α, β)` together with the defect and every derived quantity used by
/// the dual-exponent bounds.
///
/// `phi`, `rho`, `s`, `t` are `None` when `β = ∞`: the defect is still
/// meaningful there but the envelopes are not.
#[derive(Clone, Debug, PartialEq)]
pub struct BoundContext {
    pub n: u32,
    pub alpha: PrecisionReal,
    pub beta: ExtReal,
    pub epsilon: PrecisionReal,
    pub threshold: PrecisionReal,
    pub phi: Option<PrecisionReal>,
    pub rho: Option<PrecisionReal>,
    pub s: Option<PrecisionReal>,
    pub t: Option<PrecisionReal>,
}

/// Lower and upper bounds for the uniform (`what`) and ordinary (`w`) dual
/// exponents.
#[derive(Clone, Debug, PartialEq)]
pub struct DualBoundSet {
    pub what_lower: PrecisionReal,
    pub what_upper: PrecisionReal,
    pub w_lower: PrecisionReal,
    pub w_upper: PrecisionReal,
}

fn slack_for(n: u32, bits: usize) -> PrecisionReal {
    PrecisionReal::from_i64(n as i64, bits) * PrecisionReal::pow2(8 - bits as i64, bits)
}

/// Defect `ε = 1 − Σ_{j=1..n} α^j / β^{j−1}` plus threshold, `φ`, `ρ`, `S`, `T`.
pub fn mm_defect(n: u32, alpha: &PrecisionReal, beta: &ExtReal) -> Result<BoundContext, BoundsError> {
    if n == 0 {
        return Err(BoundsError::Domain("n must be positive".into()));
    }
    if !alpha.is_positive() {
        return Err(BoundsError::Domain("alpha must be positive".into()));
    }
    let beta_f = match beta {
        ExtReal::PosInfinity => {
            let one = PrecisionReal::one(alpha.precision_bits());
            return Ok(BoundContext {
                n,
                alpha: alpha.clone(),
                beta: ExtReal::PosInfinity,
                epsilon: &one - alpha,
                threshold: PrecisionReal::zero(alpha.precision_bits()),
                phi: None,
                rho: None,
                s: None,
                t: None,
            });
        }
        ExtReal::Finite(b) => b,
    };
    if alpha > beta_f {
        return Err(BoundsError::Domain(format!(
            "alpha = {alpha} exceeds beta = {beta_f}"
        )));
    }
    let bits = alpha.precision_bits().max(beta_f.precision_bits());
    let one = PrecisionReal::one(bits);
    let four = PrecisionReal::from_i64(4, bits);
    let n_r = PrecisionReal::from_i64(n as i64, bits);
    let ni = n as i64;

    let ratio = alpha / beta_f;
    let mut sum = PrecisionReal::zero(bits);
    let mut term = alpha.clone();
    for _ in 0..n {
        sum = &sum + &term;
        term = &term * &ratio;
    }
    let epsilon = &one - &sum;

    let gap = beta_f - alpha;
    let threshold = ratio.powi(ni) * PrecisionReal::min_of(alpha, &gap) / (&four * &n_r);
    let phi = &four * &epsilon * beta_f.powi(ni - 1) / alpha.powi(ni);
    let rho = &four * &epsilon * beta_f * beta_f / (alpha * alpha);

    let base = &ratio + &phi;
    let mut s = PrecisionReal::zero(bits);
    let inv_base = base.recip();
    let mut p = one.clone();
    for _ in 0..n {
        s = &s + &p;
        p = &p * &inv_base;
    }
    let mut t = PrecisionReal::zero(bits);
    let mut p = base.clone();
    for _ in 1..n {
        t = &t + &p;
        p = &p * &base;
    }

    Ok(BoundContext {
        n,
        alpha: alpha.clone(),
        beta: beta.clone(),
        epsilon,
        threshold,
        phi: Some(phi),
        rho: Some(rho),
        s: Some(s),
        t: Some(t),
    })
}

struct Finite<'a> {
    beta: &'a PrecisionReal,
    phi: &'a PrecisionReal,
    rho: &'a PrecisionReal,
    s: &'a PrecisionReal,
    t: &'a PrecisionReal,
}

fn finite_parts(ctx: &BoundContext) -> Result<Finite<'_>, BoundsError> {
    match (&ctx.beta, &ctx.phi, &ctx.rho, &ctx.s, &ctx.t) {
        (ExtReal::Finite(beta), Some(phi), Some(rho), Some(s), Some(t)) => Ok(Finite {
            beta,
            phi,
            rho,
            s,
            t,
        }),
        _ => Err(BoundsError::Domain(
            "dual bounds need a finite beta".into(),
        )),
    }
}

/// The four bound formulas evaluated as written, without the hypothesis
/// check on `ε`. Fails only when `α/β − φ ≤ 0` or `β − ρ ≤ 0`.
pub fn dual_bounds_unchecked(ctx: &BoundContext) -> Result<DualBoundSet, BoundsError> {
    let p = finite_parts(ctx)?;
    let n = ctx.n as i64;
    let ratio = &ctx.alpha / p.beta;
    let contraction = &ratio - p.phi;
    let beta_rho = p.beta - p.rho;
    if !contraction.is_positive() {
        return Err(BoundsError::DegenerateContext(
            "alpha/beta - phi is not positive".into(),
        ));
    }
    if !beta_rho.is_positive() {
        return Err(BoundsError::DegenerateContext("beta - rho is not positive".into()));
    }
    let bits = ctx.alpha.precision_bits();
    let one = PrecisionReal::one(bits);

    let contraction_pow = contraction.powi(-n);
    let what_den = &contraction_pow + &beta_rho * &(&one - p.s);
    if what_den.is_zero() {
        return Err(BoundsError::DegenerateContext("eq. (01) denominator vanishes".into()));
    }
    let what_lower = &beta_rho * p.s / &what_den;

    let beta_plus = p.beta + p.rho;
    let bp2t = &beta_plus * &beta_plus * p.t;
    let w_num = p.rho * p.rho - p.beta * p.beta - &bp2t;
    let w_den = p.rho - p.beta + &bp2t;
    if w_den.is_zero() {
        return Err(BoundsError::DegenerateContext("eq. (03) denominator vanishes".into()));
    }
    let w_lower = w_num / w_den;

    let what_upper = &contraction_pow / &beta_rho;
    let w_upper = &what_upper / &contraction;

    Ok(DualBoundSet {
        what_lower,
        what_upper,
        w_lower,
        w_upper,
    })
}

/// Lower bound for the uniform dual exponent as a partial function: `None`
/// wherever the context is degenerate or `β` is infinite.
pub fn what_lower_raw(ctx: &BoundContext) -> Option<PrecisionReal> {
    dual_bounds_unchecked(ctx).ok().map(|b| b.what_lower)
}

/// Dual-exponent bounds under the hypothesis `0 ≤ ε ≤ threshold`.
///
/// Both comparisons allow a round-off slack of `n · 2^(8 − bits)`, so
/// exact-arithmetic equality cases such as `α = β = 1/n` are accepted.
pub fn dual_bounds(ctx: &BoundContext) -> Result<DualBoundSet, BoundsError> {
    if ctx.beta.is_infinite() {
        return Err(BoundsError::Domain("dual bounds need a finite beta".into()));
    }
    let slack = slack_for(ctx.n, ctx.alpha.precision_bits());
    if ctx.epsilon > &ctx.threshold + &slack {
        return Err(BoundsError::HypothesisViolated {
            epsilon: ctx.epsilon.to_sci_string(12),
            threshold: ctx.threshold.to_sci_string(12),
        });
    }
    if ctx.epsilon < -&slack {
        return Err(BoundsError::NegativeDefect(ctx.epsilon.to_sci_string(12)));
    }
    dual_bounds_unchecked(ctx)
}

/// Closed forms `(β^{n−1}/α^n, β^n/α^{n+1})` valid on the regular graph
/// (`ε = 0` to within `1e-20`).
pub fn regular_graph_duals(
    n: u32,
    alpha: &PrecisionReal,
    beta: &PrecisionReal,
) -> Result<(PrecisionReal, PrecisionReal), BoundsError> {
    let ctx = mm_defect(n, alpha, &ExtReal::Finite(beta.clone()))?;
    let tol = PrecisionReal::parse("1e-20", ctx.alpha.precision_bits())?;
    if ctx.epsilon.abs() > tol {
        return Err(BoundsError::NotRegularGraph(ctx.epsilon.abs().to_sci_string(6)));
    }
    let ni = n as i64;
    let what = beta.powi(ni - 1) / alpha.powi(ni);
    let w = &what * beta / alpha;
    Ok((what, w))
}

/// The `β ≥ α` with `ε(n, α, β) = 0`.
///
/// Solved in `r = α/β ∈ (0, 1]`, where the defect condition reads
/// `α (1 + r + … + r^{n−1}) = 1`; the left side is increasing in `r` and
/// brackets the root between `r = 0` (value `α − 1 < 0`) and `r = 1`
/// (value `nα − 1 ≥ 0`).
pub fn beta_for_equality(
    n: u32,
    alpha: &PrecisionReal,
    wp: &WorkingPrecision,
) -> Result<PrecisionReal, BoundsError> {
    if n == 0 {
        return Err(BoundsError::Domain("n must be positive".into()));
    }
    let bits = alpha.precision_bits().max(wp.bits);
    let one = PrecisionReal::one(bits);
    let n_r = PrecisionReal::from_i64(n as i64, bits);
    if alpha >= &one {
        return Err(BoundsError::Domain(
            "alpha >= 1 forces beta = infinity".into(),
        ));
    }
    let excess = &n_r * alpha - &one;
    let slack = slack_for(n, bits);
    if excess < -&slack {
        return Err(BoundsError::Domain(format!(
            "alpha = {alpha} is below 1/n; no beta >= alpha closes the defect"
        )));
    }
    if excess.abs() <= slack {
        return Ok(alpha.clone());
    }
    let g = |r: &PrecisionReal| {
        let mut acc = PrecisionReal::zero(bits);
        for _ in 0..n {
            acc = &acc * r + &one;
        }
        alpha * &acc - &one
    };
    let bracket = Bracket::new(PrecisionReal::zero(bits), one.clone(), -1, 1)?;
    let tol = wp.abs_tol(&one) * PrecisionReal::ratio(1, 16, bits);
    let r = find_root(g, &bracket, &tol)?;
    Ok(alpha / &r)
}

#[cfg(test)]
mod tests {
    use super::*;

    const B: usize = 256;

    fn r(s: &str) -> PrecisionReal {
        PrecisionReal::parse(s, B).unwrap()
    }

    fn fin(s: &str) -> ExtReal {
        ExtReal::Finite(r(s))
    }

    fn close(a: &PrecisionReal, b: &PrecisionReal, tol: &str) -> bool {
        (a - b).abs() <= r(tol)
    }

    #[test]
    fn dirichlet_point_n3() {
        let third = PrecisionReal::ratio(1, 3, B);
        let ctx = mm_defect(3, &third, &ExtReal::Finite(third.clone())).unwrap();
        assert!(ctx.epsilon.abs() < r("1e-70"));
        assert!(ctx.threshold.is_zero());
        assert!(ctx.phi.unwrap().abs() < r("1e-70"));
        assert!(ctx.rho.unwrap().abs() < r("1e-70"));
    }

    #[test]
    fn half_one_n2() {
        let ctx = mm_defect(2, &r("0.5"), &fin("1")).unwrap();
        assert_eq!(ctx.epsilon, r("0.25"));
        assert_eq!(ctx.threshold, PrecisionReal::ratio(1, 64, B));
    }

    #[test]
    fn infinite_beta_defect() {
        let ctx = mm_defect(4, &r("0.3"), &ExtReal::PosInfinity).unwrap();
        assert!(close(&ctx.epsilon, &r("0.7"), "1e-70"));
        assert!(ctx.phi.is_none());
        assert!(matches!(dual_bounds(&ctx), Err(BoundsError::Domain(_))));
    }

    #[test]
    fn domain_errors() {
        assert!(matches!(mm_defect(2, &r("0"), &fin("1")), Err(BoundsError::Domain(_))));
        assert!(matches!(mm_defect(2, &r("0.6"), &fin("0.5")), Err(BoundsError::Domain(_))));
        let wp = WorkingPrecision::default();
        assert!(matches!(beta_for_equality(4, &r("0.2"), &wp), Err(BoundsError::Domain(_))));
        assert!(matches!(beta_for_equality(4, &r("1"), &wp), Err(BoundsError::Domain(_))));
    }

    #[test]
    fn dirichlet_bounds_equal_n() {
        let fifth = PrecisionReal::ratio(1, 5, B);
        let ctx = mm_defect(5, &fifth, &ExtReal::Finite(fifth.clone())).unwrap();
        let b = dual_bounds(&ctx).unwrap();
        for v in [&b.what_lower, &b.what_upper, &b.w_lower, &b.w_upper] {
            assert!(close(v, &r("5"), "1e-60"), "{v:?}");
        }
    }

    #[test]
    fn golden_bounds() {
        let alpha = (r("5").sqrt() - r("1")) / r("2");
        let ctx = mm_defect(2, &alpha, &fin("1")).unwrap();
        let b = dual_bounds(&ctx).unwrap();
        let what = (r("3") + r("5").sqrt()) / r("2");
        let w = alpha.powi(-3);
        assert!(close(&b.what_lower, &what, "1e-60"));
        assert!(close(&b.what_upper, &what, "1e-60"));
        assert!(close(&b.w_lower, &w, "1e-60"));
        assert!(close(&b.w_upper, &w, "1e-60"));
        let (a, c) = regular_graph_duals(2, &alpha, &r("1")).unwrap();
        assert!(close(&a, &what, "1e-60") && close(&c, &w, "1e-60"));
    }

    #[test]
    fn hypothesis_violations() {
        // ε = 1/4 > 1/64.
        let ctx = mm_defect(2, &r("0.5"), &fin("1")).unwrap();
        assert!(matches!(dual_bounds(&ctx), Err(BoundsError::HypothesisViolated { .. })));
        // Σ > 1: negative defect.
        let ctx = mm_defect(4, &r("0.38"), &fin("0.5")).unwrap();
        assert!(ctx.epsilon.is_negative());
        assert!(matches!(dual_bounds(&ctx), Err(BoundsError::NegativeDefect(_))));
        assert!(matches!(
            regular_graph_duals(2, &r("0.5"), &r("1")),
            Err(BoundsError::NotRegularGraph(_))
        ));
    }

    #[test]
    fn beta_for_equality_cases() {
        let wp = WorkingPrecision::default();
        for n in 2..=6u32 {
            let a = PrecisionReal::ratio(1, n as i64, B);
            assert_eq!(beta_for_equality(n, &a, &wp).unwrap(), a);
        }
        let alpha = (r("5").sqrt() - r("1")) / r("2");
        let b = beta_for_equality(2, &alpha, &wp).unwrap();
        assert!(close(&b, &r("1"), "1e-28"));
        let b = beta_for_equality(4, &r("0.3"), &wp).unwrap();
        let ctx = mm_defect(4, &r("0.3"), &ExtReal::Finite(b)).unwrap();
        assert!(ctx.epsilon.abs() < r("1e-25"));
    }

    #[test]
    fn larger_alpha_gives_smaller_ratio() {
        let wp = WorkingPrecision::default();
        let mut last = None;
        for a in ["0.3", "0.4", "0.5", "0.6", "0.8"] {
            let alpha = r(a);
            let ratio = beta_for_equality(4, &alpha, &wp).unwrap() / &alpha;
            if let Some(prev) = last {
                assert!(ratio > prev);
            }
            last = Some(ratio);
        }
    }
}
