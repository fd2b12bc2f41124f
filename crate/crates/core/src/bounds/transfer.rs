use super::BoundsError;
use crate::numerics::{find_root, Bracket, ExtReal, PrecisionReal, WorkingPrecision};

/// Which extremal value of `L_{n+1}(q)/q` is being transferred.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Extremum {
    /// `liminf`, giving the uniform dual exponent.
    Liminf,
    /// `limsup`, giving the ordinary dual exponent.
    Limsup,
}

/// Dual exponent from `ψ` via `(1 + 1/w)(1 + ψ) = (n+1)/n`.
///
/// The identity has the same shape for both extrema, so `kind` only labels
/// the result. `ψ = 1/n` maps to `+∞`.
pub fn transfer_dual(n: u32, psi: &PrecisionReal, kind: Extremum) -> Result<ExtReal, BoundsError> {
    let _ = kind;
    if n == 0 {
        return Err(BoundsError::Domain("n must be positive".into()));
    }
    let bits = psi.precision_bits();
    let one = PrecisionReal::one(bits);
    let n_r = PrecisionReal::from_i64(n as i64, bits);
    let shifted = &one + psi;
    if !shifted.is_positive() {
        return Err(BoundsError::Domain(format!("psi = {psi} must exceed -1")));
    }
    let d = (&n_r + &one) / (&n_r * &shifted) - &one;
    if d.is_zero() {
        return Ok(ExtReal::PosInfinity);
    }
    if d.is_negative() {
        return Err(BoundsError::Domain(format!("psi = {psi} exceeds 1/n")));
    }
    Ok(ExtReal::Finite(d.recip()))
}

/// Inverse of [`transfer_dual`]: `ψ = (n+1)/(n(1 + 1/w)) − 1`.
pub fn psi_from_dual(n: u32, w: &ExtReal, bits: usize) -> Result<PrecisionReal, BoundsError> {
    if n == 0 {
        return Err(BoundsError::Domain("n must be positive".into()));
    }
    let one = PrecisionReal::one(bits);
    let n_r = PrecisionReal::from_i64(n as i64, bits);
    match w {
        ExtReal::PosInfinity => Ok(n_r.recip()),
        ExtReal::Finite(w) => {
            if !w.is_positive() {
                return Err(BoundsError::Domain(format!("w = {w} must be positive")));
            }
            Ok((&n_r + &one) / (&n_r * &(&one + &w.recip())) - one)
        }
    }
}

/// Jarník's identity and Laurent's two-sided bounds for `n = 2`.
#[derive(Clone, Debug, PartialEq)]
pub struct ClassicalBounds {
    pub jarnik: PrecisionReal,
    pub laurent_lower: PrecisionReal,
    pub laurent_upper: ExtReal,
}

pub fn classical_low_dim(
    lambda_hat: &PrecisionReal,
    lambda: &PrecisionReal,
) -> Result<ClassicalBounds, BoundsError> {
    let bits = lambda_hat.precision_bits().max(lambda.precision_bits());
    let one = PrecisionReal::one(bits);
    let half = PrecisionReal::ratio(1, 2, bits);
    if lambda_hat < &half || lambda_hat > lambda || lambda_hat >= &one {
        return Err(BoundsError::Domain(format!(
            "need 1/2 <= lambda_hat <= lambda and lambda_hat < 1 (got {lambda_hat}, {lambda})"
        )));
    }
    let gap = &one - lambda_hat;
    let jarnik = gap.recip();
    let laurent_lower = (lambda + lambda_hat) / &gap;
    let den = lambda_hat - lambda + lambda * lambda_hat;
    let laurent_upper = if den.is_positive() {
        ExtReal::Finite(lambda / &den)
    } else {
        ExtReal::PosInfinity
    };
    Ok(ClassicalBounds {
        jarnik,
        laurent_lower,
        laurent_upper,
    })
}

fn h(n: u32, t: &PrecisionReal) -> PrecisionReal {
    let one = PrecisionReal::one(t.precision_bits());
    (&one + t) * (&one + &t.recip()).powi(n as i64)
}

/// `(1+t)(1+1/t)^n − (1+1/ω)(1+ω)^n`.
pub fn lefths_equation(n: u32, t: &PrecisionReal, omega: &PrecisionReal) -> PrecisionReal {
    h(n, t) - h(n, &omega.recip())
}

/// Solution `t ≥ n` of `(1+t)(1+1/t)^n = (1+1/ω)(1+ω)^n`.
///
/// The left side decreases on `(0, n]` and increases on `[n, ∞)`; the root
/// on the increasing branch is returned.
pub fn lefths_solve(n: u32, omega: &PrecisionReal, wp: &WorkingPrecision) -> Result<PrecisionReal, BoundsError> {
    if n == 0 {
        return Err(BoundsError::Domain("n must be positive".into()));
    }
    if !omega.is_positive() {
        return Err(BoundsError::Domain(format!("omega = {omega} must be positive")));
    }
    let omega = omega.with_precision(wp.bits.max(omega.precision_bits()));
    let f = |t: &PrecisionReal| lefths_equation(n, t, &omega);
    let lo = wp.real(n as i64);
    let flo = f(&lo);
    if flo.is_positive() {
        return Err(BoundsError::NoRoot(
            "right side is below the minimum of the left side".into(),
        ));
    }
    if flo.is_zero() {
        return Ok(lo);
    }
    let two = wp.real(2);
    let mut hi = &lo * &two;
    let mut steps = 0;
    while !f(&hi).is_positive() {
        hi = &hi * &two;
        steps += 1;
        if steps > 4 * wp.bits {
            return Err(BoundsError::NoRoot("no upper bracket for the increasing branch".into()));
        }
    }
    let br = Bracket::new(lo, hi, -1, 1)?;
    let tol = wp.abs_tol(&br.hi);
    Ok(find_root(f, &br, &tol)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    const B: usize = 256;

    fn r(s: &str) -> PrecisionReal {
        PrecisionReal::parse(s, B).unwrap()
    }

    fn close(a: &PrecisionReal, b: &PrecisionReal, tol: &str) -> bool {
        (a - b).abs() <= r(tol)
    }

    #[test]
    fn transfer_examples() {
        for n in 1..6 {
            let w = transfer_dual(n, &r("0"), Extremum::Liminf).unwrap();
            assert!(close(w.finite().unwrap(), &PrecisionReal::from_i64(n as i64, B), "1e-60"));
        }
        let third = PrecisionReal::ratio(1, 3, B);
        assert!(transfer_dual(3, &third, Extremum::Limsup).unwrap().is_infinite());
        let w = transfer_dual(2, &r("-0.1"), Extremum::Liminf).unwrap();
        assert!(close(w.finite().unwrap(), &r("1.5"), "1e-60"));
        assert!(matches!(
            transfer_dual(2, &r("-1"), Extremum::Liminf),
            Err(BoundsError::Domain(_))
        ));
        assert!(transfer_dual(2, &r("0.6"), Extremum::Liminf).is_err());
    }

    #[test]
    fn transfer_round_trip() {
        for s in ["-0.9", "-0.5", "0", "0.1", "0.2", "0.33"] {
            let psi = r(s);
            let w = transfer_dual(3, &psi, Extremum::Liminf).unwrap();
            let back = psi_from_dual(3, &w, B).unwrap();
            assert!(close(&back, &psi, "1e-60"));
        }
        assert_eq!(
            psi_from_dual(4, &ExtReal::PosInfinity, B).unwrap(),
            PrecisionReal::ratio(1, 4, B)
        );
    }

    #[test]
    fn classical_examples() {
        let b = classical_low_dim(&r("0.5"), &r("0.5")).unwrap();
        assert!(close(&b.jarnik, &r("2"), "1e-60"));
        assert!(close(&b.laurent_lower, &r("2"), "1e-60"));
        assert!(close(b.laurent_upper.finite().unwrap(), &r("2"), "1e-60"));

        let a = (r("5").sqrt() - r("1")) / r("2");
        let b = classical_low_dim(&a, &r("1")).unwrap();
        assert!(close(&b.jarnik, &(&a * &a).recip(), "1e-60"));

        let b = classical_low_dim(&r("0.55"), &r("0.9")).unwrap();
        assert!(close(&b.jarnik, &(r("1") / r("0.45")), "1e-60"));
        assert!(close(&b.laurent_lower, &(r("1.45") / r("0.45")), "1e-60"));
        assert!(close(b.laurent_upper.finite().unwrap(), &(r("0.9") / r("0.145")), "1e-60"));

        let b = classical_low_dim(&r("0.5"), &r("5")).unwrap();
        assert!(b.laurent_upper.is_infinite());

        assert!(classical_low_dim(&r("0.4"), &r("0.5")).is_err());
        assert!(classical_low_dim(&r("0.7"), &r("0.6")).is_err());
    }

    #[test]
    fn lefths_examples() {
        let wp = WorkingPrecision::default();
        assert!(close(&lefths_solve(1, &r("1"), &wp).unwrap(), &r("1"), "1e-28"));
        assert!(close(&lefths_solve(1, &r("2"), &wp).unwrap(), &r("2"), "1e-28"));
        let eps = r("1e-25");
        for n in 1..=6u32 {
            for om in ["0.5", "1", "3", "10"] {
                let omega = r(om);
                let t = lefths_solve(n, &omega, &wp).unwrap();
                assert!(t >= PrecisionReal::from_i64(n as i64, B));
                let scale = h(n, &t);
                assert!(lefths_equation(n, &t, &omega).abs() <= &eps * &scale);
            }
        }
        assert!(lefths_solve(2, &r("0"), &wp).is_err());
    }
}
