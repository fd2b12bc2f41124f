use super::{NumericsError, PrecisionReal};

/// Interval certified to contain a sign change of some function.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Bracket {
    pub lo: PrecisionReal,
    pub hi: PrecisionReal,
    pub f_lo_sign: i8,
    pub f_hi_sign: i8,
}

impl Bracket {
    pub fn new(
        lo: PrecisionReal,
        hi: PrecisionReal,
        f_lo_sign: i8,
        f_hi_sign: i8,
    ) -> Result<Self, NumericsError> {
        if lo >= hi {
            return Err(NumericsError::InvalidBracket("lo must be below hi".into()));
        }
        if f_lo_sign.abs() != 1 || f_hi_sign.abs() != 1 || f_lo_sign == f_hi_sign {
            return Err(NumericsError::InvalidBracket(
                "endpoint signs must be opposite".into(),
            ));
        }
        Ok(Bracket {
            lo,
            hi,
            f_lo_sign,
            f_hi_sign,
        })
    }

    /// Evaluate `f` at both ends and build a bracket if the signs differ.
    ///
    /// An exact zero at an endpoint counts as the opposite sign of the other
    /// endpoint, so the root is still enclosed.
    pub fn certify<F>(f: F, lo: PrecisionReal, hi: PrecisionReal) -> Result<Self, NumericsError>
    where
        F: Fn(&PrecisionReal) -> PrecisionReal,
    {
        let sl = f(&lo).signum();
        let sh = f(&hi).signum();
        match (sl, sh) {
            (0, 0) => Err(NumericsError::InvalidBracket("f vanishes at both ends".into())),
            (0, s) => Bracket::new(lo, hi, -s, s),
            (s, 0) => Bracket::new(lo, hi, s, -s),
            (a, b) => Bracket::new(lo, hi, a, b),
        }
    }

    pub fn width(&self) -> PrecisionReal {
        &self.hi - &self.lo
    }

    pub fn midpoint(&self) -> PrecisionReal {
        let two = PrecisionReal::from_i64(2, self.lo.precision_bits());
        (&self.lo + &self.hi) / two
    }
}

/// Root of `f` inside `bracket` to an absolute width `tol`.
///
/// Bisection interleaved with Illinois (modified regula falsi) steps. An
/// interpolation step is only taken strictly inside the current bracket and
/// is followed by a bisection step whenever it fails to halve the width, so
/// the bracket shrinks at least geometrically.
pub fn find_root<F>(
    f: F,
    bracket: &Bracket,
    tol: &PrecisionReal,
) -> Result<PrecisionReal, NumericsError>
where
    F: Fn(&PrecisionReal) -> PrecisionReal,
{
    find_root_partial(|x| Some(f(x)), bracket, tol)
}

/// Like [`find_root`] for functions that may report a point as invalid
/// (`None`); hitting one inside the bracket is an error.
pub fn find_root_partial<F>(
    f: F,
    bracket: &Bracket,
    tol: &PrecisionReal,
) -> Result<PrecisionReal, NumericsError>
where
    F: Fn(&PrecisionReal) -> Option<PrecisionReal>,
{
    if !tol.is_positive() {
        return Err(NumericsError::InvalidBracket("tolerance must be positive".into()));
    }
    let bits = bracket.lo.precision_bits().max(bracket.hi.precision_bits());
    let two = PrecisionReal::from_i64(2, bits);
    let half = PrecisionReal::ratio(1, 2, bits);

    let mut lo = bracket.lo.clone();
    let mut hi = bracket.hi.clone();
    let mut flo = f(&lo).ok_or(NumericsError::InvalidPoint)?;
    let mut fhi = f(&hi).ok_or(NumericsError::InvalidPoint)?;
    if flo.is_zero() {
        return Ok(lo);
    }
    if fhi.is_zero() {
        return Ok(hi);
    }
    if flo.signum() == fhi.signum() {
        return Err(NumericsError::InvalidBracket("endpoint signs agree".into()));
    }
    // Which endpoint survived the previous step (for the Illinois weight).
    let mut kept: i8 = 0;
    let max_iter = 4 * bits + 64;

    for _ in 0..max_iter {
        let width = &hi - &lo;
        if &width <= tol {
            return Ok((&lo + &hi) / &two);
        }

        // Interpolation candidate.
        let mut x = (&lo * &fhi - &hi * &flo) / (&fhi - &flo);
        if !(x > lo && x < hi) {
            x = (&lo + &hi) / &two;
        }
        if x == lo || x == hi {
            return Err(NumericsError::NoConvergence {
                width: width.to_f64(),
            });
        }
        let fx = f(&x).ok_or(NumericsError::InvalidPoint)?;
        if fx.is_zero() {
            return Ok(x);
        }
        if fx.signum() == flo.signum() {
            lo = x;
            flo = fx;
            if kept == 1 {
                fhi = &fhi * &half;
            }
            kept = 1;
        } else {
            hi = x;
            fhi = fx;
            if kept == -1 {
                flo = &flo * &half;
            }
            kept = -1;
        }

        let new_width = &hi - &lo;
        if new_width * &two > width {
            let m = (&lo + &hi) / &two;
            if m == lo || m == hi {
                return Err(NumericsError::NoConvergence {
                    width: (&hi - &lo).to_f64(),
                });
            }
            let fm = f(&m).ok_or(NumericsError::InvalidPoint)?;
            if fm.is_zero() {
                return Ok(m);
            }
            if fm.signum() == flo.signum() {
                lo = m;
                flo = fm;
            } else {
                hi = m;
                fhi = fm;
            }
            kept = 0;
        }
    }
    Err(NumericsError::NoConvergence {
        width: (&hi - &lo).to_f64(),
    })
}

fn grid_point(lo: &PrecisionReal, step: &PrecisionReal, i: usize) -> PrecisionReal {
    let k = PrecisionReal::from_i64(i as i64, lo.precision_bits());
    lo + &(step * &k)
}

fn scan<F>(
    f: F,
    lo: &PrecisionReal,
    hi: &PrecisionReal,
    steps: usize,
    first_only: bool,
) -> Result<Vec<Bracket>, NumericsError>
where
    F: Fn(&PrecisionReal) -> Option<PrecisionReal>,
{
    if lo >= hi {
        return Err(NumericsError::InvalidBracket("scan needs lo < hi".into()));
    }
    if steps < 2 {
        return Err(NumericsError::InvalidBracket("scan needs at least 2 steps".into()));
    }
    let bits = lo.precision_bits().max(hi.precision_bits());
    let step = (hi - lo) / PrecisionReal::from_i64(steps as i64, bits);
    let mut out = Vec::new();
    let mut prev: Option<(PrecisionReal, i8)> = None;
    for i in 0..=steps {
        let x = if i == steps {
            hi.clone()
        } else {
            grid_point(lo, &step, i)
        };
        let cur = f(&x).map(|v| v.signum());
        match (prev.take(), cur) {
            (Some((px, ps)), Some(cs)) => {
                if cs == 0 && ps != 0 {
                    out.push(Bracket::new(px, x.clone(), ps, -ps)?);
                } else if ps == 0 && cs != 0 {
                    // Zero at the left point was already reported unless it was the first point.
                    if i == 1 {
                        out.push(Bracket::new(px, x.clone(), -cs, cs)?);
                    }
                } else if ps != 0 && cs != 0 && ps != cs {
                    out.push(Bracket::new(px, x.clone(), ps, cs)?);
                }
                prev = Some((x, cs));
            }
            (None, Some(cs)) => prev = Some((x, cs)),
            (_, None) => prev = None,
        }
        if first_only && !out.is_empty() {
            break;
        }
    }
    Ok(out)
}

/// First grid cell of `[lo, hi]` (split into `steps` equal cells) on which
/// `f` changes sign. Cells touching a point where `f` is invalid (`None`) are
/// skipped.
pub fn scan_for_bracket<F>(
    f: F,
    lo: &PrecisionReal,
    hi: &PrecisionReal,
    steps: usize,
) -> Result<Bracket, NumericsError>
where
    F: Fn(&PrecisionReal) -> Option<PrecisionReal>,
{
    scan(f, lo, hi, steps, true)?
        .into_iter()
        .next()
        .ok_or(NumericsError::NoSignChange)
}

/// Every sign-change cell, in increasing order.
pub fn scan_all_brackets<F>(
    f: F,
    lo: &PrecisionReal,
    hi: &PrecisionReal,
    steps: usize,
) -> Result<Vec<Bracket>, NumericsError>
where
    F: Fn(&PrecisionReal) -> Option<PrecisionReal>,
{
    scan(f, lo, hi, steps, false)
}
