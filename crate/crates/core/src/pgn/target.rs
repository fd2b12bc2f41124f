use std::fmt;
use std::str::FromStr;

use super::PgnError;
use crate::numerics::PrecisionReal;

/// Built-in constants usable as `veronese:<id>`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum NamedConstant {
    E,
    Pi,
    Sqrt2,
    Golden,
    /// `Σ_{m=1}^{10} 10^{−m!}`.
    Liouville,
}

impl NamedConstant {
    pub const ALL: [NamedConstant; 5] = [
        NamedConstant::E,
        NamedConstant::Pi,
        NamedConstant::Sqrt2,
        NamedConstant::Golden,
        NamedConstant::Liouville,
    ];

    pub fn id(self) -> &'static str {
        match self {
            NamedConstant::E => "e",
            NamedConstant::Pi => "pi",
            NamedConstant::Sqrt2 => "sqrt2",
            NamedConstant::Golden => "golden",
            NamedConstant::Liouville => "liouville",
        }
    }

    pub fn value(self, bits: usize) -> PrecisionReal {
        let work = bits + 32;
        let one = PrecisionReal::one(work);
        let v = match self {
            NamedConstant::E => one.exp(),
            NamedConstant::Pi => machin_pi(work),
            NamedConstant::Sqrt2 => PrecisionReal::from_i64(2, work).sqrt(),
            NamedConstant::Golden => {
                (one + PrecisionReal::from_i64(5, work).sqrt()) / PrecisionReal::from_i64(2, work)
            }
            NamedConstant::Liouville => liouville(work),
        };
        v.with_precision(bits)
    }
}

impl FromStr for NamedConstant {
    type Err = PgnError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        NamedConstant::ALL
            .into_iter()
            .find(|c| c.id() == s)
            .ok_or_else(|| PgnError::InvalidTarget(format!("unknown constant `{s}`")))
    }
}

/// `atan(1/k)` by its alternating Taylor series.
fn atan_inv(k: i64, bits: usize) -> PrecisionReal {
    let kk = PrecisionReal::from_i64(k * k, bits);
    let eps = PrecisionReal::pow2(-(bits as i64) - 8, bits);
    let mut power = PrecisionReal::ratio(1, k, bits);
    let mut sum = power.clone();
    let mut m = 1i64;
    loop {
        power = &power / &kk;
        let term = &power / &PrecisionReal::from_i64(2 * m + 1, bits);
        if term < eps {
            break;
        }
        sum = if m % 2 == 1 { &sum - &term } else { &sum + &term };
        m += 1;
    }
    sum
}

fn machin_pi(bits: usize) -> PrecisionReal {
    PrecisionReal::from_i64(16, bits) * atan_inv(5, bits) - PrecisionReal::from_i64(4, bits) * atan_inv(239, bits)
}

fn liouville(bits: usize) -> PrecisionReal {
    let ten = PrecisionReal::from_i64(10, bits);
    let mut sum = PrecisionReal::zero(bits);
    let mut fact: u64 = 1;
    for m in 1..=10u64 {
        fact *= m;
        // Terms below 2^-(bits+8) do not change the rounded sum.
        if fact as f64 * std::f64::consts::LOG2_10 > bits as f64 + 8.0 {
            break;
        }
        sum = &sum + &ten.powi(-(fact as i64));
    }
    sum
}

/// How a [`TargetPoint`] was specified.
#[derive(Clone, Debug, PartialEq)]
pub enum TargetSource {
    /// `(ξ, ξ², …, ξⁿ)`; `xi` is the constant id or decimal literal.
    Veronese { xi: String },
    Explicit,
}

/// A point `ξ ∈ ℝⁿ` at a fixed working precision.
///
/// Irrationality is not checked; a rational target shows up later as a
/// vector with `Y = 0`.
#[derive(Clone, Debug, PartialEq)]
pub struct TargetPoint {
    pub n: usize,
    pub coords: Vec<PrecisionReal>,
    pub source: TargetSource,
    pub precision_bits: usize,
}

impl TargetPoint {
    pub fn veronese(xi: &PrecisionReal, label: &str, n: usize) -> Result<Self, PgnError> {
        if n == 0 {
            return Err(PgnError::InvalidTarget("n must be positive".into()));
        }
        let bits = xi.precision_bits();
        let mut coords = Vec::with_capacity(n);
        let mut p = xi.clone();
        for _ in 0..n {
            coords.push(p.clone());
            p = &p * xi;
        }
        Ok(TargetPoint {
            n,
            coords,
            source: TargetSource::Veronese { xi: label.to_string() },
            precision_bits: bits,
        })
    }

    pub fn explicit(coords: Vec<PrecisionReal>) -> Result<Self, PgnError> {
        if coords.is_empty() {
            return Err(PgnError::InvalidTarget("explicit target needs at least one coordinate".into()));
        }
        let bits = coords.iter().map(|c| c.precision_bits()).max().unwrap_or(0);
        Ok(TargetPoint {
            n: coords.len(),
            coords,
            source: TargetSource::Explicit,
            precision_bits: bits,
        })
    }

    /// Parse `veronese:<id|decimal>` or `explicit:<d1,d2,…>`.
    ///
    /// For explicit targets `n` must match the number of coordinates.
    pub fn from_spec(spec: &str, n: usize, bits: usize) -> Result<Self, PgnError> {
        let (kind, body) = spec
            .split_once(':')
            .ok_or_else(|| PgnError::InvalidTarget(format!("`{spec}`: expected veronese:<x> or explicit:<list>")))?;
        match kind {
            "veronese" => {
                let xi = match body.parse::<NamedConstant>() {
                    Ok(c) => c.value(bits),
                    Err(_) => PrecisionReal::parse(body, bits)
                        .map_err(|_| PgnError::InvalidTarget(format!("`{body}` is neither a constant id nor a decimal")))?,
                };
                TargetPoint::veronese(&xi, body, n)
            }
            "explicit" => {
                let coords = body
                    .split(',')
                    .map(|s| PrecisionReal::parse(s, bits))
                    .collect::<Result<Vec<_>, _>>()
                    .map_err(|e| PgnError::InvalidTarget(e.to_string()))?;
                if coords.len() != n {
                    return Err(PgnError::InvalidTarget(format!(
                        "explicit target has {} coordinates but n = {n}",
                        coords.len()
                    )));
                }
                TargetPoint::explicit(coords)
            }
            other => Err(PgnError::InvalidTarget(format!("unknown target kind `{other}`"))),
        }
    }
}

impl fmt::Display for TargetPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.source {
            TargetSource::Veronese { xi } => write!(f, "veronese:{xi} (n={})", self.n),
            TargetSource::Explicit => {
                let parts: Vec<String> = self.coords.iter().map(|c| c.to_sci_string(12)).collect();
                write!(f, "explicit:{}", parts.join(","))
            }
        }
    }
}
