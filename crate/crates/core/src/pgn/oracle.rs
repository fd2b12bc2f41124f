//! Brute-force reference computations for small instances.
//!
//! These are deliberately naive and share no code with the fast paths
//! beyond [`ApproxVector`] construction.

use dashu_int::IBig;

use super::{vector_l, ApproxVector, TargetPoint};
use crate::numerics::PrecisionReal;

/// Every vector with `1 ≤ x ≤ x_max` and `|yᵢ − xξᵢ| ≤ radius` for all `i`.
pub fn box_candidates(target: &TargetPoint, x_max: i64, radius: i64) -> Vec<ApproxVector> {
    let bits = target.precision_bits;
    let r = PrecisionReal::from_i64(radius, bits);
    let mut out = Vec::new();
    for x in 1..=x_max {
        let xr = PrecisionReal::from_i64(x, bits);
        let ranges: Vec<(i64, i64)> = target
            .coords
            .iter()
            .map(|c| {
                let p = &xr * c;
                let lo: i64 = (&p - &r).ceil_to_ibig().try_into().expect("fits i64");
                let hi: i64 = (&p + &r).floor_to_ibig().try_into().expect("fits i64");
                (lo, hi)
            })
            .collect();
        let mut y: Vec<i64> = ranges.iter().map(|r| r.0).collect();
        'outer: loop {
            out.push(ApproxVector::new(target, x, y.clone()));
            for d in (0..y.len()).rev() {
                if y[d] < ranges[d].1 {
                    y[d] += 1;
                    for (e, yv) in y.iter_mut().enumerate().skip(d + 1) {
                        *yv = ranges[e].0;
                    }
                    continue 'outer;
                }
            }
            break;
        }
    }
    out
}

/// Record vectors by the definition: the smallest `Y` at its `x` (ties to
/// the smallest `y`), strictly below every `Y` at smaller `x`.
pub fn brute_minimal_points(vectors: &[ApproxVector]) -> Vec<ApproxVector> {
    let mut xs: Vec<i64> = vectors.iter().filter(|v| v.x > 0).map(|v| v.x).collect();
    xs.sort_unstable();
    xs.dedup();
    let mut out: Vec<ApproxVector> = Vec::new();
    for x in xs {
        let mut best: Option<&ApproxVector> = None;
        for v in vectors.iter().filter(|v| v.x == x) {
            best = match best {
                None => Some(v),
                Some(b) if v.big_y < b.big_y || (v.big_y == b.big_y && v.y < b.y) => Some(v),
                keep => keep,
            };
        }
        let best = best.expect("x taken from the list");
        let beats_all_below = vectors
            .iter()
            .filter(|w| w.x > 0 && w.x < x)
            .all(|w| best.big_y < w.big_y);
        if beats_all_below {
            out.push(best.clone());
        }
    }
    out
}

#[derive(Clone, Debug, PartialEq)]
struct Frac {
    num: IBig,
    den: IBig,
}

fn gcd(a: IBig, b: IBig) -> IBig {
    let (mut a, mut b) = (if a < IBig::ZERO { -a } else { a }, if b < IBig::ZERO { -b } else { b });
    while b != IBig::ZERO {
        let r = &a % &b;
        a = b;
        b = r;
    }
    a
}

impl Frac {
    fn new(num: IBig, den: IBig) -> Frac {
        let g = gcd(num.clone(), den.clone());
        let (mut num, mut den) = if g == IBig::ZERO { (num, den) } else { (num / &g, den / &g) };
        if den < IBig::ZERO {
            num = -num;
            den = -den;
        }
        Frac { num, den }
    }

    fn is_zero(&self) -> bool {
        self.num == IBig::ZERO
    }

    fn sub_mul(&self, a: &Frac, b: &Frac) -> Frac {
        // self − a·b
        let num = &self.num * &a.den * &b.den - &a.num * &b.num * &self.den;
        Frac::new(num, &self.den * &a.den * &b.den)
    }

    fn div(&self, o: &Frac) -> Frac {
        Frac::new(&self.num * &o.den, &self.den * &o.num)
    }
}

/// Rank by Gaussian elimination over the rationals.
pub fn rational_rank(rows: &[Vec<i64>]) -> usize {
    let mut m: Vec<Vec<Frac>> = rows
        .iter()
        .map(|r| r.iter().map(|&v| Frac::new(IBig::from(v), IBig::ONE)).collect())
        .collect();
    let cols = m.first().map_or(0, |r| r.len());
    let mut rank = 0;
    for c in 0..cols {
        let Some(p) = (rank..m.len()).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(rank, p);
        for i in rank + 1..m.len() {
            if m[i][c].is_zero() {
                continue;
            }
            let f = m[i][c].div(&m[rank][c]);
            let (top, bottom) = m.split_at_mut(i);
            let (piv, row) = (&top[rank], &mut bottom[0]);
            for k in c..cols {
                row[k] = row[k].sub_mul(&f, &piv[k]);
            }
        }
        rank += 1;
    }
    rank
}

/// `L_j(q)` for `j = 1..n+1` as the minimum over all linearly independent
/// `j`-subsets of `pool` of the largest `L_x(q)`. `None` where no
/// independent `j`-subset exists.
pub fn exhaustive_profile(pool: &[ApproxVector], q: f64, n: usize) -> Vec<Option<f64>> {
    let vals: Vec<f64> = pool.iter().map(|v| vector_l(v, q, n)).collect();
    let coords: Vec<Vec<i64>> = pool.iter().map(|v| v.coords()).collect();
    let mut out = Vec::with_capacity(n + 1);
    for j in 1..=n + 1 {
        let mut best: Option<f64> = None;
        let mut idx: Vec<usize> = (0..j).collect();
        if j > pool.len() {
            out.push(None);
            continue;
        }
        loop {
            let worst = idx.iter().map(|&i| vals[i]).fold(f64::NEG_INFINITY, f64::max);
            if best.is_none_or(|b| worst < b) {
                let rows: Vec<Vec<i64>> = idx.iter().map(|&i| coords[i].clone()).collect();
                if rational_rank(&rows) == j {
                    best = Some(worst);
                }
            }
            // Next combination in lexicographic order.
            let mut d = j;
            while d > 0 && idx[d - 1] == pool.len() - j + d - 1 {
                d -= 1;
            }
            if d == 0 {
                break;
            }
            idx[d - 1] += 1;
            for e in d..j {
                idx[e] = idx[e - 1] + 1;
            }
        }
        out.push(best);
    }
    out
}
