//! Invariant suites behind `dioph verify`.

use std::fmt;
use std::io::Write;
use std::str::FromStr;

use dioph_core::bounds::{
    beta_for_equality, chi_estimate, dual_bounds, laurent_odd_bound, mm_defect, mu,
    regular_graph_duals, regular_graph_lambda_bound, sigma, sigma_equation, tau, tau_polynomial,
    theta, theta_equation, w_equation, what_lower_raw,
};
use dioph_core::numerics::{ExtReal, PrecisionReal, WorkingPrecision};
use dioph_core::pgn::oracle::{box_candidates, brute_minimal_points, exhaustive_profile, rational_rank};
use dioph_core::pgn::{
    check_theorem_v, default_q_grid, enumerate_candidates, estimate_exponents, integer_rank,
    minimal_points, minkowski_defect, profile, profile_horizon, synthetic_regular_graph,
    vector_l, ApproxVector, MinimalPointSequence, TargetPoint,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::config::RunConfig;
use crate::error::CliError;
use crate::output::{emit, Cell, Record};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Suite {
    Constants,
    Corollary,
    Monotonicity,
    Oracle,
    Profile,
}

impl Suite {
    pub const ALL: [Suite; 5] = [
        Suite::Constants,
        Suite::Corollary,
        Suite::Monotonicity,
        Suite::Oracle,
        Suite::Profile,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Constants => "constants",
            Suite::Corollary => "corollary",
            Suite::Monotonicity => "monotonicity",
            Suite::Oracle => "oracle",
            Suite::Profile => "profile",
        }
    }
}

impl FromStr for Suite {
    type Err = CliError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Suite::ALL.into_iter().find(|x| x.name() == s).ok_or_else(|| {
            let names: Vec<&str> = Suite::ALL.iter().map(|x| x.name()).collect();
            CliError::Usage(format!("unknown suite `{s}`; expected one of {}", names.join(", ")))
        })
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Check {
    pub name: String,
    pub pass: bool,
    pub detail: String,
    /// A failure caused by a published reference value that disagrees with
    /// its own defining equation; it does not affect the exit status.
    pub recorded: bool,
}

/// Stated reference values known to disagree with their defining equation.
const RECORDED: &[(&str, &str)] = &[(
    "tau(6)",
    "the root of 729 t^7 - 4 t + 1 in (1/4, 1/3) is 0.2681846506; the stated 0.268186 is not a root to 1e-6",
)];

struct Checks {
    list: Vec<Check>,
}

impl Checks {
    fn new() -> Self {
        Checks { list: Vec::new() }
    }

    fn add(&mut self, name: impl Into<String>, pass: bool, detail: impl Into<String>) {
        let name = name.into();
        let mut detail = detail.into();
        let recorded = match RECORDED.iter().find(|(n, _)| *n == name) {
            Some((_, why)) if !pass => {
                detail = format!("{detail} (recorded discrepancy: {why})");
                true
            }
            _ => false,
        };
        self.list.push(Check {
            name,
            pass,
            detail,
            recorded,
        });
    }

    fn result<T>(&mut self, name: impl Into<String>, r: Result<T, String>, judge: impl FnOnce(T) -> (bool, String)) {
        let name = name.into();
        match r {
            Ok(v) => {
                let (ok, d) = judge(v);
                self.add(name, ok, d);
            }
            Err(e) => self.add(name, false, format!("error: {e}")),
        }
    }
}

fn e2s<E: fmt::Display>(e: E) -> String {
    e.to_string()
}

fn lit(s: &str, bits: usize) -> PrecisionReal {
    PrecisionReal::parse(s, bits).expect("literal")
}

fn rel_close(a: &PrecisionReal, b: &PrecisionReal, tol: f64) -> bool {
    let scale = PrecisionReal::max_of(&a.abs(), &b.abs());
    (a - b).abs() <= scale * PrecisionReal::from_f64(tol, a.precision_bits())
}

fn constants(wp: &WorkingPrecision, c: &mut Checks) {
    let bits = wp.bits;
    for (n, stated) in [(2u32, 0.618033), (4, 0.370635), (6, 0.268186), (20, 0.092803)] {
        c.result(format!("tau({n})"), tau(n, wp).map_err(e2s), |t| {
            let res = tau_polynomial(n, &t).abs();
            let v = t.to_f64();
            (
                (v - stated).abs() <= 1e-6 && res < lit("1e-20", bits),
                format!("{} vs stated {stated}; residual {}", t.to_decimal_string(10), res.to_sci_string(3)),
            )
        });
    }
    for (n, stated) in [(4u32, 0.370629), (6, 0.268183)] {
        c.result(format!("sigma({n})"), sigma(n, wp).map_err(e2s), |s| {
            let v = s.to_f64();
            ((v - stated).abs() <= 2e-6, format!("{} vs stated {stated}", s.to_decimal_string(10)))
        });
    }
    for n in [4u32, 6, 8, 10, 12] {
        let r = sigma(n, wp).and_then(|s| Ok((s, tau(n, wp)?))).map_err(e2s);
        c.result(format!("2/(n+2) < sigma < tau, n={n}"), r, |(s, t)| {
            let lower = wp.ratio(2, n as i64 + 2);
            (lower < s && s < t, format!("{} < {} < {}", lower.to_decimal_string(10), s.to_decimal_string(10), t.to_decimal_string(10)))
        });
    }
    let mut worst = PrecisionReal::zero(bits);
    let mut bad_mu = Vec::new();
    let mut err = None;
    for n in 2u32..=30 {
        match mu(n, wp) {
            Ok((w, m)) => {
                if let Some(r) = w_equation(n, &w) {
                    worst = PrecisionReal::max_of(&worst, &r.abs());
                }
                if n >= 10 && (m - wp.real(2 * n as i64 - 2)).abs() > lit("1e-20", bits) {
                    bad_mu.push(n);
                }
            }
            Err(e) => err = Some(format!("n={n}: {e}")),
        }
    }
    match err {
        Some(e) => c.add("mu_n and w(n)", false, e),
        None => c.add(
            "mu_n and w(n)",
            bad_mu.is_empty() && worst < lit("1e-20", bits),
            format!("mu_n = 2n-2 fails for {bad_mu:?}; max w(n) residual {}", worst.to_sci_string(3)),
        ),
    }
    c.result("theta", theta(wp).map_err(e2s), |t| {
        let res = theta_equation(&t).abs();
        (
            (t.to_f64() - 1.7564).abs() <= 5e-5 && res < lit("1e-25", bits),
            format!("{}; residual {}", t.to_decimal_string(12), res.to_sci_string(3)),
        )
    });
    for (n, stated) in [(4u32, 0.3588), (6, 0.2540), (8, 0.1968)] {
        c.result(format!("regular-graph bound n={n}"), regular_graph_lambda_bound(n, wp).map_err(e2s), |b| {
            let v = b.to_f64();
            let ok = (v - stated).abs() < 5e-5 && v < stated + 5e-5 && (n != 8 || v < 0.2);
            (ok, format!("{} vs stated {stated}", b.to_decimal_string(10)))
        });
    }
    let r = theta(wp).and_then(|t| Ok((t, regular_graph_lambda_bound(200, wp)?))).map_err(e2s);
    c.result("n * bound(n) near theta, n=200", r, |(t, b)| {
        let v = 200.0 * b.to_f64();
        ((v - t.to_f64()).abs() < 0.05, format!("{v:.6}"))
    });
    c.result("chi(2000) near 3.18", chi_estimate(2000, wp).map_err(e2s), |x| {
        ((x.to_f64() - 3.18).abs() < 0.05, x.to_decimal_string(8))
    });
    c.result("Laurent bound n=3", laurent_odd_bound(3, wp).map_err(e2s), |v| {
        (v == wp.ratio(1, 2), v.to_decimal_string(12))
    });
}

fn trivial_point(wp: &WorkingPrecision, c: &mut Checks) {
    for n in 1u32..=8 {
        let a = wp.ratio(1, n as i64);
        let r = mm_defect(n, &a, &ExtReal::Finite(a.clone())).and_then(|ctx| dual_bounds(&ctx)).map_err(e2s);
        c.result(format!("trivial point n={n}"), r, |b| {
            let nr = wp.real(n as i64);
            let tol = lit("1e-20", wp.bits);
            let vals = [&b.what_lower, &b.what_upper, &b.w_lower, &b.w_upper];
            let ok = vals.iter().all(|v| (*v - &nr).abs() < tol);
            (ok, format!("bounds {}", vals.map(|v| v.to_decimal_string(8)).join(" ")))
        });
    }
}

fn corollary(wp: &WorkingPrecision, seed: u64, c: &mut Checks) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for i in 0..200 {
        let n: u32 = rng.gen_range(2..=8);
        let a = rng.gen_range(1.0 / n as f64..=0.9);
        let alpha = PrecisionReal::from_f64(a, wp.bits);
        let r = (|| {
            let beta = beta_for_equality(n, &alpha, wp)?;
            let b = dual_bounds(&mm_defect(n, &alpha, &ExtReal::Finite(beta.clone()))?)?;
            let exact = regular_graph_duals(n, &alpha, &beta)?;
            Ok::<_, dioph_core::bounds::BoundsError>((b, exact))
        })()
        .map_err(e2s);
        c.result(format!("collapse #{i} n={n} alpha={a:.6}"), r, |(b, (what, w))| {
            let ok = rel_close(&b.what_lower, &what, 1e-10)
                && rel_close(&b.what_upper, &what, 1e-10)
                && rel_close(&b.w_lower, &w, 1e-10)
                && rel_close(&b.w_upper, &w, 1e-10);
            (ok, format!("what={} w={}", what.to_decimal_string(10), w.to_decimal_string(10)))
        });
    }
    trivial_point(wp, c);
}

fn monotonicity(wp: &WorkingPrecision, c: &mut Checks) {
    for n in [4u32, 6] {
        let setup = (|| Ok::<_, dioph_core::bounds::BoundsError>((tau(n, wp)?, sigma(n, wp)?, mu(n, wp)?.1)))();
        let (t, s, mu_n) = match setup {
            Ok(v) => v,
            Err(e) => {
                c.add(format!("W increasing n={n}"), false, e.to_string());
                continue;
            }
        };
        let t = t.to_f64();
        for db in [0.0, 1e-4, 1e-3] {
            let beta = wp.ratio(2, n as i64) + PrecisionReal::from_f64(db, wp.bits);
            let mut prev: Option<PrecisionReal> = None;
            let mut steps = 0;
            let mut failure = None;
            for i in 0..=60 {
                let a = t - 0.004 + 0.0045 * i as f64 / 60.0;
                let ctx = match mm_defect(n, &PrecisionReal::from_f64(a, wp.bits), &ExtReal::Finite(beta.clone())) {
                    Ok(ctx) => ctx,
                    Err(e) => {
                        failure = Some(e.to_string());
                        break;
                    }
                };
                if ctx.epsilon.is_negative() {
                    break;
                }
                let Some(v) = what_lower_raw(&ctx) else {
                    prev = None;
                    continue;
                };
                if let Some(p) = &prev {
                    if v <= *p {
                        failure = Some(format!("not increasing at alpha={a:.6}"));
                        break;
                    }
                    steps += 1;
                }
                prev = Some(v);
            }
            let name = format!("W increasing n={n} beta=2/n+{db}");
            match failure {
                Some(f) => c.add(name, false, f),
                None => c.add(name, steps > 0, format!("{steps} grid steps")),
            }
        }
        let at = sigma_equation(n, &s, &mu_n);
        c.add(
            format!("W(sigma) = mu n={n}"),
            at.as_ref().is_some_and(|v| v.abs() < lit("1e-20", wp.bits)),
            at.map_or("undefined".into(), |v| v.to_sci_string(3)),
        );
    }
    for n in 2u32..=8 {
        let mut prev: Option<PrecisionReal> = None;
        let mut ok = true;
        let mut detail = String::from("beta/alpha nondecreasing on a 20-point grid");
        for i in 0..20 {
            let a = 1.0 / n as f64 + (0.9 - 1.0 / n as f64) * i as f64 / 19.0;
            let offset = (0.9 - 1.0 / n as f64) * i as f64 / 19.0;
            let alpha = wp.ratio(1, n as i64) + PrecisionReal::from_f64(offset, wp.bits);
            match beta_for_equality(n, &alpha, wp) {
                Ok(b) => {
                    let r = b / &alpha;
                    if prev.as_ref().is_some_and(|p| r < *p) {
                        ok = false;
                        detail = format!("beta/alpha decreases at alpha={a:.6}");
                        break;
                    }
                    prev = Some(r);
                }
                Err(e) => {
                    ok = false;
                    detail = e.to_string();
                    break;
                }
            }
        }
        c.add(format!("regular-graph beta n={n}"), ok, detail);
    }
}

fn thinned_pool(pool: &[ApproxVector], seq: &MinimalPointSequence, n: usize, cap: usize) -> Vec<ApproxVector> {
    let mut thin: Vec<ApproxVector> = pool
        .iter()
        .filter(|v| v.x == 0 || (v.x == 1 && v.y.iter().all(|&y| y == 0)))
        .cloned()
        .collect();
    for p in seq.points.iter().take(cap / 2) {
        if !thin.contains(p) {
            thin.push(p.clone());
        }
    }
    let step = (pool.len() / cap).max(1);
    let mut i = step / 2;
    while thin.len() < cap && i < pool.len() {
        if !thin.contains(&pool[i]) {
            thin.push(pool[i].clone());
        }
        i += step;
    }
    thin.truncate(cap.max(n + 1));
    thin
}

fn oracle(bits: usize, seed: u64, c: &mut Checks) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for n in 1usize..=3 {
        for id in ["e", "pi", "sqrt2"] {
            let label = format!("{id} n={n}");
            let t = match TargetPoint::from_spec(&format!("veronese:{id}"), n, bits) {
                Ok(t) => t,
                Err(e) => {
                    c.add(format!("target {label}"), false, e.to_string());
                    continue;
                }
            };
            let pool = match enumerate_candidates(&t, 200, 1) {
                Ok(p) => p,
                Err(e) => {
                    c.add(format!("pool {label}"), false, e.to_string());
                    continue;
                }
            };
            let seq = minimal_points(&pool);
            let brute = brute_minimal_points(&box_candidates(&t, 200, 2));
            c.add(
                format!("minimal points {label}"),
                seq.points == brute,
                format!("{} records, box oracle {}", seq.len(), brute.len()),
            );

            let thin = thinned_pool(&pool, &seq, n, 14);
            let qmax = profile_horizon(n, 200);
            let grid: Vec<f64> = (0..25).map(|i| qmax * i as f64 / 24.0).collect();
            let name = format!("profile {label}");
            match profile(&thin, &grid, n) {
                Ok(fast) => {
                    let bad = fast.iter().find(|s| {
                        let slow = exhaustive_profile(&thin, s.q, n);
                        slow.iter().zip(&s.l).any(|(o, l)| *o != Some(*l))
                    });
                    c.add(name, bad.is_none(), bad.map_or(format!("{} samples agree", fast.len()), |s| format!("mismatch at q={}", s.q)));
                }
                Err(e) => c.add(name, false, e.to_string()),
            }

            let coords: Vec<Vec<i64>> = pool.iter().map(|v| v.coords()).collect();
            let mut mismatch = None;
            for _ in 0..40 {
                let k = rng.gen_range(1..=n + 1);
                let mut rows: Vec<Vec<i64>> = (0..k).map(|_| coords[rng.gen_range(0..coords.len())].clone()).collect();
                if rng.gen_bool(0.4) && rows.len() >= 2 {
                    let a = rng.gen_range(-3i64..=3);
                    let b = rng.gen_range(-3i64..=3);
                    let combo: Vec<i64> = rows[0].iter().zip(&rows[1]).map(|(x, y)| a * x + b * y).collect();
                    rows.push(combo);
                }
                if integer_rank(&rows) != rational_rank(&rows) {
                    mismatch = Some(rows);
                    break;
                }
            }
            c.add(
                format!("rank {label}"),
                mismatch.is_none(),
                mismatch.map_or("40 random sets agree".into(), |r| format!("disagree on {r:?}")),
            );
        }
    }
}

fn fibonacci_upto(limit: i64) -> Vec<i64> {
    let mut v = vec![1, 2];
    while v[v.len() - 1] + v[v.len() - 2] <= limit {
        let next = v[v.len() - 1] + v[v.len() - 2];
        v.push(next);
    }
    v
}

fn profile_suite(wp: &WorkingPrecision, c: &mut Checks) {
    let bits = wp.bits;
    let golden = (|| {
        let t = TargetPoint::from_spec("veronese:golden", 1, bits)?;
        let pool = enumerate_candidates(&t, 10_000, 0)?;
        let seq = minimal_points(&pool);
        let grid = default_q_grid(&seq, 1, profile_horizon(1, 10_000), 200);
        let prof = profile(&pool, &grid, 1)?;
        let est = estimate_exponents(&seq, &prof, 1, 0.5, bits)?;
        Ok::<_, dioph_core::pgn::PgnError>((seq, est))
    })()
    .map_err(e2s);
    c.result("golden ratio records", golden, |(seq, est)| {
        let fib = seq.xs() == fibonacci_upto(10_000);
        let lam = (est.lambda_est - 1.0).abs() < 0.05 && (est.lambda_hat_est - 1.0).abs() < 0.05;
        (
            fib && lam,
            format!("Fibonacci records: {fib}; lambda_est={:.6} lambda_hat_est={:.6}", est.lambda_est, est.lambda_hat_est),
        )
    });

    let mink = (|| {
        let t = TargetPoint::from_spec("veronese:e", 2, bits)?;
        let wide = enumerate_candidates(&t, 10_000, 1)?;
        let narrow = enumerate_candidates(&t, 10_000, 0)?;
        let seq = minimal_points(&wide);
        let grid = default_q_grid(&seq, 2, profile_horizon(2, 10_000), 200);
        let pw = profile(&wide, &grid, 2)?;
        let pn = profile(&narrow, &grid, 2)?;
        Ok::<_, dioph_core::pgn::PgnError>((wide, grid, pw, pn))
    })()
    .map_err(e2s);
    match mink {
        Ok((wide, grid, pw, pn)) => {
            let (dw, dn) = (minkowski_defect(&pw), minkowski_defect(&pn));
            c.add("Minkowski defect under widening", dw <= dn, format!("widen 0: {dn:.6}, widen 1: {dw:.6}"));
            let q_end = grid[grid.len() - 1];
            let tail: Vec<_> = pw.iter().filter(|s| s.q >= q_end / 2.0).cloned().collect();
            let dt = minkowski_defect(&tail);
            c.add("Minkowski defect trailing half", dt <= dw + 1e-12, format!("{dt:.6} vs full range {dw:.6}"));
            let sorted = pw.iter().all(|s| s.l.windows(2).all(|w| w[0] <= w[1]));
            c.add("profile sorted", sorted, format!("{} samples", pw.len()));
            let slope_ok = pw.windows(2).all(|w| {
                let dq = w[1].q - w[0].q;
                (0..3).all(|j| (w[1].l[j] - w[0].l[j]).abs() <= dq + 1e-9)
            });
            c.add("profile slopes within [-1, 1/n]", slope_ok, format!("{} intervals", pw.len() - 1));
            let l1_ok = pw.iter().all(|s| {
                let m = wide.iter().map(|v| vector_l(v, s.q, 2)).fold(f64::INFINITY, f64::min);
                m == s.l[0]
            });
            c.add("L_1 is the pool minimum", l1_ok, "every sample");
        }
        Err(e) => c.add("Minkowski defect under widening", false, e),
    }

    let sets: [(u32, &str); 5] = [(1, "1"), (2, "0.55"), (2, "0.7"), (3, "0.4"), (4, "0.3")];
    for (n, a) in sets {
        let name = format!("synthetic regular graph n={n} alpha={a}");
        let r = (|| {
            let alpha = lit(a, bits);
            let beta = if n == 1 { lit("1.5", bits) } else { beta_for_equality(n, &alpha, wp)? };
            let nu = n as usize;
            let seq = synthetic_regular_graph(nu, alpha.to_f64(), beta.to_f64(), 10, 1.5, bits);
            let clean = check_theorem_v(&seq, nu, &alpha, &beta, None, 1.0)?;
            let mut dep = seq.clone();
            dep.points.insert(4, dep.points[3].clone());
            let dep = check_theorem_v(&dep, nu, &alpha, &beta, None, 1.0)?;
            let mut broken = seq.clone();
            broken.points[5].big_y = broken.points[3].big_y.clone();
            broken.points[5].log_y = broken.points[3].log_y;
            let broken = check_theorem_v(&broken, nu, &alpha, &beta, None, 1.0)?;
            Ok::<_, dioph_core::pgn::PgnError>((clean, dep, broken))
        })()
        .map_err(e2s);
        c.result(name, r, |(clean, dep, broken)| {
            let ok = clean.hypothesis_ok
                && clean.fitted_c == 0.0
                && clean.prop1_margin == 0.0
                && clean.prop2_margin == 0.0
                && clean.independence_ok
                && clean.record_ok
                && !dep.independence_ok
                && !broken.record_ok;
            (ok, format!("clean margins {} {}; corrupted data flagged: {}", clean.prop1_margin, clean.prop2_margin, !dep.independence_ok && !broken.record_ok))
        });
    }
}

pub fn run_suite(suite: Suite, cfg: &RunConfig, seed: u64) -> Vec<Check> {
    let wp = cfg.working_precision();
    let mut c = Checks::new();
    match suite {
        Suite::Constants => {
            constants(&wp, &mut c);
            trivial_point(&wp, &mut c);
        }
        Suite::Corollary => corollary(&wp, seed, &mut c),
        Suite::Monotonicity => monotonicity(&wp, &mut c),
        Suite::Oracle => oracle(wp.bits, seed, &mut c),
        Suite::Profile => profile_suite(&wp, &mut c),
    }
    c.list
}

pub fn cmd_verify(suite: Suite, seed: u64, cfg: &RunConfig, out: &mut dyn Write) -> Result<(), CliError> {
    let checks = run_suite(suite, cfg, seed);
    let records: Vec<Record> = checks
        .iter()
        .map(|ch| {
            let mut r = Record::new();
            r.push("suite", Cell::text(suite.name()))
                .push("check", Cell::text(ch.name.clone()))
                .push("pass", Cell::Bool(ch.pass))
                .push("recorded", Cell::Bool(ch.recorded))
                .push("detail", Cell::text(ch.detail.clone()));
            r
        })
        .collect();
    emit(out, &records, cfg.format)?;
    let failed = checks.iter().filter(|ch| !ch.pass && !ch.recorded).count();
    if failed > 0 {
        Err(CliError::VerifyFailed { failed })
    } else {
        Ok(())
    }
}
