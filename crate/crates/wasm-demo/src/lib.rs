//! WebAssembly bindings for the static demo page in `www/`.
//!
//! Each exported function returns a JSON string. The `*_json` functions do
//! the work and are plain Rust so they can be tested natively.

use dioph_core::bounds::{constants_report, dual_bounds, mm_defect, theta};
use dioph_core::numerics::{ExtReal, PrecisionReal, WorkingPrecision};
use dioph_core::pgn::{
    default_q_grid, enumerate_candidates, minimal_points, minkowski_defect, profile,
    profile_horizon, TargetPoint,
};
use serde_json::{json, Value};
use wasm_bindgen::prelude::*;

/// Precision used by the page; enough for 12 printed digits with margin.
pub const BITS: usize = 160;
pub const DIGITS: usize = 12;
/// Largest `n` for the constants table.
pub const MAX_TABLE_N: u32 = 64;
/// Largest `x_max` for the in-browser simulation.
pub const MAX_XMAX: u64 = 50_000;

fn s(v: &PrecisionReal) -> Value {
    Value::String(v.to_decimal_string(DIGITS))
}

fn opt(v: Option<&PrecisionReal>) -> Value {
    v.map_or(Value::Null, s)
}

fn real(what: &str, text: &str) -> Result<PrecisionReal, String> {
    PrecisionReal::parse(text.trim(), BITS).map_err(|_| format!("{what}: `{text}` is not a decimal number"))
}

/// Rows of constants for every even `n` in `from..=to`, plus Θ.
pub fn constants_table_json(from: u32, to: u32) -> Result<String, String> {
    if from < 2 || to > MAX_TABLE_N || from > to {
        return Err(format!("choose 2 <= from <= to <= {MAX_TABLE_N}"));
    }
    let wp = WorkingPrecision::with_bits(BITS);
    let mut rows = Vec::new();
    for n in (from..=to).filter(|n| n % 2 == 0) {
        let r = constants_report(n, &wp).map_err(|e| e.to_string())?;
        rows.push(json!({
            "n": n,
            "tau": opt(r.tau_n.as_ref()),
            "sigma": opt(r.sigma_n.as_ref()),
            "w": opt(r.w_n_aux.as_ref()),
            "mu": opt(r.mu_n.as_ref()),
            "regular_graph": opt(r.regular_graph_bound.as_ref()),
            "chi": opt(r.chi_estimate.as_ref()),
        }));
    }
    let th = theta(&wp).map_err(|e| e.to_string())?;
    Ok(json!({ "rows": rows, "theta": s(&th) }).to_string())
}

/// Defect, auxiliary quantities and the four bounds for `(n, α, β)`.
///
/// A violated hypothesis is not an error here: the context is returned with
/// `status` naming the problem and no bounds.
pub fn dual_bounds_json(n: u32, alpha: &str, beta: &str) -> Result<String, String> {
    if !(1..=50).contains(&n) {
        return Err("n must lie in 1..=50".into());
    }
    let a = real("alpha", alpha)?;
    let b = match beta.trim() {
        "inf" | "infinity" => ExtReal::PosInfinity,
        t => ExtReal::Finite(real("beta", t)?),
    };
    let ctx = mm_defect(n, &a, &b).map_err(|e| e.to_string())?;
    let mut out = json!({
        "n": n,
        "epsilon": s(&ctx.epsilon),
        "threshold": s(&ctx.threshold),
        "phi": opt(ctx.phi.as_ref()),
        "rho": opt(ctx.rho.as_ref()),
        "S": opt(ctx.s.as_ref()),
        "T": opt(ctx.t.as_ref()),
    });
    match dual_bounds(&ctx) {
        Ok(bd) => {
            out["status"] = json!("ok");
            out["bounds"] = json!({
                "what_lower": s(&bd.what_lower),
                "what_upper": s(&bd.what_upper),
                "w_lower": s(&bd.w_lower),
                "w_upper": s(&bd.w_upper),
            });
        }
        Err(e) => {
            out["status"] = json!(e.kind());
            out["message"] = json!(e.to_string());
        }
    }
    Ok(out.to_string())
}

/// Successive minima `L_1..L_{n+1}` on a grid of `q`, as numbers for plotting.
pub fn profile_json(target: &str, n: usize, x_max: u64, widen: u32, points: usize) -> Result<String, String> {
    if !(1..=3).contains(&n) {
        return Err("n must lie in 1..=3".into());
    }
    if x_max == 0 || x_max > MAX_XMAX {
        return Err(format!("x_max must lie in 1..={MAX_XMAX}"));
    }
    if widen > 2 {
        return Err("widen must be at most 2".into());
    }
    let t = TargetPoint::from_spec(target.trim(), n, BITS).map_err(|e| e.to_string())?;
    let pool = enumerate_candidates(&t, x_max, widen).map_err(|e| e.to_string())?;
    let seq = minimal_points(&pool);
    let grid = default_q_grid(&seq, n, profile_horizon(n, x_max), points.clamp(2, 2000));
    let prof = profile(&pool, &grid, n).map_err(|e| e.to_string())?;
    let q: Vec<f64> = prof.iter().map(|p| p.q).collect();
    let l: Vec<Vec<f64>> = (0..=n).map(|j| prof.iter().map(|p| p.l[j]).collect()).collect();
    Ok(json!({
        "n": n,
        "q": q,
        "L": l,
        "records": seq.xs(),
        "pool_size": pool.len(),
        "minkowski_defect": minkowski_defect(&prof),
    })
    .to_string())
}

fn js(r: Result<String, String>) -> Result<String, JsError> {
    r.map_err(|e| JsError::new(&e))
}

#[wasm_bindgen]
pub fn constants_table(from: u32, to: u32) -> Result<String, JsError> {
    js(constants_table_json(from, to))
}

#[wasm_bindgen]
pub fn dual_bounds_explorer(n: u32, alpha: &str, beta: &str) -> Result<String, JsError> {
    js(dual_bounds_json(n, alpha, beta))
}

#[wasm_bindgen]
pub fn profile_plot_data(target: &str, n: usize, x_max: u32, widen: u32, points: usize) -> Result<String, JsError> {
    js(profile_json(target, n, x_max as u64, widen, points))
}
