use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use dioph_core::pgn::export::{
    estimates_json, intersections_csv, profile_csv, sequence_csv, theorem_json,
};
use dioph_core::pgn::{
    check_theorem_v, default_q_grid, enumerate_candidates, estimate_exponents,
    intersection_diagnostics, minimal_points, minkowski_defect, profile, profile_horizon,
    TargetPoint,
};

use crate::config::RunConfig;
use crate::error::CliError;
use crate::output::{emit, Cell, Record};

pub const DEFAULT_XMAX_CAP: u64 = 1_000_000;

pub const SEQUENCE_FILE: &str = "minimal_points.csv";
pub const PROFILE_FILE: &str = "profile.csv";
pub const ESTIMATES_FILE: &str = "estimates.json";
pub const THEOREM_FILE: &str = "theorem.json";
pub const INTERSECTIONS_FILE: &str = "intersections.csv";

#[derive(Clone, Debug)]
pub struct SimulateArgs {
    pub target: String,
    pub n: usize,
    pub x_max: u64,
    pub widen: u32,
    pub alpha: Option<String>,
    pub beta: Option<String>,
    pub out_dir: PathBuf,
    pub q_points: usize,
    pub window: f64,
    pub no_cap: bool,
}

fn write_file(dir: &Path, name: &str, contents: &str) -> Result<String, CliError> {
    let path = dir.join(name);
    fs::write(&path, contents).map_err(|e| CliError::Io {
        path: path.display().to_string(),
        message: e.to_string(),
    })?;
    Ok(path.display().to_string())
}

fn pretty(v: &serde_json::Value) -> String {
    serde_json::to_string_pretty(v).expect("json value") + "\n"
}

pub fn cmd_simulate(args: &SimulateArgs, cfg: &RunConfig, out: &mut dyn Write) -> Result<(), CliError> {
    if args.n == 0 {
        return Err(CliError::Usage("n must be positive".into()));
    }
    if args.x_max == 0 {
        return Err(CliError::Usage("xmax must be at least 1".into()));
    }
    if args.x_max > DEFAULT_XMAX_CAP && !args.no_cap {
        return Err(CliError::Usage(format!(
            "xmax = {} exceeds the cap {DEFAULT_XMAX_CAP}; pass --no-xmax-cap to run anyway",
            args.x_max
        )));
    }
    if !(args.window > 0.0 && args.window <= 1.0) {
        return Err(CliError::Usage(format!("window {} must lie in (0, 1]", args.window)));
    }
    let pair = match (&args.alpha, &args.beta) {
        (Some(a), Some(b)) => Some((cfg.real("alpha", a)?, cfg.real("beta", b)?)),
        (None, None) => None,
        _ => return Err(CliError::Usage("--alpha and --beta must be given together".into())),
    };

    let target = TargetPoint::from_spec(&args.target, args.n, cfg.precision_bits)?;
    let pool = enumerate_candidates(&target, args.x_max, args.widen)?;
    let seq = minimal_points(&pool);
    let q_max = profile_horizon(args.n, args.x_max);
    let grid = default_q_grid(&seq, args.n, q_max, args.q_points);
    let prof = profile(&pool, &grid, args.n)?;
    let rows = intersection_diagnostics(&seq, args.n);

    fs::create_dir_all(&args.out_dir).map_err(|e| CliError::Io {
        path: args.out_dir.display().to_string(),
        message: e.to_string(),
    })?;
    let d = cfg.digits;
    let dir = args.out_dir.as_path();
    let mut files = vec![
        write_file(dir, SEQUENCE_FILE, &sequence_csv(&seq, args.n, d))?,
        write_file(dir, PROFILE_FILE, &profile_csv(&prof, args.n, d))?,
        write_file(dir, INTERSECTIONS_FILE, &intersections_csv(&rows, d))?,
    ];
    let est = estimate_exponents(&seq, &prof, args.n, args.window, cfg.precision_bits)?;
    files.push(write_file(dir, ESTIMATES_FILE, &pretty(&estimates_json(&est, d)))?);
    let report = match &pair {
        Some((a, b)) => {
            let r = check_theorem_v(&seq, args.n, a, b, Some(&pool), args.window)?;
            files.push(write_file(dir, THEOREM_FILE, &pretty(&theorem_json(&r, d)))?);
            Some(r)
        }
        None => None,
    };

    let f = |v: f64| Cell::text(dioph_core::pgn::export::fmt_f64(v, d));
    let mut rec = Record::new();
    rec.push("target", Cell::text(target.to_string()))
        .push("n", Cell::text(args.n.to_string()))
        .push("x_max", Cell::text(args.x_max.to_string()))
        .push("widen", Cell::text(args.widen.to_string()))
        .push("pool_size", Cell::text(pool.len().to_string()))
        .push("records", Cell::text(seq.len().to_string()))
        .push("last_record_x", Cell::text(seq.points.last().map_or(0, |p| p.x).to_string()))
        .push("q_max", f(q_max))
        .push("profile_samples", Cell::text(prof.len().to_string()))
        .push("minkowski_defect", f(minkowski_defect(&prof)))
        .push("lambda_est", f(est.lambda_est))
        .push("lambda_hat_est", f(est.lambda_hat_est))
        .push("psi_low_est", Cell::real(&est.psi_low_est, d))
        .push("psi_high_est", Cell::real(&est.psi_high_est, d))
        .push("w_est", Cell::ext(&est.w_est, d))
        .push("w_hat_est", Cell::ext(&est.w_hat_est, d));
    match &report {
        Some(r) => {
            rec.push("hypothesis_ok", Cell::Bool(r.hypothesis_ok))
                .push("independence_ok", Cell::Bool(r.independence_ok))
                .push("record_ok", Cell::Bool(r.record_ok))
                .push("fitted_c", f(r.fitted_c));
        }
        None => {
            for k in ["hypothesis_ok", "independence_ok", "record_ok", "fitted_c"] {
                rec.push(k, Cell::Missing);
            }
        }
    }
    rec.push("files", Cell::text(files.join(";")));
    emit(out, &[rec], cfg.format)
}
