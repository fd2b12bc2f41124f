use std::io::Write;

use dioph_core::bounds::{constants_report, dual_bounds, mm_defect, theta, BoundsError, ConstantsReport};
use dioph_core::numerics::ExtReal;
use rayon::prelude::*;

use crate::config::{OutputFormat, RunConfig};
use crate::error::CliError;
use crate::output::{emit, Cell, Record};

/// Largest `n` accepted by `bounds`.
pub const MAX_N: u32 = 100_000;

/// `"4"`, `"4..8"`, `"4..=8"` (both inclusive) or `"2,4,6"`.
pub fn parse_n_range(s: &str) -> Result<Vec<u32>, CliError> {
    let bad = || CliError::Usage(format!("`{s}`: expected n, a..b or a comma list"));
    let num = |t: &str| t.trim().parse::<u32>().map_err(|_| bad());
    let mut ns = if let Some((a, b)) = s.split_once("..") {
        let b = b.strip_prefix('=').unwrap_or(b);
        let (a, b) = (num(a)?, num(b)?);
        if a > b {
            return Err(CliError::Usage(format!("`{s}`: empty range")));
        }
        (a..=b).collect::<Vec<u32>>()
    } else {
        s.split(',').map(num).collect::<Result<Vec<u32>, _>>()?
    };
    if let Some(&n) = ns.iter().find(|&&n| n == 0 || n > MAX_N) {
        return Err(CliError::Usage(format!("n = {n} outside 1..={MAX_N}")));
    }
    ns.sort_unstable();
    ns.dedup();
    Ok(ns)
}

fn report_record(r: &ConstantsReport, digits: usize, with_theta: bool) -> Record {
    let mut rec = Record::new();
    rec.push("n", Cell::text(r.n.to_string()))
        .push("tau_n", Cell::opt(r.tau_n.as_ref(), digits))
        .push("laurent_bound", Cell::opt(r.laurent_bound.as_ref(), digits))
        .push("sigma_n", Cell::opt(r.sigma_n.as_ref(), digits))
        .push("w_n", Cell::opt(r.w_n_aux.as_ref(), digits))
        .push("mu_n", Cell::opt(r.mu_n.as_ref(), digits))
        .push("regular_graph_bound", Cell::opt(r.regular_graph_bound.as_ref(), digits))
        .push("chi_n", Cell::opt(r.chi_estimate.as_ref(), digits));
    if with_theta {
        rec.push("theta", Cell::real(&r.theta, digits));
    }
    rec
}

pub fn cmd_bounds(ns: &[u32], even_only: bool, cfg: &RunConfig, out: &mut dyn Write) -> Result<(), CliError> {
    let ns: Vec<u32> = ns.iter().copied().filter(|n| !even_only || n % 2 == 0).collect();
    if ns.is_empty() {
        return Err(CliError::Usage("no n left in the range".into()));
    }
    let wp = cfg.working_precision();
    let reports = ns
        .par_iter()
        .map(|&n| constants_report(n, &wp))
        .collect::<Result<Vec<_>, BoundsError>>()?;
    // CSV rows are flat, so Θ goes in a column there; elsewhere it is printed once.
    let csv = cfg.format == OutputFormat::Csv;
    let mut records: Vec<Record> = reports.iter().map(|r| report_record(r, cfg.digits, csv)).collect();
    match cfg.format {
        OutputFormat::Csv => emit(out, &records, cfg.format),
        OutputFormat::Json => {
            let mut th = Record::new();
            th.push("constant", Cell::text("theta"))
                .push("value", Cell::real(&theta(&wp)?, cfg.digits));
            records.push(th);
            emit(out, &records, cfg.format)
        }
        OutputFormat::Text => {
            emit(out, &records, cfg.format)?;
            let mut th = Record::new();
            th.push("theta", Cell::real(&theta(&wp)?, cfg.digits));
            emit(out, &[th], cfg.format)
        }
    }
}

/// `inf`/`infinity` or a decimal.
pub fn parse_beta(cfg: &RunConfig, s: &str) -> Result<ExtReal, CliError> {
    match s.to_ascii_lowercase().as_str() {
        "inf" | "infinity" | "+inf" => Ok(ExtReal::PosInfinity),
        _ => Ok(ExtReal::Finite(cfg.real("beta", s)?)),
    }
}

pub fn cmd_theorem_new(n: u32, alpha: &str, beta: &str, cfg: &RunConfig, out: &mut dyn Write) -> Result<(), CliError> {
    if n == 0 {
        return Err(CliError::Usage("n must be positive".into()));
    }
    let d = cfg.digits;
    let a = cfg.real("alpha", alpha)?;
    let b = parse_beta(cfg, beta)?;
    let ctx = mm_defect(n, &a, &b)?;
    let mut rec = Record::new();
    rec.push("n", Cell::text(n.to_string()))
        .push("alpha", Cell::real(&ctx.alpha, d))
        .push("beta", Cell::ext(&ctx.beta, d))
        .push("epsilon", Cell::real(&ctx.epsilon, d))
        .push("threshold", Cell::real(&ctx.threshold, d))
        .push("phi", Cell::opt(ctx.phi.as_ref(), d))
        .push("rho", Cell::opt(ctx.rho.as_ref(), d))
        .push("S", Cell::opt(ctx.s.as_ref(), d))
        .push("T", Cell::opt(ctx.t.as_ref(), d));
    match dual_bounds(&ctx) {
        Ok(bounds) => {
            rec.push("status", Cell::text("ok"))
                .push("what_lower", Cell::real(&bounds.what_lower, d))
                .push("what_upper", Cell::real(&bounds.what_upper, d))
                .push("w_lower", Cell::real(&bounds.w_lower, d))
                .push("w_upper", Cell::real(&bounds.w_upper, d));
            emit(out, &[rec], cfg.format)
        }
        Err(e) => {
            let err: CliError = e.into();
            rec.push("status", Cell::text(err.kind()));
            emit(out, &[rec], cfg.format)?;
            Err(err)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::config::Threads;

    fn cfg(format: OutputFormat) -> RunConfig {
        RunConfig::new(256, "1e-30", format, Threads::Auto, 12).unwrap()
    }

    #[test]
    fn ranges() {
        assert_eq!(parse_n_range("4..8").unwrap(), vec![4, 5, 6, 7, 8]);
        assert_eq!(parse_n_range("4..=6").unwrap(), vec![4, 5, 6]);
        assert_eq!(parse_n_range("6,2,4,2").unwrap(), vec![2, 4, 6]);
        assert_eq!(parse_n_range("3").unwrap(), vec![3]);
        for bad in ["", "a", "8..4", "0", "1..x", "2,,4"] {
            assert!(parse_n_range(bad).is_err(), "{bad}");
        }
    }

    #[test]
    fn odd_n_marks_missing_values() {
        let mut buf = Vec::new();
        cmd_bounds(&[3], false, &cfg(OutputFormat::Json), &mut buf).unwrap();
        let s = String::from_utf8(buf).unwrap();
        let first = s.lines().next().unwrap();
        assert!(first.contains("\"laurent_bound\":\"0.500000000000\""), "{first}");
        assert!(first.contains("\"sigma_n\":null"));
        assert!(first.contains("\"regular_graph_bound\":null"));
    }

    #[test]
    fn theorem_trivial_point() {
        let mut buf = Vec::new();
        cmd_theorem_new(5, "0.2", "0.2", &cfg(OutputFormat::Json), &mut buf).unwrap();
        let s = String::from_utf8(buf).unwrap();
        for k in ["what_lower", "what_upper", "w_lower", "w_upper"] {
            assert!(s.contains(&format!("\"{k}\":\"5.00000000000\"")), "{s}");
        }
    }
}
