//! CSV and JSON renderings of simulation results.
//!
//! Integers are written as decimal strings; reals with a fixed number of
//! significant digits (round-half-even), so equal inputs give byte-identical
//! output. JSON reals are strings as well, which also covers `inf`.

use serde_json::{json, Value};

use super::{ExponentEstimates, IntersectionRow, MinimalPointSequence, ProfileSample, TheoremVReport};
use crate::numerics::{ExtReal, PrecisionReal};

/// `v` with `digits` significant digits; `inf`, `-inf`, `nan` for non-finite values.
pub fn fmt_f64(v: f64, digits: usize) -> String {
    if v.is_nan() {
        "nan".into()
    } else if v == f64::INFINITY {
        "inf".into()
    } else if v == f64::NEG_INFINITY {
        "-inf".into()
    } else {
        PrecisionReal::from_f64(v, 64).to_decimal_string(digits)
    }
}

fn write_csv(header: Vec<String>, rows: Vec<Vec<String>>) -> String {
    let mut w = csv::WriterBuilder::new().terminator(csv::Terminator::CRLF).from_writer(Vec::new());
    w.write_record(&header).expect("in-memory write");
    for r in rows {
        w.write_record(&r).expect("in-memory write");
    }
    String::from_utf8(w.into_inner().expect("in-memory flush")).expect("utf-8 csv")
}

/// Columns `x, y_1..y_n, Y, log_x, log_Y`.
pub fn sequence_csv(seq: &MinimalPointSequence, n: usize, digits: usize) -> String {
    let mut header = vec!["x".to_string()];
    header.extend((1..=n).map(|i| format!("y_{i}")));
    header.extend(["Y", "log_x", "log_Y"].map(String::from));
    let rows = seq
        .points
        .iter()
        .map(|p| {
            let mut r = vec![p.x.to_string()];
            r.extend(p.y.iter().map(|y| y.to_string()));
            r.push(p.big_y.to_sci_string(digits));
            r.push(fmt_f64(p.log_x, digits));
            r.push(fmt_f64(p.log_y, digits));
            r
        })
        .collect();
    write_csv(header, rows)
}

/// Columns `q, L_1..L_{n+1}`.
pub fn profile_csv(profile: &[ProfileSample], n: usize, digits: usize) -> String {
    let mut header = vec!["q".to_string()];
    header.extend((1..=n + 1).map(|j| format!("L_{j}")));
    let rows = profile
        .iter()
        .map(|s| {
            let mut r = vec![fmt_f64(s.q, digits)];
            r.extend(s.l.iter().map(|v| fmt_f64(*v, digits)));
            r
        })
        .collect();
    write_csv(header, rows)
}

/// Columns `k, q_k, r_k, s_k, u_k, p_k, q_order_ok, u_order_ok`.
pub fn intersections_csv(rows: &[IntersectionRow], digits: usize) -> String {
    let header = ["k", "q_k", "r_k", "s_k", "u_k", "p_k", "q_order_ok", "u_order_ok"]
        .map(String::from)
        .to_vec();
    let body = rows
        .iter()
        .map(|r| {
            vec![
                r.k.to_string(),
                fmt_f64(r.q_k, digits),
                fmt_f64(r.r_k, digits),
                fmt_f64(r.s_k, digits),
                fmt_f64(r.u_k, digits),
                fmt_f64(r.p_k, digits),
                r.q_order_ok.to_string(),
                r.u_order_ok.to_string(),
            ]
        })
        .collect();
    write_csv(header, body)
}

fn ext(v: &ExtReal, digits: usize) -> String {
    v.to_decimal_string(digits)
}

pub fn sequence_json(seq: &MinimalPointSequence, digits: usize) -> Value {
    Value::Array(
        seq.points
            .iter()
            .map(|p| {
                json!({
                    "x": p.x.to_string(),
                    "y": p.y.iter().map(|y| y.to_string()).collect::<Vec<_>>(),
                    "Y": p.big_y.to_sci_string(digits),
                    "log_x": fmt_f64(p.log_x, digits),
                    "log_Y": fmt_f64(p.log_y, digits),
                })
            })
            .collect(),
    )
}

pub fn profile_json(profile: &[ProfileSample], digits: usize) -> Value {
    Value::Array(
        profile
            .iter()
            .map(|s| {
                json!({
                    "q": fmt_f64(s.q, digits),
                    "L": s.l.iter().map(|v| fmt_f64(*v, digits)).collect::<Vec<_>>(),
                    "witnesses": s.witnesses.iter().map(|w| w.to_string()).collect::<Vec<_>>(),
                })
            })
            .collect(),
    )
}

pub fn estimates_json(e: &ExponentEstimates, digits: usize) -> Value {
    json!({
        "lambda_est": fmt_f64(e.lambda_est, digits),
        "lambda_hat_est": fmt_f64(e.lambda_hat_est, digits),
        "lambda_ratio": fmt_f64(e.lambda_ratio, digits),
        "lambda_hat_ratio": fmt_f64(e.lambda_hat_ratio, digits),
        "psi_low_est": e.psi_low_est.to_decimal_string(digits),
        "psi_high_est": e.psi_high_est.to_decimal_string(digits),
        "w_est": ext(&e.w_est, digits),
        "w_hat_est": ext(&e.w_hat_est, digits),
        "log_x_window": [fmt_f64(e.log_x_window.0, digits), fmt_f64(e.log_x_window.1, digits)],
        "q_window": [fmt_f64(e.q_window.0, digits), fmt_f64(e.q_window.1, digits)],
        "records_used": e.records_used.to_string(),
        "samples_used": e.samples_used.to_string(),
    })
}

pub fn theorem_json(r: &TheoremVReport, digits: usize) -> Value {
    json!({
        "alpha": r.alpha.to_decimal_string(digits),
        "beta": r.beta.to_decimal_string(digits),
        "epsilon": r.epsilon.to_sci_string(digits),
        "threshold": r.threshold.to_sci_string(digits),
        "hypothesis_ok": r.hypothesis_ok,
        "fitted_C": fmt_f64(r.fitted_c, digits),
        "prop1_margin": fmt_f64(r.prop1_margin, digits),
        "prop2_margin": fmt_f64(r.prop2_margin, digits),
        "independence_ok": r.independence_ok,
        "first_dependent_run": r.first_dependent_run.map(|v| v.to_string()),
        "record_ok": r.record_ok,
        "first_record_violation": r.first_record_violation.map(|v| v.to_string()),
        "pairs_checked": r.pairs_checked.to_string(),
    })
}

#[cfg(test)]
mod tests {
    use super::super::{synthetic_regular_graph, ApproxVector};
    use super::*;

    #[test]
    fn float_format() {
        assert_eq!(fmt_f64(0.125, 2), "0.12");
        assert_eq!(fmt_f64(1.0, 3), "1.00");
        assert_eq!(fmt_f64(f64::NEG_INFINITY, 12), "-inf");
        assert_eq!(fmt_f64(-2.5e-20, 3), "-2.50e-20");
    }

    #[test]
    fn sequence_csv_layout() {
        let seq = MinimalPointSequence {
            points: vec![ApproxVector::synthetic(3, vec![5, -7], 1.0, -2.0, 64)],
        };
        let s = sequence_csv(&seq, 2, 4);
        let mut lines = s.lines();
        assert_eq!(lines.next(), Some("x,y_1,y_2,Y,log_x,log_Y"));
        assert_eq!(lines.next(), Some("3,5,-7,1.353e-1,1.000,-2.000"));
    }

    #[test]
    fn json_uses_strings_for_integers() {
        let seq = synthetic_regular_graph(1, 1.0, 2.0, 3, 1.0, 64);
        let v = sequence_json(&seq, 6);
        assert_eq!(v[2]["x"], "3");
        assert_eq!(v[2]["y"][0], "9");
    }
}
