use std::fs;
use std::process::{Command, Output};

fn dioph(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_dioph"))
        .args(args)
        .env_remove("DIOPH_PRECISION_BITS")
        .output()
        .expect("run dioph")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn json_lines(o: &Output) -> Vec<serde_json::Value> {
    stdout(o).lines().map(|l| serde_json::from_str(l).unwrap()).collect()
}

fn field(v: &serde_json::Value, k: &str) -> f64 {
    v[k].as_str().unwrap_or_else(|| panic!("{k} missing in {v}")).parse().unwrap()
}

#[test]
fn bounds_even_range() {
    let o = dioph(&["bounds", "--n", "4..8", "--even", "--format", "json"]);
    assert!(o.status.success(), "{}", stderr(&o));
    let rows = json_lines(&o);
    assert_eq!(rows.len(), 4);
    assert_eq!(rows[0]["n"], "4");
    assert!((field(&rows[0], "tau_n") - 0.370635).abs() < 1e-6);
    assert!((field(&rows[0], "sigma_n") - 0.370629).abs() < 2e-6);
    assert!((field(&rows[1], "tau_n") - 0.2681846506).abs() < 1e-9);
    assert!((field(&rows[1], "sigma_n") - 0.268183).abs() < 2e-6);
    assert!(field(&rows[2], "regular_graph_bound") < 0.2);
    assert_eq!(rows[3]["constant"], "theta");
    assert!((field(&rows[3], "value") - 1.7564).abs() < 5e-5);
}

#[test]
fn bounds_small_n() {
    let o = dioph(&["bounds", "--n", "2", "--format", "json"]);
    assert!(o.status.success());
    assert_eq!(json_lines(&o)[0]["tau_n"], "0.618033988750");

    let o = dioph(&["bounds", "--n", "3", "--format", "csv"]);
    assert!(o.status.success());
    let s = stdout(&o);
    let mut lines = s.split("\r\n");
    assert_eq!(
        lines.next().unwrap(),
        "n,tau_n,laurent_bound,sigma_n,w_n,mu_n,regular_graph_bound,chi_n,theta"
    );
    let row: Vec<&str> = lines.next().unwrap().split(',').collect();
    assert_eq!(row[0], "3");
    assert_eq!(row[2], "0.500000000000");
    assert_eq!(row[3], "n/a");
    assert_eq!(row[6], "n/a");
}

#[test]
fn malformed_arguments_are_usage_errors() {
    for args in [
        vec!["bounds", "--n", "8..4"],
        vec!["bounds", "--n", "x"],
        vec!["bounds"],
        vec!["bounds", "--n", "3", "--even"],
        vec!["verify", "nope"],
        vec!["theorem-new", "--n", "2", "--alpha", "abc", "--beta", "1"],
        vec!["bounds", "--n", "4", "--tol", "-1"],
        vec!["bounds", "--n", "4", "--threads", "0"],
    ] {
        let o = dioph(&args);
        assert_eq!(o.status.code(), Some(2), "{args:?}: {}", stderr(&o));
    }
    assert_eq!(dioph(&["--help"]).status.code(), Some(0));
}

#[test]
fn precision_from_environment() {
    let run = |bits: &str| {
        Command::new(env!("CARGO_BIN_EXE_dioph"))
            .args(["bounds", "--n", "4", "--format", "json"])
            .env("DIOPH_PRECISION_BITS", bits)
            .output()
            .unwrap()
    };
    let low = run("32");
    assert_eq!(low.status.code(), Some(2));
    assert!(stderr(&low).contains("at least 64 bits"));
    let a = run("128");
    let b = dioph(&["bounds", "--n", "4", "--format", "json"]);
    assert!(a.status.success());
    assert_eq!(stdout(&a), stdout(&b));
    // The flag wins over the environment.
    let c = Command::new(env!("CARGO_BIN_EXE_dioph"))
        .args(["--precision-bits", "128", "bounds", "--n", "4"])
        .env("DIOPH_PRECISION_BITS", "32")
        .output()
        .unwrap();
    assert!(c.status.success());
}

#[test]
fn theorem_examples() {
    let o = dioph(&["theorem-new", "--n", "5", "--alpha", "0.2", "--beta", "0.2", "--format", "json"]);
    assert!(o.status.success());
    let r = &json_lines(&o)[0];
    for k in ["what_lower", "what_upper", "w_lower", "w_upper"] {
        assert!((field(r, k) - 5.0).abs() < 1e-11, "{k}");
    }

    let o = dioph(&["theorem-new", "--n", "2", "--alpha", "0.6180339887", "--beta", "1", "--format", "json"]);
    assert!(o.status.success());
    let r = &json_lines(&o)[0];
    assert!((field(r, "what_lower") - 2.618).abs() < 1e-3);
    assert!((field(r, "w_upper") - 4.236).abs() < 1e-3);

    let o = dioph(&["theorem-new", "--n", "4", "--alpha", "0.38", "--beta", "0.5", "--format", "json"]);
    assert_eq!(o.status.code(), Some(3));
    let r = &json_lines(&o)[0];
    assert_eq!(r["status"], "HypothesisViolated");
    assert!(r.get("what_lower").is_none());
    let err: serde_json::Value = serde_json::from_str(stderr(&o).trim()).unwrap();
    assert_eq!(err["error"], "HypothesisViolated");

    let o = dioph(&["theorem-new", "--n", "4", "--alpha", "0.6", "--beta", "0.5"]);
    assert_eq!(o.status.code(), Some(3));
    assert!(stderr(&o).contains("DomainError"));
}

fn fibonacci(limit: i64) -> Vec<i64> {
    let mut v = vec![1, 2];
    while v[v.len() - 1] + v[v.len() - 2] <= limit {
        v.push(v[v.len() - 1] + v[v.len() - 2]);
    }
    v
}

#[test]
fn simulate_golden_writes_fibonacci_records() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().to_str().unwrap();
    let o = dioph(&["simulate", "--target", "veronese:golden", "--n", "1", "--xmax", "10000", "--out-dir", out, "--format", "json"]);
    assert!(o.status.success(), "{}", stderr(&o));
    let csv = fs::read_to_string(dir.path().join("minimal_points.csv")).unwrap();
    let xs: Vec<i64> = csv.lines().skip(1).map(|l| l.split(',').next().unwrap().parse().unwrap()).collect();
    assert_eq!(xs, fibonacci(10_000));
    let summary = &json_lines(&o)[0];
    assert!((field(summary, "lambda_est") - 1.0).abs() < 0.05);
    for f in ["profile.csv", "estimates.json", "intersections.csv"] {
        assert!(dir.path().join(f).exists(), "{f}");
    }
    assert!(!dir.path().join("theorem.json").exists());
}

#[test]
fn simulate_e_reports_finite_defect_and_theorem() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().to_str().unwrap();
    let o = dioph(&[
        "simulate", "--target", "veronese:e", "--n", "2", "--xmax", "10000", "--out-dir", out,
        "--alpha", "0.55", "--beta", "0.6", "--format", "json",
    ]);
    assert!(o.status.success(), "{}", stderr(&o));
    let summary = &json_lines(&o)[0];
    let d = field(summary, "minkowski_defect");
    assert!(d.is_finite() && d < 3.0, "{d}");
    let theorem: serde_json::Value =
        serde_json::from_str(&fs::read_to_string(dir.path().join("theorem.json")).unwrap()).unwrap();
    assert_eq!(theorem["hypothesis_ok"], false);
}

#[test]
fn simulate_rejects_rational_and_oversized_runs() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().to_str().unwrap();
    let o = dioph(&["simulate", "--target", "explicit:0.5", "--n", "1", "--xmax", "100", "--out-dir", out]);
    assert_eq!(o.status.code(), Some(3));
    assert!(stderr(&o).contains("RationalDependence"));

    let o = dioph(&["simulate", "--target", "veronese:e", "--n", "1", "--xmax", "2000000", "--out-dir", out]);
    assert_eq!(o.status.code(), Some(2));
    let o = dioph(&["simulate", "--target", "veronese:e", "--n", "1", "--alpha", "0.5", "--out-dir", out]);
    assert_eq!(o.status.code(), Some(2));
    let o = dioph(&["simulate", "--target", "veronese:nope", "--n", "1", "--out-dir", out]);
    assert_eq!(o.status.code(), Some(3));
}

#[test]
fn outputs_do_not_depend_on_thread_count() {
    let a = tempfile::tempdir().unwrap();
    let b = tempfile::tempdir().unwrap();
    let run = |dir: &std::path::Path, threads: &str| {
        let o = dioph(&[
            "--threads", threads, "simulate", "--target", "veronese:pi", "--n", "2", "--xmax", "3000",
            "--alpha", "0.5", "--beta", "0.7", "--out-dir", dir.to_str().unwrap(),
        ]);
        assert!(o.status.success(), "{}", stderr(&o));
    };
    run(a.path(), "1");
    run(b.path(), "4");
    for f in ["minimal_points.csv", "profile.csv", "estimates.json", "theorem.json", "intersections.csv"] {
        assert_eq!(fs::read(a.path().join(f)).unwrap(), fs::read(b.path().join(f)).unwrap(), "{f}");
    }
    let x = dioph(&["--threads", "1", "bounds", "--n", "4..12", "--even", "--format", "csv"]);
    let y = dioph(&["--threads", "4", "bounds", "--n", "4..12", "--even", "--format", "csv"]);
    assert_eq!(x.stdout, y.stdout);
}

#[test]
fn verify_suites() {
    let o = dioph(&["verify", "constants", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    let lines = json_lines(&o);
    let tau6 = lines.iter().find(|l| l["check"] == "tau(6)").unwrap();
    assert_eq!(tau6["pass"], false);
    assert_eq!(tau6["recorded"], true);
    assert!(lines.iter().filter(|l| l["check"] != "tau(6)").all(|l| l["pass"] == true));

    for suite in ["corollary", "monotonicity", "oracle", "profile"] {
        let o = dioph(&["verify", suite, "--format", "json"]);
        assert_eq!(o.status.code(), Some(0), "{suite}: {}", stdout(&o));
        assert!(json_lines(&o).iter().all(|l| l["pass"] == true && l["suite"] == suite));
    }
}

#[test]
fn verify_fails_at_too_low_precision() {
    let o = dioph(&["--precision-bits", "64", "verify", "constants", "--format", "json"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("VerifyFailed"));
}
