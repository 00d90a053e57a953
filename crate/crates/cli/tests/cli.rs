//! End-to-end tests of the swgate binary: exit codes, file outputs,
//! config echo round-trips, and determinism.

use std::fs;
use std::path::Path;
use std::process::{Command, Output};

fn swgate(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_swgate"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn write_cfg(dir: &Path, name: &str, body: &str) -> String {
    let path = dir.join(name);
    fs::write(&path, body).unwrap();
    path.to_str().unwrap().to_string()
}

fn json_without_wall(path: &Path) -> serde_json::Value {
    let mut v: serde_json::Value =
        serde_json::from_str(&fs::read_to_string(path).unwrap()).unwrap();
    v.as_object_mut().unwrap().remove("wall_ms");
    v
}

/// Minimal config: protocol defaults at N = 100 produce the π phase.
#[test]
fn gate_run_minimal_config() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_cfg(dir.path(), "cfg.json", "{}");
    let out = dir.path().join("out");
    let res = swgate(&["gate-run", "--config", &cfg, "--out", out.to_str().unwrap()]);
    assert!(res.status.success(), "stderr: {}", String::from_utf8_lossy(&res.stderr));
    let report = json_without_wall(&out.join("gate_report.json"));
    assert_eq!(report["n"], 100);
    let phi = report["phi_nl"].as_f64().unwrap();
    assert!((phi - std::f64::consts::PI).abs() < 0.02, "phi = {phi}");
    assert!(report["f_mag"].as_f64().unwrap() >= 0.999);
    assert!(out.join("gate_report.csv").exists());
}

/// Malformed config exits with the config code and leaves nothing behind.
#[test]
fn malformed_config_writes_nothing() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_cfg(dir.path(), "bad.json", r#"{"chain": {"n": -5}}"#);
    let out = dir.path().join("out");
    let res = swgate(&["gate-run", "--config", &cfg, "--out", out.to_str().unwrap()]);
    assert_eq!(res.status.code(), Some(2));
    assert!(!out.exists(), "no partial files on config errors");

    // Unknown keys are named with their path.
    let cfg = write_cfg(dir.path(), "unknown.json", r#"{"gate": {"tolerance": 1e-9}}"#);
    let res = swgate(&["gate-run", "--config", &cfg, "--out", out.to_str().unwrap()]);
    assert_eq!(res.status.code(), Some(2));
    let stderr = String::from_utf8_lossy(&res.stderr);
    assert!(stderr.contains("gate"), "stderr: {stderr}");
    assert!(!out.exists());
}

/// --echo-config canonicalizes, and re-running from the echo reproduces
/// the run bit for bit (wall-clock aside).
#[test]
fn echo_config_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_cfg(
        dir.path(),
        "cfg.json",
        r#"{"chain": {"n": 40}, "gate": {"propagator": "chebyshev"}}"#,
    );
    let echo = swgate(&["gate-run", "--config", &cfg, "--echo-config"]);
    assert!(echo.status.success());
    let echo_text = String::from_utf8(echo.stdout).unwrap();
    let canonical: serde_json::Value = serde_json::from_str(&echo_text).unwrap();
    // Defaults are explicit in the echo, and the conversion is recorded.
    assert_eq!(canonical["packets"]["sigma"], serde_json::json!(4.0));
    assert!(canonical["derived"]["j_rad_per_s"].as_f64().unwrap() > 0.0);
    assert!(
        (canonical["derived"]["hz_to_rad_per_s"].as_f64().unwrap()
            - 2.0 * std::f64::consts::PI)
            .abs()
            < 1e-12
    );
    // Echo alone writes no files.
    assert!(!dir.path().join("out").exists());

    let echoed_cfg = write_cfg(dir.path(), "canonical.json", &echo_text);
    let out_a = dir.path().join("a");
    let out_b = dir.path().join("b");
    let run_a = swgate(&["gate-run", "--config", &cfg, "--out", out_a.to_str().unwrap()]);
    let run_b =
        swgate(&["gate-run", "--config", &echoed_cfg, "--out", out_b.to_str().unwrap()]);
    assert!(run_a.status.success() && run_b.status.success());
    assert_eq!(
        json_without_wall(&out_a.join("gate_report.json")),
        json_without_wall(&out_b.join("gate_report.json"))
    );
}

/// Identical configs give bit-identical outputs (wall-clock column aside).
#[test]
fn outputs_are_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_cfg(
        dir.path(),
        "cfg.json",
        r#"{"chain": {"n": 48}, "gate": {"propagator": "chebyshev"}}"#,
    );
    let out_a = dir.path().join("a");
    let out_b = dir.path().join("b");
    assert!(swgate(&["gate-run", "--config", &cfg, "--out", out_a.to_str().unwrap()])
        .status
        .success());
    assert!(swgate(&["gate-run", "--config", &cfg, "--out", out_b.to_str().unwrap()])
        .status
        .success());
    assert_eq!(
        json_without_wall(&out_a.join("gate_report.json")),
        json_without_wall(&out_b.join("gate_report.json"))
    );
    let strip_wall = |p: &Path| -> Vec<String> {
        fs::read_to_string(p)
            .unwrap()
            .lines()
            .map(|line| {
                let mut cols: Vec<&str> = line.split(',').collect();
                cols.remove(11); // wall_ms
                cols.join(",")
            })
            .collect()
    };
    assert_eq!(
        strip_wall(&out_a.join("gate_report.csv")),
        strip_wall(&out_b.join("gate_report.csv"))
    );
}

/// Five-point V/(2J) sweep: rows in order, measured phase tracks the
/// closed form within 0.05 rad.
#[test]
fn sweep_five_point_tunable_phase() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_cfg(
        dir.path(),
        "cfg.json",
        r#"{"chain": {"n": 60},
            "gate": {"propagator": "chebyshev"},
            "sweep": {"v_over_2j": [-1.0, -0.5, 0.0, 0.5, 1.0]}}"#,
    );
    let out = dir.path().join("out");
    let res = swgate(&["sweep", "--config", &cfg, "--out", out.to_str().unwrap(), "--threads", "2"]);
    assert!(res.status.success(), "stderr: {}", String::from_utf8_lossy(&res.stderr));
    let csv = fs::read_to_string(out.join("sweep.csv")).unwrap();
    let lines: Vec<&str> = csv.lines().collect();
    assert_eq!(lines.len(), 6, "header + 5 rows");
    assert!(lines[0].starts_with("N,J,V,sigma,tau,phi_nl,phi_pred"));
    for row in &lines[1..] {
        let cols: Vec<&str> = row.split(',').collect();
        let phi: f64 = cols[5].parse().unwrap();
        let pred: f64 = cols[6].parse().unwrap();
        let err = spinwave_gate::fold_phase(phi - pred).abs();
        assert!(err <= 0.05, "row {row}: err {err}");
        assert!(cols[12].is_empty(), "no error marker expected");
    }
}

/// Empty sweep axes produce a header-only table and exit 0.
#[test]
fn sweep_empty_is_header_only() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_cfg(dir.path(), "cfg.json", r#"{"chain": {"n": 40}}"#);
    let out = dir.path().join("out");
    let res = swgate(&["sweep", "--config", &cfg, "--out", out.to_str().unwrap()]);
    assert!(res.status.success());
    let csv = fs::read_to_string(out.join("sweep.csv")).unwrap();
    assert_eq!(csv.lines().count(), 1);
}

/// N sweep at V = 0 keeps the exchange phase pinned at π.
#[test]
fn sweep_over_chain_lengths() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_cfg(
        dir.path(),
        "cfg.json",
        r#"{"gate": {"propagator": "chebyshev"},
            "sweep": {"n": [60, 100, 140]}}"#,
    );
    let out = dir.path().join("out");
    let res = swgate(&["sweep", "--config", &cfg, "--out", out.to_str().unwrap()]);
    assert!(res.status.success());
    let csv = fs::read_to_string(out.join("sweep.csv")).unwrap();
    let lines: Vec<&str> = csv.lines().collect();
    assert_eq!(lines.len(), 4);
    for row in &lines[1..] {
        let phi: f64 = row.split(',').nth(5).unwrap().parse().unwrap();
        assert!((phi - std::f64::consts::PI).abs() < 0.02, "row {row}");
    }
}

/// Budget regression: the reference parameter set lands on T ≈ 0.249 s,
/// scaling all rates leaves the dimensionless outputs unchanged, and a
/// linewidth override propagates into Ω.
#[test]
fn budget_reference_scaling_and_override() {
    let dir = tempfile::tempdir().unwrap();
    let base = write_cfg(dir.path(), "base.json", r#"{"chain": {"n": 1000}}"#);
    let out = dir.path().join("out");
    let res = swgate(&["budget", "--config", &base, "--out", out.to_str().unwrap(), "--json"]);
    assert!(res.status.success());
    let report: serde_json::Value =
        serde_json::from_str(&fs::read_to_string(out.join("budget.json")).unwrap()).unwrap();
    let t = report["gate_time"].as_f64().unwrap();
    assert!((0.244..=0.254).contains(&t), "T = {t}");
    assert!((report["p1"].as_f64().unwrap() - 1e-4).abs() < 1e-19);
    assert!((report["p2"].as_f64().unwrap() - 0.1).abs() < 1e-15);

    // All rates ×10, photon duration ÷10: dimensionless outputs fixed.
    let scaled = write_cfg(
        dir.path(),
        "scaled.json",
        r#"{"chain": {"n": 1000},
            "budget": {"gamma_hz": 5.75e7, "gamma0_hz": 1.5915494309189535,
                       "t_p_s": 1e-8, "u_hz": 40000.0}}"#,
    );
    let out2 = dir.path().join("out2");
    assert!(swgate(&["budget", "--config", &scaled, "--out", out2.to_str().unwrap()])
        .status
        .success());
    let scaled_report: serde_json::Value =
        serde_json::from_str(&fs::read_to_string(out2.join("budget.json")).unwrap()).unwrap();
    for field in ["p1", "p2", "p3"] {
        let a = report[field].as_f64().unwrap();
        let b = scaled_report[field].as_f64().unwrap();
        assert!((a - b).abs() <= 1e-12 * a.abs().max(1.0), "{field}: {a} vs {b}");
    }

    // Γ override doubles Ω when quadrupled.
    let gamma_x4 = write_cfg(
        dir.path(),
        "gamma4.json",
        r#"{"chain": {"n": 1000}, "budget": {"gamma_hz": 2.3e7}}"#,
    );
    let out3 = dir.path().join("out3");
    assert!(swgate(&["budget", "--config", &gamma_x4, "--out", out3.to_str().unwrap()])
        .status
        .success());
    let g4: serde_json::Value =
        serde_json::from_str(&fs::read_to_string(out3.join("budget.json")).unwrap()).unwrap();
    let ratio = g4["omega"].as_f64().unwrap() / report["omega"].as_f64().unwrap();
    assert!((ratio - 2.0).abs() < 1e-12, "omega ratio {ratio}");
}

/// Self-check passes on a healthy build, fails under fault injection, and
/// speaks JSON.
#[test]
fn selfcheck_and_negative_control() {
    let ok = swgate(&["selfcheck"]);
    assert!(ok.status.success(), "stdout: {}", String::from_utf8_lossy(&ok.stdout));
    let stdout = String::from_utf8_lossy(&ok.stdout);
    assert!(stdout.contains("jw_factorization"));
    assert!(stdout.contains("PASS"));

    let fault = swgate(&["selfcheck", "--inject-fault"]);
    assert_eq!(fault.status.code(), Some(3));

    let json = swgate(&["selfcheck", "--json"]);
    assert!(json.status.success());
    let report: serde_json::Value =
        serde_json::from_str(&String::from_utf8(json.stdout).unwrap()).unwrap();
    assert_eq!(report["pass"], serde_json::json!(true));
    assert!(report["checks"].as_array().unwrap().len() >= 6);
}

/// State snapshots come out in the documented column formats and carry
/// unit norm.
#[test]
fn state_snapshots_are_written_on_request() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_cfg(
        dir.path(),
        "cfg.json",
        r#"{"chain": {"n": 40},
            "gate": {"propagator": "chebyshev"},
            "output": {"write_states": true}}"#,
    );
    let out = dir.path().join("out");
    let res = swgate(&["gate-run", "--config", &cfg, "--out", out.to_str().unwrap()]);
    assert!(res.status.success());

    let r_final = fs::read_to_string(out.join("r_final.csv")).unwrap();
    let mut lines = r_final.lines();
    assert_eq!(lines.next(), Some("site,re,im"));
    let mut norm_sq = 0.0;
    for line in lines {
        let cols: Vec<&str> = line.split(',').collect();
        assert_eq!(cols.len(), 3);
        let re: f64 = cols[1].parse().unwrap();
        let im: f64 = cols[2].parse().unwrap();
        norm_sq += re * re + im * im;
    }
    assert!((norm_sq - 1.0).abs() < 1e-10, "norm^2 = {norm_sq}");

    let pair = fs::read_to_string(out.join("pair_final.csv")).unwrap();
    let mut lines = pair.lines();
    assert_eq!(lines.next(), Some("j,j_prime,re,im"));
    assert_eq!(lines.count(), 40 * 39 / 2);
    assert!(out.join("r_initial.csv").exists());
    assert!(out.join("l_initial.csv").exists());
    assert!(out.join("l_final.csv").exists());
}

/// The --tol flag reaches the propagator settings.
#[test]
fn tol_flag_is_honored() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_cfg(
        dir.path(),
        "cfg.json",
        r#"{"chain": {"n": 40}, "gate": {"propagator": "chebyshev"}}"#,
    );
    let out = dir.path().join("out");
    let res = swgate(&[
        "gate-run",
        "--config",
        &cfg,
        "--out",
        out.to_str().unwrap(),
        "--tol",
        "1e-8",
    ]);
    assert!(res.status.success());
    let report = json_without_wall(&out.join("gate_report.json"));
    assert!((report["tol"].as_f64().unwrap() - 1e-8).abs() < 1e-20);
}
