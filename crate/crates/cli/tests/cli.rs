use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn realquad(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_realquad"))
        .args(args)
        .env_remove("REALQUAD_TOL")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn scratch(name: &str) -> PathBuf {
    let dir = PathBuf::from(env!("CARGO_TARGET_TMPDIR"));
    dir.join(format!("{}-{name}", std::process::id()))
}

#[test]
fn factor_json_quartic() {
    let o = realquad(&["factor", "--coeffs", "-1,-1,0,-1,1", "--json"]);
    assert_eq!(o.status.code(), Some(0));
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    let q = &v["quadratic"][0];
    assert!(q["a"].as_f64().unwrap().abs() < 1e-8);
    assert!((q["b"].as_f64().unwrap() + 1.0).abs() < 1e-8);
    assert!(v["residual"].as_f64().unwrap() <= 1e-9);
    let linear = v["linear"].as_array().unwrap();
    assert_eq!(linear.len(), 2);
    assert!((linear[1].as_f64().unwrap() - (1.0 + 5f64.sqrt()) / 2.0).abs() < 1e-8);
}

#[test]
fn factor_json_round_trips() {
    let o = realquad(&["factor", "--coeffs", "19,17,43,51,17,51,31,37,1", "--json"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    let v: Value = serde_json::from_str(&text).unwrap();
    let again: Value = serde_json::from_str(&serde_json::to_string(&v).unwrap()).unwrap();
    assert_eq!(v, again);
    // every number is written with 17 significant digits, so values survive
    let r = v["residual"].as_f64().unwrap();
    assert_eq!(
        format!("{r:.16e}"),
        text.split("\"residual\":")
            .nth(1)
            .unwrap()
            .trim()
            .trim_end_matches('}')
    );
}

#[test]
fn factor_of_x_is_root_zero() {
    let o = realquad(&["factor", "--coeffs", "0,1", "--json"]);
    assert_eq!(o.status.code(), Some(0));
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["linear"][0].as_f64(), Some(0.0));
}

#[test]
fn success_implies_residual_within_tolerance() {
    for coeffs in [
        "1,0,1",
        "2,-3,0,1",
        "-6,11,-6,1",
        "1,1,1,1,1,1",
        "0,0,3,0,0,1",
    ] {
        let o = realquad(&["factor", "--coeffs", coeffs, "--json", "--tol", "1e-9"]);
        let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
        let max = coeffs
            .split(',')
            .map(|c| c.parse::<f64>().unwrap().abs())
            .fold(0.0, f64::max);
        let lead = v["leading"].as_f64().unwrap().abs().max(1.0);
        let residual = v["residual"].as_f64().unwrap();
        assert_eq!(
            o.status.code() == Some(0),
            residual <= 1e-9 * lead * (1.0 + max)
        );
    }
}

#[test]
fn tolerance_from_environment() {
    let o = Command::new(env!("CARGO_BIN_EXE_realquad"))
        .args(["factor", "--coeffs", "19,17,43,51,17,51,31,37,1"])
        .env("REALQUAD_TOL", "1e-20")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("verification"));
}

#[test]
fn divide_cubic() {
    let o = realquad(&["divide", "--coeffs", "0,0,0,1", "--a", "2", "--b", "1"]);
    assert_eq!(o.status.code(), Some(0));
    // x³ = (x² − 2x − 1)(x + 2) + 5x + 2
    assert_eq!(stdout(&o), "quotient 2,1\np 5\nq 2\n");
}

#[test]
fn divide_json_with_negative_divisor() {
    let o = realquad(&[
        "divide", "--coeffs", "1,0,0,1", "--a", "-1", "--b", "-1", "--json",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    // x³ + 1 = (x² + x + 1)(x − 1) + 2
    assert_eq!(v["quotient"][0].as_f64(), Some(-1.0));
    assert_eq!(v["p"].as_f64(), Some(0.0));
    assert_eq!(v["q"].as_f64(), Some(2.0));
}

#[test]
fn coefficients_from_file() {
    let path = scratch("coeffs.txt");
    std::fs::write(&path, "# x^4 - x^3 - x - 1\n-1 -1\n0, -1\n1\n").unwrap();
    let o = realquad(&["factor", "--file", path.to_str().unwrap(), "--json"]);
    assert_eq!(o.status.code(), Some(0));
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["quadratic"].as_array().unwrap().len(), 1);
}

#[test]
fn argument_errors_exit_two() {
    let cases: &[&[&str]] = &[
        &["factor"],
        &["factor", "--coeffs", "1,2", "--file", "x"],
        &["factor", "--coeffs", "1,abc"],
        &["factor", "--coeffs", "5"],
        &["factor", "--coeffs", "0,0"],
        &["factor", "--coeffs", "1,1", "--tol", "0"],
        &["factor", "--file", "/nonexistent/coefficients"],
        &["divide", "--coeffs", "1,1", "--a", "1", "--b", "1"],
        &["divide", "--coeffs", "1,0,1"],
        &[
            "curves", "--coeffs", "0,1,0,1", "--amin", "2", "--amax", "1",
        ],
        &["bogus"],
    ];
    for args in cases {
        assert_eq!(realquad(args).status.code(), Some(2), "{args:?}");
    }
}

#[test]
fn verify_passes_on_octic() {
    let o = realquad(&["verify", "--coeffs", "19,17,43,51,17,51,31,37,1"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.lines().count() >= 9);
    assert!(text.lines().all(|l| l.starts_with("[PASS]")));
}

#[test]
fn verify_fails_with_impossible_tolerance() {
    let o = realquad(&[
        "verify",
        "--coeffs",
        "19,17,43,51,17,51,31,37,1",
        "--tol",
        "1e-30",
    ]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("[FAIL] factorization round trip"));
}

#[test]
fn curves_writes_grid_with_markers() {
    let path = scratch("grid.json");
    let o = realquad(&[
        "curves",
        "--coeffs",
        "0,1,0,1",
        "--amin",
        "-2",
        "--amax",
        "2",
        "--bmin",
        "-3",
        "--bmax",
        "1",
        "--na",
        "41",
        "--nb",
        "31",
        "--out",
        path.to_str().unwrap(),
        "--mark-factors",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    for key in ["poly", "a", "b", "P", "Q", "markers"] {
        assert!(v.get(key).is_some(), "missing {key}");
    }
    assert_eq!(v["P"].as_array().unwrap().len(), 41 * 31);
    assert_eq!(v["a"]["n"], 41);
    let m = &v["markers"][0];
    assert!(m["a"].as_f64().unwrap().abs() < 1e-8);
    assert!((m["b"].as_f64().unwrap() + 1.0).abs() < 1e-8);
}

#[test]
fn curves_default_window() {
    let o = realquad(&["curves", "--coeffs", "19,17,43,51,17,51,31,37,1"]);
    assert_eq!(o.status.code(), Some(0));
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["a"]["min"].as_f64(), Some(-10.0));
    assert_eq!(v["b"]["max"].as_f64(), Some(5.0));
    assert_eq!(v["Q"].as_array().unwrap().len(), 400 * 300);
}

#[test]
fn help_documents_ascending_order() {
    let o = realquad(&["factor", "--help"]);
    assert!(stdout(&o).contains("ASCENDING"));
}
