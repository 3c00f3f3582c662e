//! End-to-end tests of the binary: exit codes, JSON output, and
//! determinism of the report files.

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_skewtrace"))
}

fn write_fixture(dir: &Path) -> (PathBuf, PathBuf, PathBuf) {
    let rho = dir.join("rho.json");
    let a = dir.join("a.json");
    let b = dir.join("b.json");
    std::fs::write(
        &rho,
        r#"{"dim":2,"re":[[0.75,0.0],[0.0,0.25]],"im":[[0.0,0.0],[0.0,0.0]],"type":"density"}"#,
    )
    .unwrap();
    std::fs::write(
        &a,
        r#"{"dim":2,"re":[[0.0,0.0],[0.0,0.0]],"im":[[0.0,1.0],[-1.0,0.0]],"type":"observable"}"#,
    )
    .unwrap();
    std::fs::write(
        &b,
        r#"{"dim":2,"re":[[0.0,1.0],[1.0,0.0]],"im":[[0.0,0.0],[0.0,0.0]],"type":"observable"}"#,
    )
    .unwrap();
    (rho, a, b)
}

fn stdout_json(out: &Output) -> serde_json::Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

#[test]
fn compute_fixture_quantities() {
    let dir = tempfile::tempdir().unwrap();
    let (rho, a, _) = write_fixture(dir.path());
    let out = bin().args(["compute"]).arg(&rho).arg(&a).args(["--alpha", "1/3"]).output().unwrap();
    assert_eq!(out.status.code(), Some(0));
    let v = stdout_json(&out);
    assert!((v["U_alpha"].as_f64().unwrap() - 0.473891302544).abs() < 1e-9);
    assert!((v["V"].as_f64().unwrap() - 1.0).abs() < 1e-12);
}

#[test]
fn compute_rejects_alpha_out_of_range() {
    let dir = tempfile::tempdir().unwrap();
    let (rho, a, _) = write_fixture(dir.path());
    let out = bin().args(["compute"]).arg(&rho).arg(&a).args(["--alpha", "1.5"]).output().unwrap();
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("alpha out of range"));
}

#[test]
fn compute_rejects_malformed_json() {
    let dir = tempfile::tempdir().unwrap();
    let (_, a, _) = write_fixture(dir.path());
    let bad = dir.path().join("bad.json");
    std::fs::write(&bad, "{\"dim\": 2").unwrap();
    let out = bin().args(["compute"]).arg(&bad).arg(&a).args(["--alpha", "0.5"]).output().unwrap();
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn check_reports_conjecture_failures_without_exit_1() {
    let dir = tempfile::tempdir().unwrap();
    let (rho, a, b) = write_fixture(dir.path());
    let out = bin()
        .args(["check"])
        .args([&rho, &a, &b])
        .args(["--alpha", "1/3"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    let checks = stdout_json(&out);
    let checks = checks.as_array().unwrap();
    let by_id = |id: &str| -> Vec<&serde_json::Value> {
        checks.iter().filter(|c| c["id"] == id).collect()
    };
    assert_eq!(by_id("MAIN_3_1")[0]["holds"], true);
    assert_eq!(by_id("CONJ_2_10")[0]["holds"], false);
    assert_eq!(by_id("CONJ_W_RHS")[0]["holds"], false);
    assert_eq!(by_id("CHAIN_2_4").len(), 3);
    assert_eq!(by_id("CHAIN_2_7").len(), 3);
    assert_eq!(by_id("CHAIN_2_9").len(), 2);
}

#[test]
fn fuzz_is_deterministic_and_exits_0() {
    let dir = tempfile::tempdir().unwrap();
    let r1 = dir.path().join("r1.json");
    let r2 = dir.path().join("r2.json");
    let c1 = dir.path().join("m1.csv");
    let c2 = dir.path().join("m2.csv");
    for (r, c) in [(&r1, &c1), (&r2, &c2)] {
        let out = bin()
            .args(["fuzz", "--dims", "2,3", "--trials", "200", "--seed", "5", "--out"])
            .arg(r)
            .arg("--csv")
            .arg(c)
            .output()
            .unwrap();
        assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
        assert_eq!(stdout_json(&out)["proven_violated"], false);
    }
    assert_eq!(std::fs::read(&r1).unwrap(), std::fs::read(&r2).unwrap());
    assert_eq!(std::fs::read(&c1).unwrap(), std::fs::read(&c2).unwrap());
    let csv = std::fs::read_to_string(&c1).unwrap();
    assert!(csv.starts_with("trial,dim,alpha,ineq_id,lhs,rhs,margin\n"));
}

#[test]
fn fuzz_rejects_zero_trials() {
    let dir = tempfile::tempdir().unwrap();
    let out = bin()
        .args(["fuzz", "--trials", "0", "--out"])
        .arg(dir.path().join("r.json"))
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn seed_env_var_is_honored() {
    let dir = tempfile::tempdir().unwrap();
    let r1 = dir.path().join("r1.json");
    let r2 = dir.path().join("r2.json");
    let out = bin()
        .args(["fuzz", "--dims", "2", "--trials", "50", "--out"])
        .arg(&r1)
        .env("SKEWTRACE_SEED", "77")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    let out = bin()
        .args(["fuzz", "--dims", "2", "--trials", "50", "--seed", "77", "--out"])
        .arg(&r2)
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(std::fs::read(&r1).unwrap(), std::fs::read(&r2).unwrap());
}

#[test]
fn counterexample_finds_fixture_even_with_zero_budget() {
    let out = bin()
        .args(["counterexample", "--target", "conj-2-10", "--budget", "0"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    let v = stdout_json(&out);
    assert_eq!(v["found"], 1);
    let margin = v["violations"][0]["margin"].as_f64().unwrap();
    assert!((margin + 0.02542703).abs() < 1e-6);
}

#[test]
fn counterexample_rejects_non_conjecture_target() {
    // only the two refuted conjectures are valid targets
    let out = bin()
        .args(["counterexample", "--target", "main-3-1", "--budget", "1"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
}
