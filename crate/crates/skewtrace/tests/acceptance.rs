//! Acceptance gate: one test per release criterion. Each prints a
//! single pass/fail line (visible with `--nocapture`); a failed
//! criterion fails its test.

use rayon::prelude::*;
use skewtrace::harness::{
    generate_instance, counterexample_instance, single_offdiag_instance, worst_margin_scan,
    CampaignConfig, RankPolicy, ViolationRecord,
};
use skewtrace_core::eigen::eigh;
use skewtrace_core::ineq::{
    conjecture_2_10_check, conjecture_w_rhs_check, lieb_convexity_check, main_theorem_check,
    ordering_chain_check, scalar_f, theorem_2_1_check,
};
use skewtrace_core::rng::trial_rng;
use skewtrace_core::skew::{variance, wyd_i, wyd_i_eigensum, wyd_j, wyd_u};
use skewtrace_core::state::random_observable_with;
use skewtrace_core::{ComplexMatrix, InequalityId, DEFAULT_MARGIN_TOL};

fn report(criterion: u32, pass: bool, detail: &str) {
    println!(
        "criterion {criterion}: {} — {detail}",
        if pass { "PASS" } else { "FAIL" }
    );
    assert!(pass, "criterion {criterion} failed: {detail}");
}

fn grid_config(dims: Vec<usize>, trials: u64, seed: u64) -> CampaignConfig {
    let mut config = CampaignConfig::new(dims, trials, seed);
    config.alphas = (0..=10).map(|k| k as f64 / 10.0).collect();
    config.alpha_draws = 11;
    config
}

/// Exact reproduction of the known 2x2 counterexample values.
#[test]
fn criterion_01_counterexample_values() {
    let (rho, a, b, alpha) = counterexample_instance();
    let tol = DEFAULT_MARGIN_TOL;
    let conj = conjecture_2_10_check(&rho, &a, &b, alpha, tol).unwrap();
    let main = main_theorem_check(&rho, &a, &b, alpha, tol).unwrap();
    let wrhs = conjecture_w_rhs_check(&rho, &a, &b, alpha, tol).unwrap();
    let pass = (conj.lhs - 0.22457296).abs() <= 1e-6
        && (conj.rhs - 0.25).abs() <= 1e-12
        && (main.rhs - 0.2222222).abs() <= 1e-6
        && (wrhs.rhs - 0.23828106).abs() <= 1e-6;
    report(
        1,
        pass,
        &format!(
            "U*U = {:.8}, quarter-comm = {:.12}, weighted-comm = {:.8}, mean-sq-comm = {:.8}",
            conj.lhs, conj.rhs, main.rhs, wrhs.rhs
        ),
    );
}

/// The product theorem over 10,000 random instances, dims 2-8,
/// alpha grid plus uniform draws, within 60 seconds.
#[test]
fn criterion_02_main_theorem_suite() {
    let start = std::time::Instant::now();
    let config = grid_config((2..=8).collect(), 10_000, 11);
    let scan = worst_margin_scan(InequalityId::Main31, &config).unwrap();
    let elapsed = start.elapsed();
    let pass = scan.min_margin >= -1e-9 && elapsed.as_secs() < 60;
    report(
        2,
        pass,
        &format!(
            "worst margin {:.3e} at trial {} over {} trials in {:.1?}",
            scan.min_margin, scan.min_trial, scan.trials, elapsed
        ),
    );
}

/// Direct trace formula vs eigenbasis double sum for I.
#[test]
fn criterion_03_eigensum_oracle() {
    let config = grid_config((2..=8).collect(), 1_000, 13);
    let worst = (0..config.trials)
        .into_par_iter()
        .map(|t| {
            let inst = generate_instance(&config, t).unwrap();
            let direct = wyd_i(&inst.rho, &inst.a, inst.alpha).unwrap();
            let osum = wyd_i_eigensum(&inst.rho, &inst.a, inst.alpha).unwrap();
            (direct - osum).abs()
        })
        .reduce(|| 0.0, f64::max);
    report(3, worst <= 1e-10, &format!("max |I - I_eigensum| = {worst:.3e}"));
}

/// J = 2V - I and U's radicand = I*J, both to 1e-9 relative.
#[test]
fn criterion_04_internal_identities() {
    let config = grid_config((2..=8).collect(), 1_000, 13);
    let (worst_j, worst_rad) = (0..config.trials)
        .into_par_iter()
        .map(|t| {
            let inst = generate_instance(&config, t).unwrap();
            let i = wyd_i(&inst.rho, &inst.a, inst.alpha).unwrap();
            let j = wyd_j(&inst.rho, &inst.a, inst.alpha).unwrap();
            let v = variance(&inst.rho, &inst.a).unwrap();
            let u = wyd_u(&inst.rho, &inst.a, inst.alpha).unwrap();
            let ej = (j - (2.0 * v - i)).abs() / j.abs().max(1.0);
            let er = (u * u - i * j).abs() / (i * j).abs().max(1.0);
            (ej, er)
        })
        .reduce(|| (0.0, 0.0), |x, y| (x.0.max(y.0), x.1.max(y.1)));
    report(
        4,
        worst_j <= 1e-9 && worst_rad <= 1e-9,
        &format!("max rel |J-(2V-I)| = {worst_j:.3e}, max rel |U^2-IJ| = {worst_rad:.3e}"),
    );
}

/// The scalar bound on a 601x101 (t, alpha) grid, with the equality
/// lines at t = 1 and alpha in {0, 1/2, 1}.
#[test]
fn criterion_05_scalar_sweep() {
    let ts: Vec<f64> = (0..601)
        .map(|k| 10f64.powf(-6.0 + 12.0 * k as f64 / 600.0))
        .collect();
    let alphas: Vec<f64> = (0..=100).map(|k| k as f64 / 100.0).collect();
    let mut min = f64::INFINITY;
    for &t in &ts {
        for &a in &alphas {
            min = min.min(scalar_f(t, a).unwrap());
        }
    }
    let mut eq_ok = alphas.iter().all(|&a| scalar_f(1.0, a).unwrap().abs() <= 1e-14);
    for &t in &ts {
        for a in [0.0, 0.5, 1.0] {
            eq_ok &= scalar_f(t, a).unwrap().abs() <= 1e-14 * (t - 1.0).powi(2).max(1.0);
        }
    }
    // t = 1 and alpha in {0, 1/2, 1} are exact zeros of both terms
    let exact = [0.0, 0.5, 1.0]
        .iter()
        .all(|&a| scalar_f(1.0, a).unwrap() == 0.0);
    report(
        5,
        min >= -1e-12 && eq_ok && exact,
        &format!("grid min = {min:.3e}, equality lines hold = {}", eq_ok && exact),
    );
}

/// All eight ordering-chain links over 1,000 trials including
/// singular (mixed-rank) states.
#[test]
fn criterion_06_ordering_chains() {
    let mut worst = f64::INFINITY;
    for policy in [RankPolicy::FullRank, RankPolicy::MixedRank] {
        let mut config = grid_config((2..=8).collect(), 1_000, 17);
        config.rank_policy = policy;
        let m = (0..config.trials)
            .into_par_iter()
            .map(|t| {
                let inst = generate_instance(&config, t).unwrap();
                ordering_chain_check(&inst.rho, &inst.a, inst.alpha, config.tol)
                    .unwrap()
                    .iter()
                    .map(|c| c.margin)
                    .fold(f64::INFINITY, f64::min)
            })
            .reduce(|| f64::INFINITY, f64::min);
        worst = worst.min(m);
    }
    report(6, worst >= -1e-10, &format!("worst chain-link margin = {worst:.3e}"));
}

/// The K/L product theorem over 10,000 trials plus its exact 2x2
/// equality family.
#[test]
fn criterion_07_theorem_2_1() {
    let config = grid_config((2..=8).collect(), 10_000, 19);
    let worst = (0..config.trials)
        .into_par_iter()
        .map(|t| {
            let inst = generate_instance(&config, t).unwrap();
            theorem_2_1_check(&inst.rho, &inst.a, &inst.b, inst.alpha, config.tol)
                .unwrap()
                .margin
        })
        .reduce(|| f64::INFINITY, f64::min);
    let eq_worst = (0..200u64)
        .map(|t| {
            let (rho, a, b, alpha) = single_offdiag_instance(23, t);
            theorem_2_1_check(&rho, &a, &b, alpha, config.tol)
                .unwrap()
                .margin
                .abs()
        })
        .fold(0.0, f64::max);
    report(
        7,
        worst >= -1e-9 && eq_worst <= 1e-9,
        &format!("worst margin = {worst:.3e}, equality family max |margin| = {eq_worst:.3e}"),
    );
}

/// The counterexample command refutes both conjectures on the built-in
/// fixture and emits records that replay exactly.
#[test]
fn criterion_08_counterexample_soundness() {
    let dir = tempfile::tempdir().unwrap();
    let mut all_ok = true;
    let mut detail = String::new();
    for target in ["conj-2-10", "conj-w-rhs"] {
        let out = dir.path().join(format!("{target}.json"));
        let status = std::process::Command::new(env!("CARGO_BIN_EXE_skewtrace"))
            .args([
                "counterexample",
                "--target",
                target,
                "--budget",
                "500",
                "--seed",
                "29",
                "--out",
            ])
            .arg(&out)
            .stdout(std::process::Stdio::null())
            .stderr(std::process::Stdio::null())
            .status()
            .unwrap();
        let records: Vec<ViolationRecord> =
            serde_json::from_str(&std::fs::read_to_string(&out).unwrap()).unwrap();
        let fixture_found = records.first().map(|r| r.trial == 0 && r.margin < -1e-9) == Some(true);
        let replay_err = records
            .iter()
            .map(|r| (r.replay().unwrap() - r.margin).abs())
            .fold(0.0, f64::max);
        all_ok &= status.code() == Some(0) && fixture_found && replay_err <= 1e-12;
        detail.push_str(&format!(
            "{target}: {} records, max replay error {replay_err:.3e}; ",
            records.len()
        ));
    }
    report(8, all_ok, detail.trim_end_matches("; "));
}

/// Eigensolver accuracy on 1,000 random Hermitian matrices.
#[test]
fn criterion_09_eigensolver() {
    let (worst_rec, worst_uni) = (0..1_000u64)
        .into_par_iter()
        .map(|t| {
            let mut rng = trial_rng(31, t);
            let dim = 2 + (t as usize) % 15; // 2..=16
            let h = random_observable_with(dim, &mut rng);
            let dec = eigh(h.matrix(), skewtrace_core::HERMITICITY_TOL).unwrap();
            let scale = h.matrix().frobenius_norm().max(1.0);
            let rec = dec.reconstruct().sub(h.matrix()).unwrap().frobenius_norm() / scale;
            let q = &dec.eigenvectors;
            let uni = q
                .adjoint()
                .matmul(q)
                .unwrap()
                .sub(&ComplexMatrix::identity(dim))
                .unwrap()
                .frobenius_norm();
            (rec, uni)
        })
        .reduce(|| (0.0, 0.0), |x, y| (x.0.max(y.0), x.1.max(y.1)));
    report(
        9,
        worst_rec <= 1e-10 && worst_uni <= 1e-10,
        &format!("max reconstruction = {worst_rec:.3e}, max unitarity = {worst_uni:.3e}"),
    );
}

/// Midpoint convexity of I in the state.
#[test]
fn criterion_10_lieb_convexity() {
    let mut config = grid_config((2..=8).collect(), 1_000, 37);
    config.rank_policy = RankPolicy::MixedRank;
    let worst = (0..config.trials)
        .into_par_iter()
        .map(|t| {
            let inst = generate_instance(&config, t).unwrap();
            lieb_convexity_check(&inst.rho, &inst.rho2, inst.weight, &inst.a, inst.alpha, config.tol)
                .unwrap()
                .margin
        })
        .reduce(|| f64::INFINITY, f64::min);
    report(10, worst >= -1e-10, &format!("worst convexity margin = {worst:.3e}"));
}
