//! Randomized verification campaigns over the inequality checkers,
//! counterexample search, worst-margin scans, and the exact 2x2
//! counterexample fixture.
//!
//! Every trial draws from an independent RNG substream keyed by
//! (seed, trial index), so serial and parallel runs produce identical
//! reports.

use std::collections::BTreeMap;
use std::fs;
use std::path::Path;
use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};
use skewtrace_core::ineq::{
    conjecture_2_10_check, conjecture_w_rhs_check, heisenberg_check, intermediate_ij_check,
    lieb_convexity_check, luo_check, main_theorem_check, ordering_chain_check, theorem_2_1_check,
};
use skewtrace_core::rng::{trial_rng, uniform, RngCore};
use skewtrace_core::state::{
    density, random_density_with, random_observable_with, DensityMatrix, Observable,
};
use skewtrace_core::{
    Complex64, ComplexMatrix, InequalityCheck, InequalityId, DEFAULT_MARGIN_TOL,
};

use crate::io::{sig12, MatrixFile, MatrixKind};
use crate::Error;

pub const COUNTEREXAMPLE_ALPHA: f64 = 1.0 / 3.0;

/// The exact 2x2 counterexample instance:
/// rho = diag(3/4, 1/4), A = [[0, i], [-i, 0]], B = [[0, 1], [1, 0]],
/// alpha = 1/3.
pub fn counterexample_instance() -> (DensityMatrix, Observable, Observable, f64) {
    let rho = density(&ComplexMatrix::diag(&[0.75, 0.25])).expect("valid fixture state");
    let c = Complex64::new;
    let a = Observable::new(
        ComplexMatrix::new(2, vec![c(0.0, 0.0), c(0.0, 1.0), c(0.0, -1.0), c(0.0, 0.0)])
            .expect("valid"),
    )
    .expect("Hermitian");
    let b = Observable::new(
        ComplexMatrix::new(2, vec![c(0.0, 0.0), c(1.0, 0.0), c(1.0, 0.0), c(0.0, 0.0)])
            .expect("valid"),
    )
    .expect("Hermitian");
    (rho, a, b, COUNTEREXAMPLE_ALPHA)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum RankPolicy {
    /// Every state has full rank.
    FullRank,
    /// Rank drawn uniformly in `1..=dim`, probing singular states and
    /// the alpha boundary conventions.
    MixedRank,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CampaignConfig {
    pub dims: Vec<usize>,
    /// Explicit alpha values to cycle through.
    pub alphas: Vec<f64>,
    /// Number of uniform random alpha slots mixed into the cycle.
    pub alpha_draws: usize,
    pub trials: u64,
    pub seed: u64,
    pub tol: f64,
    pub rank_policy: RankPolicy,
}

impl CampaignConfig {
    pub fn new(dims: Vec<usize>, trials: u64, seed: u64) -> Self {
        Self {
            dims,
            alphas: Vec::new(),
            alpha_draws: 1,
            trials,
            seed,
            tol: DEFAULT_MARGIN_TOL,
            rank_policy: RankPolicy::FullRank,
        }
    }

    pub fn validate(&self) -> Result<(), Error> {
        if self.trials == 0 {
            return Err(Error::Config("trials must be >= 1".into()));
        }
        if self.dims.is_empty() {
            return Err(Error::Config("dims must be non-empty".into()));
        }
        if self.dims.iter().any(|&d| d < 2) {
            return Err(Error::Config("dims must all be >= 2".into()));
        }
        if !(self.tol > 0.0) {
            return Err(Error::Config("tol must be > 0".into()));
        }
        if self.alphas.iter().any(|a| !(0.0..=1.0).contains(a)) {
            return Err(Error::Config("alphas must lie in [0, 1]".into()));
        }
        if self.alphas.is_empty() && self.alpha_draws == 0 {
            return Err(Error::Config("need at least one alpha source".into()));
        }
        Ok(())
    }
}

/// One trial's inputs, regenerable from (config, trial index).
pub struct TrialInstance {
    pub trial: u64,
    pub dim: usize,
    pub rank: usize,
    pub alpha: f64,
    pub rho: DensityMatrix,
    pub rho2: DensityMatrix,
    pub weight: f64,
    pub a: Observable,
    pub b: Observable,
}

pub fn generate_instance(config: &CampaignConfig, trial: u64) -> Result<TrialInstance, Error> {
    let mut rng = trial_rng(config.seed, trial);
    let dim = config.dims[(rng.next_u64() as usize) % config.dims.len()];
    let rank = match config.rank_policy {
        RankPolicy::FullRank => dim,
        RankPolicy::MixedRank => 1 + (rng.next_u64() as usize) % dim,
    };
    let slots = config.alphas.len() + config.alpha_draws;
    let slot = (trial % slots as u64) as usize;
    let drawn = uniform(&mut rng); // always consumed, keeps the stream aligned
    let alpha = if slot < config.alphas.len() {
        config.alphas[slot]
    } else {
        drawn
    };
    let rho = random_density_with(dim, rank, &mut rng)?;
    let rho2 = random_density_with(dim, rank, &mut rng)?;
    let weight = uniform(&mut rng);
    let a = random_observable_with(dim, &mut rng);
    let b = random_observable_with(dim, &mut rng);
    Ok(TrialInstance { trial, dim, rank, alpha, rho, rho2, weight, a, b })
}

/// All checkers on one instance. The chain links run on A; the
/// Lieb check mixes the two states with the drawn weight.
pub fn run_checkers(inst: &TrialInstance, tol: f64) -> Result<Vec<InequalityCheck>, Error> {
    let TrialInstance { rho, rho2, weight, a, b, alpha, .. } = inst;
    let mut checks = Vec::with_capacity(16);
    checks.push(heisenberg_check(rho, a, b, tol)?);
    checks.push(skewtrace_core::ineq::schrodinger_check(rho, a, b, tol)?);
    checks.push(luo_check(rho, a, b, tol)?);
    checks.push(main_theorem_check(rho, a, b, *alpha, tol)?);
    checks.extend(intermediate_ij_check(rho, a, b, *alpha, tol)?);
    checks.push(conjecture_2_10_check(rho, a, b, *alpha, tol)?);
    checks.push(theorem_2_1_check(rho, a, b, *alpha, tol)?);
    checks.push(conjecture_w_rhs_check(rho, a, b, *alpha, tol)?);
    checks.extend(ordering_chain_check(rho, a, *alpha, tol)?);
    checks.push(lieb_convexity_check(rho, rho2, *weight, a, *alpha, tol)?);
    Ok(checks)
}

/// One margin row, the CSV record unit.
#[derive(Debug, Clone, Serialize)]
pub struct TrialRow {
    pub trial: u64,
    pub dim: usize,
    pub alpha: f64,
    pub ineq_id: &'static str,
    pub lhs: f64,
    pub rhs: f64,
    pub margin: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct PerInequality {
    pub trials: u64,
    pub checks: u64,
    pub violations: u64,
    pub worst_margin: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub worst_trial: Option<u64>,
}

#[derive(Debug, Clone, Serialize)]
pub struct CampaignReport {
    pub seed: u64,
    pub config: CampaignConfig,
    pub per_inequality: BTreeMap<&'static str, PerInequality>,
    pub total_trials: u64,
    pub total_checks: u64,
    pub total_violations: u64,
    /// Trials whose evaluation errored; recorded, not fatal.
    pub trial_errors: Vec<(u64, String)>,
    /// Measured wall clock; excluded from serialization so identical
    /// configurations produce byte-identical report files.
    #[serde(skip)]
    pub wall_clock_ms: u128,
    #[serde(skip)]
    pub rows: Vec<TrialRow>,
}

impl CampaignReport {
    /// True if any proven (non-conjecture) inequality was violated.
    pub fn proven_violated(&self) -> bool {
        self.per_inequality.iter().any(|(id, agg)| {
            agg.violations > 0
                && !InequalityId::from_str_id(id).map(|i| i.is_conjecture()).unwrap_or(false)
        })
    }

    pub fn to_json(&self) -> Value {
        let mut per: BTreeMap<&str, Value> = BTreeMap::new();
        for (id, agg) in &self.per_inequality {
            per.insert(
                id,
                json!({
                    "trials": agg.trials,
                    "checks": agg.checks,
                    "violations": agg.violations,
                    "worst_margin": sig12(agg.worst_margin),
                    "worst_trial": agg.worst_trial,
                }),
            );
        }
        json!({
            "seed": self.seed,
            "config": serde_json::to_value(&self.config).expect("config serializes"),
            "per_inequality": per,
            "total_trials": self.total_trials,
            "total_checks": self.total_checks,
            "total_violations": self.total_violations,
            "trial_errors": self.trial_errors,
        })
    }

    pub fn write_csv(&self, path: &Path) -> Result<(), Error> {
        let mut out = String::from("trial,dim,alpha,ineq_id,lhs,rhs,margin\n");
        for r in &self.rows {
            out.push_str(&format!(
                "{},{},{},{},{},{},{}\n",
                r.trial,
                r.dim,
                sig12(r.alpha),
                r.ineq_id,
                sig12(r.lhs),
                sig12(r.rhs),
                sig12(r.margin)
            ));
        }
        fs::write(path, out).map_err(|e| Error::Io(format!("{}: {e}", path.display())))
    }
}

fn trial_rows(config: &CampaignConfig, trial: u64) -> Result<Vec<TrialRow>, Error> {
    let inst = generate_instance(config, trial)?;
    let checks = run_checkers(&inst, config.tol)?;
    Ok(checks
        .into_iter()
        .map(|ch| TrialRow {
            trial,
            dim: inst.dim,
            alpha: inst.alpha,
            ineq_id: ch.id.as_str(),
            lhs: ch.lhs,
            rhs: ch.rhs,
            margin: ch.margin,
        })
        .collect())
}

/// Runs every checker over `config.trials` independent instances.
/// Deterministic for a fixed config; trials execute in parallel and
/// merge in trial order.
pub fn run_campaign(config: &CampaignConfig) -> Result<CampaignReport, Error> {
    config.validate()?;
    let start = Instant::now();

    let outcomes: Vec<(u64, Result<Vec<TrialRow>, String>)> = (0..config.trials)
        .into_par_iter()
        .map(|trial| (trial, trial_rows(config, trial).map_err(|e| e.to_string())))
        .collect();

    let mut per: BTreeMap<&'static str, PerInequality> = BTreeMap::new();
    let mut rows = Vec::new();
    let mut trial_errors = Vec::new();
    let mut total_checks = 0u64;
    let mut total_violations = 0u64;
    for (trial, outcome) in outcomes {
        match outcome {
            Err(msg) => trial_errors.push((trial, msg)),
            Ok(trial_rows) => {
                let mut seen: Vec<&'static str> = Vec::new();
                for row in trial_rows {
                    let agg = per.entry(row.ineq_id).or_insert(PerInequality {
                        trials: 0,
                        checks: 0,
                        violations: 0,
                        worst_margin: f64::INFINITY,
                        worst_trial: None,
                    });
                    if !seen.contains(&row.ineq_id) {
                        seen.push(row.ineq_id);
                        agg.trials += 1;
                    }
                    agg.checks += 1;
                    total_checks += 1;
                    if row.margin < -config.tol {
                        agg.violations += 1;
                        total_violations += 1;
                    }
                    if row.margin < agg.worst_margin {
                        agg.worst_margin = row.margin;
                        agg.worst_trial = Some(row.trial);
                    }
                    rows.push(row);
                }
            }
        }
    }

    Ok(CampaignReport {
        seed: config.seed,
        config: config.clone(),
        per_inequality: per,
        total_trials: config.trials,
        total_checks,
        total_violations,
        trial_errors,
        wall_clock_ms: start.elapsed().as_millis(),
        rows,
    })
}

/// A reproducible counterexample: the full instance plus the margin it
/// produced. Replaying re-evaluates the stored matrices.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ViolationRecord {
    pub ineq_id: String,
    pub rho: MatrixFile,
    pub a: MatrixFile,
    pub b: MatrixFile,
    pub alpha: f64,
    pub lhs: f64,
    pub rhs: f64,
    pub margin: f64,
    pub trial: u64,
    pub seed: u64,
}

impl ViolationRecord {
    fn from_check(
        check: &InequalityCheck,
        rho: &DensityMatrix,
        a: &Observable,
        b: &Observable,
        alpha: f64,
        trial: u64,
        seed: u64,
    ) -> Self {
        Self {
            ineq_id: check.id.as_str().to_owned(),
            rho: MatrixFile::from_matrix(rho.matrix(), Some(MatrixKind::Density)),
            a: MatrixFile::from_matrix(a.matrix(), Some(MatrixKind::Observable)),
            b: MatrixFile::from_matrix(b.matrix(), Some(MatrixKind::Observable)),
            alpha,
            lhs: check.lhs,
            rhs: check.rhs,
            margin: check.margin,
            trial,
            seed,
        }
    }

    /// Re-evaluates the stored instance and returns the fresh margin.
    pub fn replay(&self) -> Result<f64, Error> {
        let id = InequalityId::from_str_id(&self.ineq_id)
            .ok_or_else(|| Error::Format(format!("unknown inequality id {}", self.ineq_id)))?;
        let rho = density(&self.rho.to_matrix()?)?;
        let a = Observable::new(self.a.to_matrix()?)?;
        let b = Observable::new(self.b.to_matrix()?)?;
        let check = evaluate_pair_inequality(id, &rho, &a, &b, self.alpha, DEFAULT_MARGIN_TOL)?;
        Ok(check.margin)
    }
}

/// Evaluates one (rho, A, B, alpha) inequality by id. For the chains
/// and the intermediate bound, which produce several margins per
/// instance, the reported check is the one with the smallest margin.
pub fn evaluate_pair_inequality(
    id: InequalityId,
    rho: &DensityMatrix,
    a: &Observable,
    b: &Observable,
    alpha: f64,
    tol: f64,
) -> Result<InequalityCheck, Error> {
    let tightest = |checks: Vec<InequalityCheck>| {
        checks
            .into_iter()
            .min_by(|x, y| x.margin.total_cmp(&y.margin))
            .expect("non-empty")
    };
    let check = match id {
        InequalityId::Heisenberg21 => heisenberg_check(rho, a, b, tol)?,
        InequalityId::Schrodinger => skewtrace_core::ineq::schrodinger_check(rho, a, b, tol)?,
        InequalityId::Luo23 => luo_check(rho, a, b, tol)?,
        InequalityId::Main31 => main_theorem_check(rho, a, b, alpha, tol)?,
        InequalityId::IntermediateIj => {
            tightest(intermediate_ij_check(rho, a, b, alpha, tol)?.to_vec())
        }
        InequalityId::Conj210 => conjecture_2_10_check(rho, a, b, alpha, tol)?,
        InequalityId::Thm21 => theorem_2_1_check(rho, a, b, alpha, tol)?,
        InequalityId::ConjWRhs => conjecture_w_rhs_check(rho, a, b, alpha, tol)?,
        InequalityId::Chain24 | InequalityId::Chain27 | InequalityId::Chain29 => tightest(
            ordering_chain_check(rho, a, alpha, tol)?
                .into_iter()
                .filter(|c| c.id == id)
                .collect(),
        ),
        other => {
            return Err(Error::Config(format!(
                "{other} is not a (rho, A, B, alpha) inequality"
            )))
        }
    };
    Ok(check)
}

/// Searches `config.trials` random instances for violations of one
/// inequality. For the two refuted conjectures the built-in exact fixture
/// is always evaluated first and, violating, leads the list; the
/// random finds follow sorted by margin ascending.
pub fn search_violations(
    id: InequalityId,
    config: &CampaignConfig,
) -> Result<Vec<ViolationRecord>, Error> {
    // trials = 0 is allowed here: the fixture alone is a valid search.
    let mut relaxed = config.clone();
    relaxed.trials = relaxed.trials.max(1);
    relaxed.validate()?;
    let mut fixture_records = Vec::new();
    if id.is_conjecture() {
        let (rho, a, b, alpha) = counterexample_instance();
        let check = evaluate_pair_inequality(id, &rho, &a, &b, alpha, config.tol)?;
        if !check.holds {
            fixture_records.push(ViolationRecord::from_check(
                &check, &rho, &a, &b, alpha, 0, config.seed,
            ));
        }
    }

    let mut found: Vec<ViolationRecord> = (0..config.trials)
        .into_par_iter()
        .filter_map(|trial| {
            let inst = generate_instance(config, trial).ok()?;
            let check = evaluate_pair_inequality(
                id, &inst.rho, &inst.a, &inst.b, inst.alpha, config.tol,
            )
            .ok()?;
            if check.holds {
                None
            } else {
                Some(ViolationRecord::from_check(
                    &check, &inst.rho, &inst.a, &inst.b, inst.alpha, trial, config.seed,
                ))
            }
        })
        .collect();
    found.sort_by(|x, y| x.margin.total_cmp(&y.margin));
    fixture_records.extend(found);
    Ok(fixture_records)
}

/// Reproduction of the fixture's known counterexample values, each
/// compared at 1e-6.
#[derive(Debug, Clone, Serialize)]
pub struct CounterexampleReport {
    pub u_product: f64,
    pub quarter_comm: f64,
    pub alpha_weighted_comm: f64,
    pub quarter_mean_sq_comm: f64,
    pub expected: [f64; 4],
    pub pass: [bool; 4],
    pub all_pass: bool,
}

pub const COUNTEREXAMPLE_EXPECTED: [f64; 4] = [0.22457296, 0.25, 0.2222222, 0.23828106];

pub fn reproduce_counterexample() -> Result<CounterexampleReport, Error> {
    let (rho, a, b, alpha) = counterexample_instance();
    let conj = conjecture_2_10_check(&rho, &a, &b, alpha, DEFAULT_MARGIN_TOL)?;
    let main = main_theorem_check(&rho, &a, &b, alpha, DEFAULT_MARGIN_TOL)?;
    let wrhs = conjecture_w_rhs_check(&rho, &a, &b, alpha, DEFAULT_MARGIN_TOL)?;
    let values = [conj.lhs, conj.rhs, main.rhs, wrhs.rhs];
    let mut pass = [false; 4];
    for (i, (&got, &want)) in values.iter().zip(COUNTEREXAMPLE_EXPECTED.iter()).enumerate() {
        pass[i] = (got - want).abs() <= 1e-6;
    }
    Ok(CounterexampleReport {
        u_product: values[0],
        quarter_comm: values[1],
        alpha_weighted_comm: values[2],
        quarter_mean_sq_comm: values[3],
        expected: COUNTEREXAMPLE_EXPECTED,
        pass,
        all_pass: pass.iter().all(|&p| p),
    })
}

#[derive(Debug, Clone, Serialize)]
pub struct ScanReport {
    pub ineq_id: String,
    pub trials: u64,
    pub min_margin: f64,
    pub min_trial: u64,
    pub alpha: f64,
    pub rho: MatrixFile,
    pub a: MatrixFile,
    pub b: MatrixFile,
}

/// Minimum margin of one inequality over the campaign's instances,
/// with the minimizing instance.
pub fn worst_margin_scan(id: InequalityId, config: &CampaignConfig) -> Result<ScanReport, Error> {
    config.validate()?;
    let margins: Vec<(u64, f64)> = (0..config.trials)
        .into_par_iter()
        .map(|trial| -> Result<(u64, f64), Error> {
            let inst = generate_instance(config, trial)?;
            let check = evaluate_pair_inequality(
                id, &inst.rho, &inst.a, &inst.b, inst.alpha, config.tol,
            )?;
            Ok((trial, check.margin))
        })
        .collect::<Result<_, _>>()?;
    let &(min_trial, min_margin) = margins
        .iter()
        .min_by(|x, y| x.1.total_cmp(&y.1))
        .expect("trials >= 1");
    let inst = generate_instance(config, min_trial)?;
    Ok(ScanReport {
        ineq_id: id.as_str().to_owned(),
        trials: config.trials,
        min_margin,
        min_trial,
        alpha: inst.alpha,
        rho: MatrixFile::from_matrix(inst.rho.matrix(), Some(MatrixKind::Density)),
        a: MatrixFile::from_matrix(inst.a.matrix(), Some(MatrixKind::Observable)),
        b: MatrixFile::from_matrix(inst.b.matrix(), Some(MatrixKind::Observable)),
    })
}

/// The 2x2 equality family of the W inequality: diagonal state,
/// purely off-diagonal observables with phases a quarter turn apart.
pub fn single_offdiag_instance(
    seed: u64,
    trial: u64,
) -> (DensityMatrix, Observable, Observable, f64) {
    let mut rng = trial_rng(seed, trial);
    let p = 0.5 + 0.5 * uniform(&mut rng); // larger eigenvalue in [1/2, 1)
    let s = 0.5 + uniform(&mut rng);
    let u = 0.5 + uniform(&mut rng);
    let alpha = uniform(&mut rng);
    let rho = density(&ComplexMatrix::diag(&[p, 1.0 - p])).expect("valid");
    let c = Complex64::new;
    let a = Observable::new(
        ComplexMatrix::new(2, vec![c(0.0, 0.0), c(0.0, s), c(0.0, -s), c(0.0, 0.0)])
            .expect("valid"),
    )
    .expect("Hermitian");
    let b = Observable::new(
        ComplexMatrix::new(2, vec![c(0.0, 0.0), c(u, 0.0), c(u, 0.0), c(0.0, 0.0)])
            .expect("valid"),
    )
    .expect("Hermitian");
    (rho, a, b, alpha)
}
