use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;
use skewtrace::harness::{
    run_campaign, search_violations, CampaignConfig, RankPolicy,
};
use skewtrace::io::{check_to_json, quantities_to_json, read_density, read_observable, sig12};
use skewtrace::Error;
use skewtrace_core::ineq::{
    conjecture_2_10_check, conjecture_w_rhs_check, heisenberg_check, intermediate_ij_check,
    luo_check, main_theorem_check, ordering_chain_check, schrodinger_check, theorem_2_1_check,
};
use skewtrace_core::skew::compute_all;
use skewtrace_core::{InequalityId, DEFAULT_MARGIN_TOL};

/// Skew-information quantities and trace-inequality verification for
/// finite-dimensional quantum states.
#[derive(Parser)]
#[command(name = "skewtrace", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Compute the uncertainty quantities of one state/observable pair.
    Compute {
        /// Density matrix JSON file.
        state: PathBuf,
        /// Observable JSON file.
        observable: PathBuf,
        /// Dyson parameter in [0, 1]; decimal or rational like "1/3".
        #[arg(long, value_parser = parse_alpha)]
        alpha: f64,
    },
    /// Run every inequality checker on one (state, A, B, alpha) instance.
    Check {
        state: PathBuf,
        a: PathBuf,
        b: PathBuf,
        #[arg(long, value_parser = parse_alpha)]
        alpha: f64,
        /// Margin tolerance: holds means margin >= -tol.
        #[arg(long, default_value_t = DEFAULT_MARGIN_TOL)]
        tol: f64,
    },
    /// Randomized verification campaign over all checkers.
    Fuzz(FuzzArgs),
    /// Search for violations of one of the refuted conjectures.
    Counterexample {
        #[arg(long, value_enum)]
        target: Target,
        /// Number of random instances to try beyond the built-in fixture.
        #[arg(long, default_value_t = 1000)]
        budget: u64,
        #[arg(long, env = "SKEWTRACE_SEED", default_value_t = 0)]
        seed: u64,
        /// Dimensions to draw random instances from.
        #[arg(long, value_delimiter = ',', default_value = "2,3,4")]
        dims: Vec<usize>,
        /// Write the violation records (JSON array) here as well.
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Args)]
struct FuzzArgs {
    /// Comma-separated dimensions, each >= 2.
    #[arg(long, value_delimiter = ',', default_value = "2,3,4")]
    dims: Vec<usize>,
    #[arg(long, default_value_t = 1000)]
    trials: u64,
    #[arg(long, env = "SKEWTRACE_SEED", default_value_t = 0)]
    seed: u64,
    /// Explicit alpha values cycled through the trials.
    #[arg(long, value_delimiter = ',', value_parser = parse_alpha)]
    alphas: Vec<f64>,
    /// Uniform random alpha slots mixed into the cycle.
    #[arg(long, default_value_t = 1)]
    alpha_draws: usize,
    #[arg(long, default_value_t = DEFAULT_MARGIN_TOL)]
    tol: f64,
    #[arg(long, value_enum, default_value_t = RankPolicyArg::FullRank)]
    rank_policy: RankPolicyArg,
    /// Report JSON output path.
    #[arg(long)]
    out: PathBuf,
    /// Optional per-check margin CSV.
    #[arg(long)]
    csv: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum RankPolicyArg {
    FullRank,
    MixedRank,
}

#[derive(Clone, Copy, ValueEnum)]
enum Target {
    #[value(name = "conj-2-10")]
    Conj210,
    #[value(name = "conj-w-rhs")]
    ConjWRhs,
}

fn parse_alpha(s: &str) -> Result<f64, String> {
    let value = if let Some((p, q)) = s.split_once('/') {
        let p: f64 = p.trim().parse().map_err(|_| format!("bad rational {s:?}"))?;
        let q: f64 = q.trim().parse().map_err(|_| format!("bad rational {s:?}"))?;
        if q == 0.0 {
            return Err(format!("bad rational {s:?}: zero denominator"));
        }
        p / q
    } else {
        s.parse().map_err(|_| format!("bad number {s:?}"))?
    };
    if !(0.0..=1.0).contains(&value) {
        return Err("alpha out of range [0, 1]".into());
    }
    Ok(value)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match dispatch(cli.command) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

fn dispatch(command: Command) -> Result<u8, Error> {
    match command {
        Command::Compute { state, observable, alpha } => cmd_compute(&state, &observable, alpha),
        Command::Check { state, a, b, alpha, tol } => cmd_check(&state, &a, &b, alpha, tol),
        Command::Fuzz(args) => cmd_fuzz(&args),
        Command::Counterexample { target, budget, seed, dims, out } => {
            cmd_counterexample(target, budget, seed, dims, out.as_deref())
        }
    }
}

fn cmd_compute(state: &std::path::Path, observable: &std::path::Path, alpha: f64) -> Result<u8, Error> {
    let rho = read_density(state)?;
    let h = read_observable(observable)?;
    let q = compute_all(&rho, &h, alpha)?;
    println!("{}", serde_json::to_string_pretty(&quantities_to_json(&q)).expect("json"));
    Ok(0)
}

fn cmd_check(
    state: &std::path::Path,
    a_path: &std::path::Path,
    b_path: &std::path::Path,
    alpha: f64,
    tol: f64,
) -> Result<u8, Error> {
    if !(tol > 0.0) {
        return Err(Error::Config("tol must be > 0".into()));
    }
    let rho = read_density(state)?;
    let a = read_observable(a_path)?;
    let b = read_observable(b_path)?;

    let mut checks = Vec::new();
    checks.push(heisenberg_check(&rho, &a, &b, tol)?);
    checks.push(schrodinger_check(&rho, &a, &b, tol)?);
    checks.push(luo_check(&rho, &a, &b, tol)?);
    checks.push(main_theorem_check(&rho, &a, &b, alpha, tol)?);
    checks.extend(intermediate_ij_check(&rho, &a, &b, alpha, tol)?);
    checks.push(conjecture_2_10_check(&rho, &a, &b, alpha, tol)?);
    checks.push(theorem_2_1_check(&rho, &a, &b, alpha, tol)?);
    checks.push(conjecture_w_rhs_check(&rho, &a, &b, alpha, tol)?);
    checks.extend(ordering_chain_check(&rho, &a, alpha, tol)?);

    let rows: Vec<_> = checks.iter().map(check_to_json).collect();
    println!("{}", serde_json::to_string_pretty(&serde_json::Value::Array(rows)).expect("json"));

    let theorem_failed = checks.iter().any(|c| !c.holds && !c.id.is_conjecture());
    for c in checks.iter().filter(|c| !c.holds) {
        eprintln!(
            "{}: violated, margin {}{}",
            c.id.as_str(),
            sig12(c.margin),
            if c.id.is_conjecture() { " (refuted conjecture; expected)" } else { "" }
        );
    }
    Ok(if theorem_failed { 1 } else { 0 })
}

fn cmd_fuzz(args: &FuzzArgs) -> Result<u8, Error> {
    let config = CampaignConfig {
        dims: args.dims.clone(),
        alphas: args.alphas.clone(),
        alpha_draws: args.alpha_draws,
        trials: args.trials,
        seed: args.seed,
        tol: args.tol,
        rank_policy: match args.rank_policy {
            RankPolicyArg::FullRank => RankPolicy::FullRank,
            RankPolicyArg::MixedRank => RankPolicy::MixedRank,
        },
    };
    let report = run_campaign(&config)?;

    let body = serde_json::to_string_pretty(&report.to_json()).expect("json");
    std::fs::write(&args.out, body.as_bytes())
        .map_err(|e| Error::Io(format!("{}: {e}", args.out.display())))?;
    if let Some(csv) = &args.csv {
        report.write_csv(csv)?;
    }
    eprintln!("campaign finished in {} ms", report.wall_clock_ms);

    let violated = report.proven_violated();
    println!(
        "{}",
        serde_json::to_string_pretty(&json!({
            "out": args.out.display().to_string(),
            "total_trials": report.total_trials,
            "total_checks": report.total_checks,
            "total_violations": report.total_violations,
            "proven_violated": violated,
        }))
        .expect("json")
    );
    Ok(if violated { 1 } else { 0 })
}

fn cmd_counterexample(
    target: Target,
    budget: u64,
    seed: u64,
    dims: Vec<usize>,
    out: Option<&std::path::Path>,
) -> Result<u8, Error> {
    let id = match target {
        Target::Conj210 => InequalityId::Conj210,
        Target::ConjWRhs => InequalityId::ConjWRhs,
    };
    let mut config = CampaignConfig::new(dims, budget, seed);
    config.rank_policy = RankPolicy::MixedRank;
    let records = search_violations(id, &config)?;

    if let Some(path) = out {
        let body = serde_json::to_string_pretty(&records).expect("json");
        std::fs::write(path, body.as_bytes())
            .map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
    }
    let summary = json!({
        "target": id.as_str(),
        "budget": budget,
        "seed": seed,
        "found": records.len(),
        "violations": records.iter().map(|r| json!({
            "trial": r.trial,
            "alpha": sig12(r.alpha),
            "lhs": sig12(r.lhs),
            "rhs": sig12(r.rhs),
            "margin": sig12(r.margin),
        })).collect::<Vec<_>>(),
    });
    println!("{}", serde_json::to_string_pretty(&summary).expect("json"));
    if records.is_empty() {
        eprintln!("no violation found within budget");
        Ok(3)
    } else {
        Ok(0)
    }
}
