//! Per-kind LP solve, policy construction, simulation and report tables.

use std::fmt::Write as _;
use std::str::FromStr;

use anyhow::{anyhow, bail, Context, Result};

use srr::knapsack::{
    build_naive_knapsack_lp, build_time_indexed_lp, exact_free_table, run_time_indexed_policy,
    sampled_free_table, StartTable,
};
use srr::matching::{build_graph_probing_lp, build_matching_lp, run_probe_commit, RationedMatchingPolicy};
use srr::numerics::LpSolution;
use srr::oracles::{
    optimal_adaptive_hiring, optimal_knapsack_policy, optimal_online_matching, poisson_binomial_min_k, OracleMethod,
    OracleValue,
};
use srr::rationing::{build_kunit_lp, solve_kunit_plan, KUnitPolicy, SingleUnitPolicy};
use srr::sequencing::{OfferSetPolicy, ProbeTopkPolicy};
use srr::sim::{derive_seed, run_trials, verify_marginals, Events, SimulationReport};
use srr::{correlation_gap_constant, solve_lp, LinearProgram, TrialRng};

use crate::instance::Instance;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FreeMode {
    Exact,
    Sampled(u64),
}

impl FromStr for FreeMode {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        if s == "exact" {
            return Ok(FreeMode::Exact);
        }
        match s.strip_prefix("sampled:").map(str::parse::<u64>) {
            Some(Ok(r)) if r > 0 => Ok(FreeMode::Sampled(r)),
            _ => Err(format!("expected `exact` or `sampled:<R>` with R ≥ 1, got `{s}`")),
        }
    }
}

#[derive(Debug, Clone, Copy)]
pub struct Options {
    pub reps: u64,
    pub seed: u64,
    pub tighten: bool,
    pub subset_cuts: bool,
    pub free: FreeMode,
}

impl Default for Options {
    fn default() -> Self {
        Self {
            reps: 100_000,
            seed: 0,
            tighten: false,
            subset_cuts: false,
            free: FreeMode::Exact,
        }
    }
}

pub type Trial = Box<dyn Fn(&mut TrialRng, &mut Events<'_>) -> f64 + Send + Sync>;

/// Everything needed to solve, simulate and verify one instance.
pub struct Prepared {
    /// Optimum of the LP the policy rounds.
    pub lp_value: f64,
    /// Upper bound on expected performance.
    pub bound: f64,
    pub solution: Vec<(String, f64)>,
    /// Further named quantities (other relaxations, constants).
    pub extra: Vec<(String, f64)>,
    pub labels: Vec<String>,
    /// Marginal targets checked with factor 1.
    pub targets: Vec<(String, f64)>,
    /// Promised fraction of `lp_value`, when one is proven for this policy.
    pub guarantee: Option<f64>,
    pub diagnostics: Vec<String>,
    pub trial: Trial,
}

fn named_values(lp: &LinearProgram, sol: &LpSolution) -> Vec<(String, f64)> {
    sol.values
        .iter()
        .enumerate()
        .map(|(j, &v)| {
            let name = lp.names.as_ref().map_or_else(|| format!("v{j}"), |n| n[j].clone());
            (name, v)
        })
        .collect()
}

fn optimal(lp: &LinearProgram) -> Result<LpSolution> {
    solve_lp(lp)?.into_optimal().context("LP has no optimal solution")
}

pub fn prepare(inst: &Instance, opts: &Options) -> Result<Prepared> {
    match inst {
        Instance::Rationing(inst) => {
            let lp = build_kunit_lp(inst)?;
            let sol = optimal(&lp)?;
            let n = inst.n();
            let (gamma, run): (f64, Trial) = if inst.k == 1 {
                let policy = SingleUnitPolicy::optimal(inst)?;
                (policy.gamma(), Box::new(move |rng, ev| record_offers(policy.run(rng), ev)))
            } else {
                let plan = solve_kunit_plan(inst)?;
                let gamma = plan.gamma;
                let policy = KUnitPolicy::new(plan, inst)?;
                (gamma, Box::new(move |rng, ev| record_offers(policy.run(rng), ev)))
            };
            let labels: Vec<String> = (0..n).map(|i| format!("offer{i}")).collect();
            let total: f64 = inst.x.iter().sum();
            Ok(Prepared {
                lp_value: sol.objective_value,
                bound: total.min(inst.k as f64),
                solution: named_values(&lp, &sol),
                extra: vec![("policy_gamma".into(), gamma)],
                targets: labels.iter().map(|l| (l.clone(), gamma)).collect(),
                labels,
                guarantee: None,
                diagnostics: Vec::new(),
                trial: run,
            })
        }
        Instance::Hiring(inst) => {
            let policy = OfferSetPolicy::new(inst)?;
            let n = inst.n();
            let y = policy.offer_probabilities().to_vec();
            let mut labels: Vec<String> = (0..n).map(|i| format!("selected{i}")).collect();
            labels.extend((0..n).map(|i| format!("hired{i}")));
            let targets = (0..n).map(|i| (labels[i].clone(), y[i])).collect();
            let lp_value = policy.lp_value();
            Ok(Prepared {
                lp_value,
                bound: lp_value,
                solution: y.iter().enumerate().map(|(i, &v)| (format!("y{i}"), v)).collect(),
                extra: vec![("exact_policy_value".into(), policy.expected_value())],
                labels,
                targets,
                guarantee: Some(correlation_gap_constant(inst.k)),
                diagnostics: Vec::new(),
                trial: Box::new(move |rng, ev| {
                    let (offers, out) = policy.run(rng);
                    for &i in &offers.order {
                        ev.hit(i);
                    }
                    for &i in &out.hired {
                        ev.hit(n + i);
                    }
                    out.total_weight
                }),
            })
        }
        Instance::ProbeTopk(inst) => {
            let policy = ProbeTopkPolicy::new(inst)?;
            let n = inst.n();
            let plan = policy.plan().clone();
            let mut labels: Vec<String> = (0..n).map(|i| format!("interviewed{i}")).collect();
            labels.extend((0..n).map(|i| format!("hired{i}")));
            let mut solution: Vec<(String, f64)> = plan.z.iter().enumerate().map(|(i, &v)| (format!("z{i}"), v)).collect();
            solution.extend(plan.x.iter().enumerate().map(|(i, &v)| (format!("x{i}"), v)));
            Ok(Prepared {
                lp_value: plan.objective_value,
                bound: plan.objective_value,
                solution,
                extra: vec![("exact_policy_value".into(), policy.expected_value())],
                labels,
                targets: Vec::new(),
                guarantee: Some(correlation_gap_constant(inst.k)),
                diagnostics: Vec::new(),
                trial: Box::new(move |rng, ev| {
                    let out = policy.run(rng);
                    for &i in &out.interviewed {
                        ev.hit(i);
                    }
                    for &i in &out.hired {
                        ev.hit(n + i);
                    }
                    out.total_value
                }),
            })
        }
        Instance::Knapsack(inst) => {
            let lp = build_time_indexed_lp(inst);
            let sol = optimal(&lp)?;
            let naive = optimal(&build_naive_knapsack_lp(inst))?.objective_value;
            let y = StartTable::from_solution(inst, &sol)?;
            let (n, h) = (inst.n(), inst.horizon);
            let mut diagnostics = Vec::new();
            let (free, exact) = match opts.free {
                FreeMode::Exact => (exact_free_table(&y, inst)?, true),
                FreeMode::Sampled(r) => {
                    let s = sampled_free_table(&y, inst, r, derive_seed(opts.seed, 1))?;
                    for (i, t) in &s.zero_estimates {
                        diagnostics.push(format!("Free({i},{t}) estimated as 0; job {i} is never drawn at t = {t}"));
                    }
                    (s.table, false)
                }
            };
            let labels: Vec<String> = (0..n).flat_map(|i| (1..=h).map(move |t| format!("start{i}_{t}"))).collect();
            let targets = if exact {
                labels
                    .iter()
                    .enumerate()
                    .map(|(k, l)| (l.clone(), y.get(k / h, k % h + 1) / 2.0))
                    .collect()
            } else {
                Vec::new()
            };
            let inst = inst.clone();
            Ok(Prepared {
                lp_value: sol.objective_value,
                bound: sol.objective_value,
                solution: named_values(&lp, &sol),
                extra: vec![("naive_lp".into(), naive)],
                labels,
                targets,
                guarantee: exact.then_some(0.5),
                diagnostics,
                trial: Box::new(move |rng, ev| {
                    let trace = run_time_indexed_policy(&y, &free, &inst, rng);
                    for job in &trace.jobs {
                        ev.hit(job.job * h + job.start - 1);
                    }
                    trace.completed_weight
                }),
            })
        }
        Instance::Matching(inst) => {
            let lp = build_matching_lp(inst, opts.tighten);
            let sol = optimal(&lp)?;
            let policy = RationedMatchingPolicy::new(&sol, inst)?;
            let (m, n) = (inst.m, inst.n);
            let labels: Vec<String> = (0..m).flat_map(|j| (0..n).map(move |i| format!("match{j}_{i}"))).collect();
            let targets = labels.iter().cloned().zip(sol.values.iter().map(|x| x / 2.0)).collect();
            Ok(Prepared {
                lp_value: sol.objective_value,
                bound: sol.objective_value,
                solution: named_values(&lp, &sol),
                extra: Vec::new(),
                labels,
                targets,
                guarantee: Some(0.5),
                diagnostics: Vec::new(),
                trial: Box::new(move |rng, ev| {
                    let out = policy.run(rng);
                    for &(j, i) in &out.pairs {
                        ev.hit(j * n + i);
                    }
                    out.reward
                }),
            })
        }
        Instance::GraphProbing(inst) => {
            let built = build_graph_probing_lp(inst, opts.subset_cuts)?;
            let sol = match built.solution {
                Some(s) => s,
                None => optimal(&built.lp)?,
            };
            let ne = inst.edges.len();
            let mut labels: Vec<String> = (0..ne).map(|k| format!("probed{k}")).collect();
            labels.extend((0..ne).map(|k| format!("matched{k}")));
            let mut extra = Vec::new();
            if opts.subset_cuts {
                extra.push(("subset_cuts".into(), built.cuts.len() as f64));
                extra.push(("cut_rounds".into(), built.rounds as f64));
            }
            let y = sol.values.clone();
            let inst = inst.clone();
            Ok(Prepared {
                lp_value: sol.objective_value,
                bound: sol.objective_value,
                solution: named_values(&built.lp, &sol),
                extra,
                labels,
                targets: Vec::new(),
                guarantee: None,
                diagnostics: Vec::new(),
                trial: Box::new(move |rng, ev| {
                    let run = run_probe_commit(&y, &inst, rng);
                    for &k in &run.probed {
                        ev.hit(k);
                    }
                    for &(u, v) in &run.matching.pairs {
                        let k = inst.edges.iter().position(|e| e.u == u && e.v == v).expect("matched edge exists");
                        ev.hit(ne + k);
                    }
                    run.matching.reward
                }),
            })
        }
    }
}

fn record_offers(trace: srr::rationing::OfferTrace, ev: &mut Events<'_>) -> f64 {
    for (i, &o) in trace.offered.iter().enumerate() {
        if o {
            ev.hit(i);
        }
    }
    trace.units_taken() as f64
}

/// Best achievable value for the instance, where an oracle exists. Rationing
/// uses the offline optimum `E[min{Σ Ber(x_i), k}]`.
pub fn oracle(inst: &Instance) -> Result<Option<OracleValue>> {
    Ok(match inst {
        Instance::Rationing(i) => Some(OracleValue {
            value: poisson_binomial_min_k(&i.x, i.k)?,
            method: OracleMethod::ExactDp,
            state_count: i.x.len() + 1,
            std_error: None,
        }),
        Instance::Hiring(i) => Some(optimal_adaptive_hiring(i)?),
        Instance::Knapsack(i) => Some(optimal_knapsack_policy(i)?),
        Instance::Matching(i) => Some(optimal_online_matching(i)?),
        Instance::ProbeTopk(_) | Instance::GraphProbing(_) => None,
    })
}

pub fn simulate(prep: &Prepared, opts: &Options) -> Result<SimulationReport> {
    if opts.reps == 0 {
        bail!("--reps must be at least 1");
    }
    Ok(run_trials(&prep.labels, opts.reps, opts.seed, &prep.trial))
}

pub fn solve_table(inst: &Instance, prep: &Prepared) -> String {
    let mut out = String::from("quantity,value\n");
    let _ = writeln!(out, "kind,{}", inst.kind());
    let _ = writeln!(out, "opt_lp,{}", prep.lp_value);
    for (k, v) in &prep.extra {
        let _ = writeln!(out, "{k},{v}");
    }
    out.push_str("\nvariable,value\n");
    for (k, v) in &prep.solution {
        let _ = writeln!(out, "{k},{v}");
    }
    out
}

/// Marginal verdicts plus performance checks; the flag is true iff all pass.
pub fn verify_table(prep: &Prepared, report: &SimulationReport) -> Result<(String, bool)> {
    let mut out = String::from("check,target,required,observed,half_width,pass\n");
    let mut all = true;
    for v in verify_marginals(report, &prep.targets, 1.0)? {
        all &= v.pass;
        let _ = writeln!(out, "{},{},{},{},{},{}", v.event, v.target, v.required, v.frequency, v.half_width, v.pass);
    }
    let hw = report.z * report.std_error;
    let dominated = report.mean <= prep.bound + hw;
    all &= dominated;
    let _ = writeln!(out, "mean<=bound,{},{},{},{},{}", prep.bound, prep.bound, report.mean, hw, dominated);
    if let Some(c) = prep.guarantee {
        let required = c * prep.lp_value;
        let ok = report.mean + hw >= required;
        all &= ok;
        let _ = writeln!(out, "mean>=guarantee*opt_lp,{},{},{},{},{}", prep.lp_value, required, report.mean, hw, ok);
    }
    Ok((out, all))
}

pub fn gap_table(inst: &Instance, prep: &Prepared, report: &SimulationReport, oracle: Option<&OracleValue>) -> String {
    let mut out = String::from("quantity,value\n");
    let _ = writeln!(out, "kind,{}", inst.kind());
    let _ = writeln!(out, "opt_lp,{}", prep.lp_value);
    for (k, v) in &prep.extra {
        let _ = writeln!(out, "{k},{v}");
    }
    if let Some(o) = oracle {
        let _ = writeln!(out, "oracle,{}", o.value);
    }
    let _ = writeln!(out, "policy_mean,{}", report.mean);
    let _ = writeln!(out, "policy_std_error,{}", report.std_error);
    if prep.bound > 0.0 {
        let _ = writeln!(out, "policy/bound,{}", report.mean / prep.bound);
    }
    if let Some(o) = oracle.filter(|o| o.value > 0.0) {
        let _ = writeln!(out, "policy/oracle,{}", report.mean / o.value);
        if prep.bound > 0.0 {
            let _ = writeln!(out, "oracle/bound,{}", o.value / prep.bound);
        }
        if let Some(naive) = prep.extra.iter().find(|e| e.0 == "naive_lp") {
            let _ = writeln!(out, "oracle/naive_lp,{}", o.value / naive.1);
        }
    }
    out
}

pub fn oracle_table(inst: &Instance, oracle: Option<&OracleValue>) -> Result<String> {
    let o = oracle.ok_or_else(|| anyhow!("no oracle is available for {} instances", inst.kind()))?;
    let mut out = String::from("quantity,value\n");
    let _ = writeln!(out, "kind,{}", inst.kind());
    let _ = writeln!(out, "value,{}", o.value);
    let _ = writeln!(out, "method,{}", o.method.as_str());
    let _ = writeln!(out, "state_count,{}", o.state_count);
    if let Some(se) = o.std_error {
        let _ = writeln!(out, "std_error,{se}");
    }
    Ok(out)
}
