//! Brute-force references: optimal adaptive policies by exhaustive dynamic
//! programming, offline benchmarks, and exact distribution utilities.
//!
//! Nothing here calls into the policy modules; these are the cross-checks.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::knapsack::KnapsackInstance;
use crate::matching::MatchingInstance;
use crate::sequencing::HiringInstance;
use crate::sim::run_trials;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum OracleMethod {
    ExactDp,
    Exhaustive,
    ClosedForm,
    MonteCarlo,
}

impl OracleMethod {
    pub fn as_str(self) -> &'static str {
        match self {
            OracleMethod::ExactDp => "exact_dp",
            OracleMethod::Exhaustive => "exhaustive",
            OracleMethod::ClosedForm => "closed_form",
            OracleMethod::MonteCarlo => "monte_carlo",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OracleValue {
    pub value: f64,
    pub method: OracleMethod,
    pub state_count: usize,
    /// Present for Monte Carlo estimates.
    pub std_error: Option<f64>,
}

impl OracleValue {
    fn exact(value: f64, method: OracleMethod, state_count: usize) -> Self {
        Self {
            value,
            method,
            state_count,
            std_error: None,
        }
    }
}

pub const HIRING_LIMIT: usize = 12;
pub const OFFLINE_EXACT_LIMIT: usize = 20;
pub const MATCHING_RESOURCE_LIMIT: usize = 6;
pub const MATCHING_AGENT_LIMIT: usize = 10;
pub const KNAPSACK_JOB_LIMIT: usize = 8;
pub const KNAPSACK_HORIZON_LIMIT: usize = 10;

fn guard(what: &'static str, size: usize, limit: usize) -> Result<()> {
    if size > limit {
        Err(Error::TooLarge { what, size, limit })
    } else {
        Ok(())
    }
}

/// Best expected hired weight over all adaptive offer policies.
pub fn optimal_adaptive_hiring(inst: &HiringInstance) -> Result<OracleValue> {
    inst.validate()?;
    let n = inst.w.len();
    guard("candidates for the hiring oracle", n, HIRING_LIMIT)?;
    fn go(inst: &HiringInstance, left: u32, offers: usize, seats: usize, memo: &mut HashMap<(u32, usize, usize), f64>) -> f64 {
        if offers == 0 || seats == 0 || left == 0 {
            return 0.0;
        }
        if let Some(&v) = memo.get(&(left, offers, seats)) {
            return v;
        }
        let mut best = 0.0f64;
        for i in 0..inst.w.len() {
            if left & (1 << i) == 0 {
                continue;
            }
            let rest = left & !(1 << i);
            let p = inst.p[i];
            let v = p * (inst.w[i] + go(inst, rest, offers - 1, seats - 1, memo))
                + (1.0 - p) * go(inst, rest, offers - 1, seats, memo);
            best = best.max(v);
        }
        memo.insert((left, offers, seats), best);
        best
    }
    let mut memo = HashMap::new();
    let value = go(inst, (1u32 << n) - 1, inst.budget.min(n), inst.k, &mut memo);
    Ok(OracleValue::exact(value, OracleMethod::ExactDp, memo.len().max(1)))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum OfflineMode {
    Exact,
    MonteCarlo { replications: u64, seed: u64 },
}

/// `E[sum of the k largest weights among materialized agents]`.
pub fn offline_topk_value(weights: &[f64], probabilities: &[f64], k: usize, mode: OfflineMode) -> Result<OracleValue> {
    if weights.len() != probabilities.len() {
        return Err(Error::param("weights", "weights and probabilities differ in length"));
    }
    if probabilities.iter().any(|p| !(0.0..=1.0).contains(p)) {
        return Err(Error::param("probabilities", "must lie in [0, 1]"));
    }
    let n = weights.len();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| weights[b].total_cmp(&weights[a]));
    let top_sum = |present: &dyn Fn(usize) -> bool| -> f64 {
        order.iter().filter(|&&i| present(i)).take(k).map(|&i| weights[i]).sum()
    };
    match mode {
        OfflineMode::Exact => {
            guard("agents for exact offline enumeration", n, OFFLINE_EXACT_LIMIT)?;
            let mut value = 0.0;
            for mask in 0u32..(1 << n) {
                let prob: f64 = (0..n)
                    .map(|i| if mask & (1 << i) != 0 { probabilities[i] } else { 1.0 - probabilities[i] })
                    .product();
                if prob > 0.0 {
                    value += prob * top_sum(&|i| mask & (1 << i) != 0);
                }
            }
            Ok(OracleValue::exact(value, OracleMethod::Exhaustive, 1 << n))
        }
        OfflineMode::MonteCarlo { replications, seed } => {
            if replications == 0 {
                return Err(Error::param("replications", "must be positive"));
            }
            use rand::Rng;
            let report = run_trials(&[], replications, seed, |rng, _| {
                let present: Vec<bool> = probabilities.iter().map(|&p| rng.random::<f64>() < p).collect();
                top_sum(&|i| present[i])
            });
            Ok(OracleValue {
                value: report.mean,
                method: OracleMethod::MonteCarlo,
                state_count: replications as usize,
                std_error: Some(report.std_error),
            })
        }
    }
}

/// Best online policy for agents arriving in order, each seeing whether it
/// materialized before choosing a resource.
pub fn optimal_online_matching(inst: &MatchingInstance) -> Result<OracleValue> {
    inst.validate()?;
    guard("resources for the matching oracle", inst.m, MATCHING_RESOURCE_LIMIT)?;
    guard("agents for the matching oracle", inst.n, MATCHING_AGENT_LIMIT)?;
    let size = 1usize << inst.m;
    // value[mask] for the agents from `i` onward, filled backwards.
    let mut value = vec![0.0; size];
    for i in (0..inst.n).rev() {
        let mut prev = vec![0.0; size];
        for (mask, slot) in prev.iter_mut().enumerate() {
            let skip = value[mask];
            let take = (0..inst.m)
                .filter(|j| mask & (1 << j) != 0)
                .map(|j| inst.w[j][i] + value[mask & !(1 << j)])
                .fold(skip, f64::max);
            *slot = inst.p[i] * take + (1.0 - inst.p[i]) * skip;
        }
        value = prev;
    }
    Ok(OracleValue::exact(value[size - 1], OracleMethod::ExactDp, size * (inst.n + 1)))
}

/// Best adaptive single-server schedule: whenever idle, start any unstarted
/// job or wait one step.
pub fn optimal_knapsack_policy(inst: &KnapsackInstance) -> Result<OracleValue> {
    inst.validate()?;
    let (n, h) = (inst.jobs.len(), inst.horizon);
    guard("jobs for the knapsack oracle", n, KNAPSACK_JOB_LIMIT)?;
    guard("horizon for the knapsack oracle", h, KNAPSACK_HORIZON_LIMIT)?;
    let size = 1usize << n;
    // value[t][mask]: server idle at step t with `mask` already started.
    let mut value = vec![vec![0.0; size]; h + 2];
    for t in (1..=h).rev() {
        for mask in 0..size {
            let mut best = value[t + 1][mask];
            for i in (0..n).filter(|i| mask & (1 << i) == 0) {
                let next = mask | (1 << i);
                let v: f64 = inst.jobs[i]
                    .iter()
                    .map(|&(w, d, p)| {
                        let done = t + d - 1;
                        let gain = if done <= h { w } else { 0.0 };
                        p * (gain + value[(t + d).min(h + 1)][next])
                    })
                    .sum();
                best = best.max(v);
            }
            value[t][mask] = best;
        }
    }
    Ok(OracleValue::exact(value[1][0], OracleMethod::ExactDp, size * h))
}

/// `E[min{Σ Ber(x_i), k}]` from the full count distribution.
pub fn poisson_binomial_min_k(x: &[f64], k: usize) -> Result<f64> {
    if let Some(v) = x.iter().find(|v| !(0.0..=1.0).contains(*v)) {
        return Err(Error::param("x", format!("{v} is not in [0, 1]")));
    }
    let mut dist = vec![0.0; x.len() + 1];
    dist[0] = 1.0;
    for (seen, &p) in x.iter().enumerate() {
        for c in (0..=seen + 1).rev() {
            let from_below = if c > 0 { dist[c - 1] * p } else { 0.0 };
            dist[c] = dist[c] * (1.0 - p) + from_below;
        }
    }
    Ok(dist.iter().enumerate().map(|(c, q)| c.min(k) as f64 * q).sum())
}
