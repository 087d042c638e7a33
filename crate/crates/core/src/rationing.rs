//! k-unit rationing: promise every agent the same probability of being offered
//! a unit when agents are visited in order and each takes an offered unit
//! independently with a known probability.
//!
//! Fixed order, one unit: [`SingleUnitPolicy`] at the optimal promise
//! [`gamma_fixed_order_k1`]. Fixed order, k units: [`KUnitPlan`] with the
//! greedy "offer when more units remain" fill. Random order, one unit:
//! [`RandomOrderPolicy`] with arrival times drawn uniformly on `[0, 1]`.

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::numerics::{LinearProgram, Relation};

const PROB_TOL: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RationingInstance {
    pub k: usize,
    pub x: Vec<f64>,
}

impl RationingInstance {
    pub fn new(k: usize, x: Vec<f64>) -> Result<Self> {
        let inst = Self { k, x };
        inst.validate()?;
        Ok(inst)
    }

    pub fn validate(&self) -> Result<()> {
        if self.k == 0 {
            return Err(Error::instance("k must be at least 1"));
        }
        if self.x.is_empty() {
            return Err(Error::instance("at least one agent is required"));
        }
        if let Some(i) = self.x.iter().position(|v| !(0.0..=1.0).contains(v)) {
            return Err(Error::instance(format!("x[{i}] = {} is not in [0, 1]", self.x[i])));
        }
        Ok(())
    }

    pub fn n(&self) -> usize {
        self.x.len()
    }

    pub fn supply_meets_demand(&self) -> bool {
        self.x.iter().sum::<f64>() <= self.k as f64 + PROB_TOL
    }
}

/// One sample path of a rationing policy.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OfferTrace {
    pub offered: Vec<bool>,
    pub took: Vec<bool>,
    /// Units left when each agent is reached.
    pub units_remaining: Vec<usize>,
}

impl OfferTrace {
    fn with_capacity(n: usize) -> Self {
        Self {
            offered: Vec::with_capacity(n),
            took: Vec::with_capacity(n),
            units_remaining: Vec::with_capacity(n),
        }
    }

    pub fn units_taken(&self) -> usize {
        self.took.iter().filter(|&&t| t).count()
    }
}

/// Optimal fixed-order promise for a single unit: `1 / (1 + Σ_{i<n} x_i)`.
pub fn gamma_fixed_order_k1(inst: &RationingInstance) -> Result<f64> {
    if inst.k != 1 {
        return Err(Error::param("k", format!("closed form needs k = 1, got {}", inst.k)));
    }
    let head: f64 = inst.x[..inst.n() - 1].iter().sum();
    Ok(1.0 / (1.0 + head))
}

/// Single-unit, fixed-order policy: agent `i` is offered the unit when it is
/// still available and an independent bit with probability
/// `γ / (1 - γ Σ_{j<i} x_j)` comes up.
#[derive(Debug, Clone, PartialEq)]
pub struct SingleUnitPolicy {
    x: Vec<f64>,
    gamma: f64,
    bit_probs: Vec<f64>,
}

impl SingleUnitPolicy {
    pub fn new(inst: &RationingInstance, gamma: f64) -> Result<Self> {
        inst.validate()?;
        if inst.k != 1 {
            return Err(Error::param("k", "single-unit policy needs k = 1"));
        }
        let bit_probs = single_unit_bit_probabilities(&inst.x, gamma)?;
        Ok(Self {
            x: inst.x.clone(),
            gamma,
            bit_probs,
        })
    }

    /// The policy at the optimal promise.
    pub fn optimal(inst: &RationingInstance) -> Result<Self> {
        Self::new(inst, gamma_fixed_order_k1(inst)?)
    }

    pub fn gamma(&self) -> f64 {
        self.gamma
    }

    pub fn bit_probabilities(&self) -> &[f64] {
        &self.bit_probs
    }

    pub fn run<R: Rng + ?Sized>(&self, rng: &mut R) -> OfferTrace {
        let mut trace = OfferTrace::with_capacity(self.x.len());
        let mut remaining = 1usize;
        for (&a, &x) in self.bit_probs.iter().zip(&self.x) {
            trace.units_remaining.push(remaining);
            let bit = rng.random::<f64>() < a;
            let offered = remaining > 0 && bit;
            let took = offered && rng.random::<f64>() < x;
            if took {
                remaining -= 1;
            }
            trace.offered.push(offered);
            trace.took.push(took);
        }
        trace
    }

    /// Exact offer probability of every agent, by forward tracking of the
    /// probability that the unit is still available.
    pub fn offer_probabilities(&self) -> Vec<f64> {
        let mut available = 1.0;
        self.bit_probs
            .iter()
            .zip(&self.x)
            .map(|(&a, &x)| {
                let offer = available * a;
                available -= offer * x;
                offer
            })
            .collect()
    }
}

/// Bit probabilities `γ / (1 - γ Σ_{j<i} x_j)`; rejects `γ` that makes any of
/// them exceed 1.
pub fn single_unit_bit_probabilities(x: &[f64], gamma: f64) -> Result<Vec<f64>> {
    if !(0.0..=1.0).contains(&gamma) {
        return Err(Error::param("gamma", format!("{gamma} is not in [0, 1]")));
    }
    let mut prefix = 0.0;
    let mut out = Vec::with_capacity(x.len());
    for (i, &xi) in x.iter().enumerate() {
        let denom = 1.0 - gamma * prefix;
        let p = if gamma == 0.0 { 0.0 } else { gamma / denom };
        if denom <= 0.0 || p > 1.0 + 1e-9 {
            return Err(Error::param(
                "gamma",
                format!("{gamma} is infeasible: bit probability for agent {i} exceeds 1"),
            ));
        }
        out.push(p.min(1.0));
        prefix += xi;
    }
    Ok(out)
}

/// Offer plan for k units: unconditional probabilities `alpha[i][l-1]` of
/// offering agent `i` while `l` units remain, and state probabilities
/// `beta[i][l-1]` of reaching agent `i` with `l` units.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct KUnitPlan {
    pub gamma: f64,
    pub alpha: Vec<Vec<f64>>,
    pub beta: Vec<Vec<f64>>,
}

impl KUnitPlan {
    /// Greedy fill at promise `gamma`: each agent takes its `gamma` of offer
    /// mass from the states with the most units left first.
    pub fn with_gamma(inst: &RationingInstance, gamma: f64) -> Result<Self> {
        inst.validate()?;
        if !(0.0..=1.0).contains(&gamma) {
            return Err(Error::param("gamma", format!("{gamma} is not in [0, 1]")));
        }
        let (plan, shortfall) = greedy_fill(inst, gamma);
        if shortfall > 1e-9 {
            return Err(Error::param(
                "gamma",
                format!("{gamma} is infeasible (offer mass short by {shortfall:.3e})"),
            ));
        }
        Ok(plan)
    }

    pub fn k(&self) -> usize {
        self.alpha.first().map_or(0, Vec::len)
    }

    /// Conditional offer probability with `units` left at agent `i`.
    pub fn offer_probability(&self, i: usize, units: usize) -> f64 {
        if units == 0 {
            return 0.0;
        }
        let (a, b) = (self.alpha[i][units - 1], self.beta[i][units - 1]);
        if b <= 0.0 {
            0.0
        } else {
            (a / b).min(1.0)
        }
    }
}

fn greedy_fill(inst: &RationingInstance, gamma: f64) -> (KUnitPlan, f64) {
    let (n, k) = (inst.n(), inst.k);
    let mut alpha = vec![vec![0.0; k]; n];
    let mut beta = vec![vec![0.0; k]; n];
    beta[0][k - 1] = 1.0;
    let mut shortfall: f64 = 0.0;
    for i in 0..n {
        if i > 0 {
            let x = inst.x[i - 1];
            for l in 0..k {
                let up = if l + 1 < k { alpha[i - 1][l + 1] } else { 0.0 };
                let b = beta[i - 1][l] - alpha[i - 1][l] * x + up * x;
                beta[i][l] = b.max(0.0);
            }
        }
        let mut need = gamma;
        for l in (0..k).rev() {
            let a = need.min(beta[i][l]).clamp(0.0, beta[i][l]);
            alpha[i][l] = a;
            need -= a;
        }
        shortfall = shortfall.max(need);
    }
    (KUnitPlan { gamma, alpha, beta }, shortfall)
}

/// Largest promise the greedy fill sustains for every agent, found by
/// bisection on `[0, 1]`, with its plan.
pub fn solve_kunit_plan(inst: &RationingInstance) -> Result<KUnitPlan> {
    inst.validate()?;
    let (full, short) = greedy_fill(inst, 1.0);
    if short <= PROB_TOL {
        return Ok(full);
    }
    let (mut lo, mut hi) = (0.0_f64, 1.0_f64);
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if greedy_fill(inst, mid).1 <= PROB_TOL {
            lo = mid;
        } else {
            hi = mid;
        }
        if hi - lo < 1e-14 {
            break;
        }
    }
    Ok(greedy_fill(inst, lo).0)
}

/// Variable layout of [`build_kunit_lp`]: `gamma`, then `alpha[i][l]`, then `beta[i][l]`.
pub fn kunit_lp_alpha_index(k: usize, i: usize, l: usize) -> usize {
    1 + i * k + l
}

pub fn kunit_lp_beta_index(n: usize, k: usize, i: usize, l: usize) -> usize {
    1 + n * k + i * k + l
}

/// The promise LP over `(gamma, alpha, beta)` with the state recurrence as
/// equality rows.
pub fn build_kunit_lp(inst: &RationingInstance) -> Result<LinearProgram> {
    inst.validate()?;
    let (n, k) = (inst.n(), inst.k);
    let a = |i, l| kunit_lp_alpha_index(k, i, l);
    let b = |i, l| kunit_lp_beta_index(n, k, i, l);
    let mut lp = LinearProgram::new(1 + 2 * n * k);
    lp.objective[0] = 1.0;
    for i in 0..n {
        let mut terms: Vec<(usize, f64)> = (0..k).map(|l| (a(i, l), 1.0)).collect();
        terms.push((0, -1.0));
        lp.add_sparse(&terms, Relation::Eq, 0.0);
        for l in 0..k {
            if i == 0 {
                let rhs = if l == k - 1 { 1.0 } else { 0.0 };
                lp.add_sparse(&[(b(0, l), 1.0)], Relation::Eq, rhs);
            } else {
                let x = inst.x[i - 1];
                let mut terms = vec![(b(i, l), 1.0), (b(i - 1, l), -1.0), (a(i - 1, l), x)];
                if l + 1 < k {
                    terms.push((a(i - 1, l + 1), -x));
                }
                lp.add_sparse(&terms, Relation::Eq, 0.0);
            }
            lp.add_sparse(&[(a(i, l), 1.0), (b(i, l), -1.0)], Relation::Le, 0.0);
        }
    }
    Ok(lp)
}

/// Executes a [`KUnitPlan`]: with `l` units left at agent `i`, offer with
/// probability `alpha / beta` (0 for unreachable states).
#[derive(Debug, Clone, PartialEq)]
pub struct KUnitPolicy {
    plan: KUnitPlan,
    x: Vec<f64>,
}

impl KUnitPolicy {
    pub fn new(plan: KUnitPlan, inst: &RationingInstance) -> Result<Self> {
        inst.validate()?;
        if plan.alpha.len() != inst.n() || plan.k() != inst.k {
            return Err(Error::param("plan", "plan dimensions do not match the instance"));
        }
        Ok(Self {
            plan,
            x: inst.x.clone(),
        })
    }

    pub fn plan(&self) -> &KUnitPlan {
        &self.plan
    }

    pub fn run<R: Rng + ?Sized>(&self, rng: &mut R) -> OfferTrace {
        let mut trace = OfferTrace::with_capacity(self.x.len());
        let mut remaining = self.plan.k();
        for (i, &x) in self.x.iter().enumerate() {
            trace.units_remaining.push(remaining);
            let q = self.plan.offer_probability(i, remaining);
            let offered = remaining > 0 && rng.random::<f64>() < q;
            let took = offered && rng.random::<f64>() < x;
            if took {
                remaining -= 1;
            }
            trace.offered.push(offered);
            trace.took.push(took);
        }
        trace
    }

    /// Exact distribution of units left when each agent is reached:
    /// `state[i][u]` for `u = 0..=k`.
    pub fn state_distribution(&self) -> Vec<Vec<f64>> {
        let k = self.plan.k();
        let mut dist = vec![0.0; k + 1];
        dist[k] = 1.0;
        let mut out = Vec::with_capacity(self.x.len());
        for (i, &x) in self.x.iter().enumerate() {
            out.push(dist.clone());
            let mut next = vec![0.0; k + 1];
            for (u, &p) in dist.iter().enumerate() {
                let take = p * self.plan.offer_probability(i, u) * x;
                next[u] += p - take;
                if u > 0 {
                    next[u - 1] += take;
                }
            }
            dist = next;
        }
        out
    }

    /// Exact offer probability of every agent.
    pub fn offer_probabilities(&self) -> Vec<f64> {
        self.state_distribution()
            .iter()
            .enumerate()
            .map(|(i, dist)| {
                dist.iter()
                    .enumerate()
                    .map(|(u, &p)| p * self.plan.offer_probability(i, u))
                    .sum()
            })
            .collect()
    }
}

/// Random-order single-unit policy for instances with `Σ x ≤ 1`: agents arrive
/// at independent uniform times `U_i` and are offered the unit (if available)
/// with probability `e^{-U_i x_i}`.
#[derive(Debug, Clone, PartialEq)]
pub struct RandomOrderPolicy {
    x: Vec<f64>,
}

impl RandomOrderPolicy {
    pub fn new(inst: &RationingInstance) -> Result<Self> {
        inst.validate()?;
        if inst.k != 1 {
            return Err(Error::param("k", "random-order policy is defined for k = 1"));
        }
        if !inst.supply_meets_demand() {
            return Err(Error::param("x", "random-order policy needs Σ x ≤ 1"));
        }
        Ok(Self { x: inst.x.clone() })
    }

    /// Trace entries are indexed by agent; `units_remaining[i]` is the supply
    /// when agent `i` arrives.
    pub fn run<R: Rng + ?Sized>(&self, rng: &mut R) -> OfferTrace {
        let n = self.x.len();
        let times: Vec<f64> = (0..n).map(|_| rng.random::<f64>()).collect();
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by(|&a, &b| times[a].total_cmp(&times[b]).then(a.cmp(&b)));
        let mut trace = OfferTrace {
            offered: vec![false; n],
            took: vec![false; n],
            units_remaining: vec![0; n],
        };
        let mut remaining = 1usize;
        for i in order {
            trace.units_remaining[i] = remaining;
            let bit = rng.random::<f64>() < (-times[i] * self.x[i]).exp();
            if remaining > 0 && bit {
                trace.offered[i] = true;
                if rng.random::<f64>() < self.x[i] {
                    trace.took[i] = true;
                    remaining -= 1;
                }
            }
        }
        trace
    }
}

/// `1 - e^{-k} k^k / k!`.
pub fn guarantee_random_order(k: usize) -> f64 {
    crate::correlation_gap_constant(k)
}

/// Root of `f` on `[lo, hi]` by bisection to absolute width `tol`.
pub fn bisect(f: impl Fn(f64) -> f64, mut lo: f64, mut hi: f64, tol: f64) -> Result<f64> {
    let (flo, fhi) = (f(lo), f(hi));
    if flo == 0.0 {
        return Ok(lo);
    }
    if fhi == 0.0 {
        return Ok(hi);
    }
    if flo.signum() == fhi.signum() {
        return Err(Error::NoSignChange { lo, hi });
    }
    let lo_sign = flo.signum();
    while hi - lo > tol {
        let mid = 0.5 * (lo + hi);
        let fm = f(mid);
        if fm == 0.0 {
            return Ok(mid);
        }
        if fm.signum() == lo_sign {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}

/// Residual of the two-unit fixed-order worst-case equation `e^{1/γ-3} = 2/γ - 3`.
pub fn gamma2_residual(gamma: f64) -> f64 {
    (1.0 / gamma - 3.0).exp() - (2.0 / gamma - 3.0)
}

/// Worst-case fixed-order guarantee for two units: the larger root of
/// `e^{1/γ-3} = 2/γ - 3`, which lies in `[1/2, 2/3]`.
pub fn gamma2_fixed_point() -> f64 {
    bisect(gamma2_residual, 0.5, 2.0 / 3.0, 1e-12).expect("bracket straddles the larger root")
}

/// `E[min{Σ Ber(x_i), k}] / Σ x_i`, with the count distribution truncated at k.
pub fn correlation_gap_ratio(x: &[f64], k: usize) -> Result<f64> {
    if let Some(v) = x.iter().find(|v| !(0.0..=1.0).contains(*v)) {
        return Err(Error::param("x", format!("{v} is not in [0, 1]")));
    }
    let total: f64 = x.iter().sum();
    if total <= 0.0 {
        return Err(Error::param("x", "needs Σ x > 0"));
    }
    // pmf[c] = P[count = c] for c < k; pmf[k] = P[count ≥ k].
    let mut pmf = vec![0.0; k + 1];
    pmf[0] = 1.0;
    for &p in x {
        pmf[k] += pmf[k - 1] * p;
        for c in (1..k).rev() {
            pmf[c] = pmf[c] * (1.0 - p) + pmf[c - 1] * p;
        }
        pmf[0] *= 1.0 - p;
    }
    let expected: f64 = pmf.iter().enumerate().map(|(c, &p)| c as f64 * p).sum();
    Ok(expected / total)
}
