//! Single-server stochastic knapsack with correlated (weight, duration) jobs.
//!
//! The time-indexed LP bounds every adaptive policy. The rounding policy
//! draws, at each step, job `i` with probability `y_it / (2 Free(i,t))`
//! and starts it if the server is idle and `i` is new, where `Free(i,t)` is
//! the probability the server is idle with `i` unstarted. With exact `Free`
//! every job starts at every step with probability exactly `y_it / 2`.

use std::collections::BTreeMap;

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::numerics::{Bound, LinearProgram, LpSolution, Relation};
use crate::sim::{derive_seed, run_trials_with, Execution, DEFAULT_Z};

/// Largest job count accepted by the exact tracker.
pub const EXACT_JOB_LIMIT: usize = 12;

/// Tracked states below this probability are dropped.
const PRUNE: f64 = 1e-15;

/// One outcome of a job's joint law: `(weight, duration, probability)`.
pub type JobOutcome = (f64, usize, f64);

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct KnapsackInstance {
    #[serde(rename = "T")]
    pub horizon: usize,
    pub jobs: Vec<Vec<JobOutcome>>,
}

impl KnapsackInstance {
    pub fn new(horizon: usize, jobs: Vec<Vec<JobOutcome>>) -> Result<Self> {
        let inst = Self { horizon, jobs };
        inst.validate()?;
        Ok(inst)
    }

    pub fn validate(&self) -> Result<()> {
        if self.horizon == 0 {
            return Err(Error::instance("horizon T must be positive"));
        }
        if self.jobs.is_empty() {
            return Err(Error::instance("at least one job is required"));
        }
        for (i, law) in self.jobs.iter().enumerate() {
            if law.is_empty() {
                return Err(Error::instance(format!("job {i} has no outcomes")));
            }
            for &(w, d, p) in law {
                if !(w.is_finite() && w >= 0.0) {
                    return Err(Error::instance(format!("job {i}: weight {w} must be finite and ≥ 0")));
                }
                if d == 0 || d > self.horizon {
                    return Err(Error::instance(format!(
                        "job {i}: duration {d} is outside 1..={}",
                        self.horizon
                    )));
                }
                if !(0.0..=1.0).contains(&p) {
                    return Err(Error::instance(format!("job {i}: probability {p} is not in [0, 1]")));
                }
            }
            let total: f64 = law.iter().map(|o| o.2).sum();
            if (total - 1.0).abs() > 1e-9 {
                return Err(Error::instance(format!("job {i}: probabilities sum to {total}")));
            }
        }
        Ok(())
    }

    pub fn n(&self) -> usize {
        self.jobs.len()
    }

    pub fn mean_weight(&self, i: usize) -> f64 {
        self.jobs[i].iter().map(|&(w, _, p)| w * p).sum()
    }

    /// `E[min{D_i, T}]`.
    pub fn mean_duration(&self, i: usize) -> f64 {
        self.jobs[i].iter().map(|&(_, d, p)| d.min(self.horizon) as f64 * p).sum()
    }

    /// `P[D_i > s]`.
    pub fn survival(&self, i: usize, s: usize) -> f64 {
        self.jobs[i].iter().filter(|o| o.1 > s).map(|o| o.2).sum()
    }

    /// Expected weight collected when job `i` starts at step `t` (1-based):
    /// `E[W_i · 1(D_i ≤ T − t + 1)]`.
    pub fn reward_if_started(&self, i: usize, t: usize) -> f64 {
        let room = self.horizon + 1 - t;
        self.jobs[i].iter().filter(|o| o.1 <= room).map(|o| o.0 * o.2).sum()
    }

    pub fn sample_job<R: Rng + ?Sized>(&self, i: usize, rng: &mut R) -> (f64, usize) {
        let u: f64 = rng.random();
        let mut acc = 0.0;
        for &(w, d, p) in &self.jobs[i] {
            acc += p;
            if u < acc {
                return (w, d);
            }
        }
        let last = self.jobs[i].last().unwrap();
        (last.0, last.1)
    }
}

/// `max Σ E[W_i] y_i` s.t. `Σ E[min{D_i,T}] y_i ≤ 2T`, `0 ≤ y ≤ 1`.
pub fn build_naive_knapsack_lp(inst: &KnapsackInstance) -> LinearProgram {
    let n = inst.n();
    let mut lp = LinearProgram::new(n);
    lp.objective = (0..n).map(|i| inst.mean_weight(i)).collect();
    lp.bounds = vec![Bound::UNIT; n];
    lp.add_constraint((0..n).map(|i| inst.mean_duration(i)).collect(), Relation::Le, 2.0 * inst.horizon as f64);
    lp
}

/// `T` jobs, each `(W, D) = (1, T)` w.p. `1/T` and `(0, 1)` otherwise.
pub fn gap_instance(horizon: usize) -> Result<KnapsackInstance> {
    if horizon < 2 {
        return Err(Error::param("T", format!("{horizon} must be at least 2")));
    }
    let q = 1.0 / horizon as f64;
    KnapsackInstance::new(horizon, vec![vec![(1.0, horizon, q), (0.0, 1, 1.0 - q)]; horizon])
}

/// Variable index of `y_it` (t is 1-based) in the time-indexed LP.
pub fn time_indexed_index(horizon: usize, i: usize, t: usize) -> usize {
    i * horizon + (t - 1)
}

/// Time-indexed LP: start probabilities `y_it` with at most one start per
/// job and at most one job in service in expectation at every step.
pub fn build_time_indexed_lp(inst: &KnapsackInstance) -> LinearProgram {
    let (n, h) = (inst.n(), inst.horizon);
    let mut lp = LinearProgram::new(n * h);
    let mut names = Vec::with_capacity(n * h);
    for i in 0..n {
        for t in 1..=h {
            lp.objective[time_indexed_index(h, i, t)] = inst.reward_if_started(i, t);
            names.push(format!("y{i}_{t}"));
        }
    }
    lp.names = Some(names);
    for i in 0..n {
        let row: Vec<(usize, f64)> = (1..=h).map(|t| (time_indexed_index(h, i, t), 1.0)).collect();
        lp.add_sparse(&row, Relation::Le, 1.0);
    }
    let surv: Vec<Vec<f64>> = (0..n).map(|i| (0..h).map(|s| inst.survival(i, s)).collect()).collect();
    for t in 1..=h {
        let mut row = Vec::new();
        for (i, s) in surv.iter().enumerate() {
            for u in 1..=t {
                let c = s[t - u];
                if c > 0.0 {
                    row.push((time_indexed_index(h, i, u), c));
                }
            }
        }
        lp.add_sparse(&row, Relation::Le, 1.0);
    }
    lp
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StartTable {
    /// `y[i][t-1]`.
    pub y: Vec<Vec<f64>>,
}

impl StartTable {
    pub fn zeros(n: usize, horizon: usize) -> Self {
        Self {
            y: vec![vec![0.0; horizon]; n],
        }
    }

    pub fn from_solution(inst: &KnapsackInstance, sol: &LpSolution) -> Result<Self> {
        let (n, h) = (inst.n(), inst.horizon);
        if sol.values.len() != n * h {
            return Err(Error::param("solution", format!("expected {} values, got {}", n * h, sol.values.len())));
        }
        let table = Self {
            y: sol.values.chunks(h).map(|c| c.iter().map(|v| v.max(0.0)).collect()).collect(),
        };
        table.validate(inst, 1e-7)?;
        Ok(table)
    }

    pub fn get(&self, i: usize, t: usize) -> f64 {
        self.y[i][t - 1]
    }

    pub fn validate(&self, inst: &KnapsackInstance, tol: f64) -> Result<()> {
        let (n, h) = (inst.n(), inst.horizon);
        if self.y.len() != n || self.y.iter().any(|r| r.len() != h) {
            return Err(Error::param("y", format!("start table must be {n}×{h}")));
        }
        if self.y.iter().flatten().any(|v| !(*v >= 0.0)) {
            return Err(Error::param("y", "start probabilities must be non-negative"));
        }
        for (i, row) in self.y.iter().enumerate() {
            let s: f64 = row.iter().sum();
            if s > 1.0 + tol {
                return Err(Error::param("y", format!("job {i} starts with total probability {s}")));
            }
        }
        for t in 1..=h {
            let load: f64 = (0..n)
                .map(|i| (1..=t).map(|u| inst.survival(i, t - u) * self.get(i, u)).sum::<f64>())
                .sum();
            if load > 1.0 + tol {
                return Err(Error::param("y", format!("expected occupancy {load} exceeds 1 at t = {t}")));
            }
        }
        Ok(())
    }

    /// Objective of the time-indexed LP at this table.
    pub fn lp_value(&self, inst: &KnapsackInstance) -> f64 {
        (0..inst.n())
            .map(|i| (1..=inst.horizon).map(|t| self.get(i, t) * inst.reward_if_started(i, t)).sum::<f64>())
            .sum()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum FreeSource {
    Exact,
    Sampled { replications: u64 },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FreeTable {
    /// `free[i][t-1]`.
    pub free: Vec<Vec<f64>>,
    pub source: FreeSource,
}

impl FreeTable {
    pub fn get(&self, i: usize, t: usize) -> f64 {
        self.free[i][t - 1]
    }
}

/// Draw probabilities at step `t`: `y_it / (2 Free(i,t))` with `0/0 = 0`.
/// Returns the vector, renormalized if it sums past one, and whether it did.
fn draw_vector(y: &StartTable, free: impl Fn(usize) -> f64, t: usize) -> (Vec<f64>, bool) {
    let mut q: Vec<f64> = (0..y.y.len())
        .map(|i| {
            let half = y.get(i, t) / 2.0;
            let f = free(i);
            if half <= 0.0 || f <= 0.0 {
                0.0
            } else {
                half / f
            }
        })
        .collect();
    let s: f64 = q.iter().sum();
    let overflow = s > 1.0 + 1e-12;
    if overflow {
        q.iter_mut().for_each(|v| *v /= s);
    }
    (q, overflow)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TrackedRun {
    /// `P[job i starts at step t]`, as `start[i][t-1]`.
    pub start: Vec<Vec<f64>>,
    pub expected_reward: f64,
    /// `Free(i,t)` of the tracked process.
    pub free: Vec<Vec<f64>>,
    /// Steps whose draw vector had to be renormalized.
    pub overflow_steps: Vec<usize>,
    pub max_states: usize,
}

/// In-service job and its start step.
type Busy = Option<(usize, usize)>;

/// Exact forward pass over the policy's state distribution.
///
/// With `free = None` the draw at each step uses the tracked process's own
/// `Free` values, which is the exact policy. Otherwise the given table is
/// used, and the result is the exact law of the policy run with that table.
pub fn track_policy(y: &StartTable, free: Option<&FreeTable>, inst: &KnapsackInstance) -> Result<TrackedRun> {
    inst.validate()?;
    let (n, h) = (inst.n(), inst.horizon);
    if n > EXACT_JOB_LIMIT {
        return Err(Error::TooLarge {
            what: "jobs for exact tracking (use sampled Free estimates)",
            size: n,
            limit: EXACT_JOB_LIMIT,
        });
    }
    y.validate(inst, 1e-7)?;
    let surv: Vec<Vec<f64>> = (0..n).map(|i| (0..=h).map(|s| inst.survival(i, s)).collect()).collect();

    let mut states: BTreeMap<(u32, Busy), f64> = BTreeMap::new();
    states.insert((0, None), 1.0);
    let mut run = TrackedRun {
        start: vec![vec![0.0; h]; n],
        expected_reward: 0.0,
        free: vec![vec![0.0; h]; n],
        overflow_steps: Vec::new(),
        max_states: 1,
    };

    for t in 1..=h {
        for ((mask, busy), p) in &states {
            if busy.is_none() {
                for i in 0..n {
                    if mask & (1 << i) == 0 {
                        run.free[i][t - 1] += p;
                    }
                }
            }
        }
        let (q, overflow) = match free {
            None => draw_vector(y, |i| run.free[i][t - 1], t),
            Some(table) => draw_vector(y, |i| table.get(i, t), t),
        };
        if overflow {
            run.overflow_steps.push(t);
        }

        // Decisions at step t, then service progress into step t + 1.
        let mut next: BTreeMap<(u32, Busy), f64> = BTreeMap::new();
        let mut push = |key: (u32, Busy), p: f64| {
            if p >= PRUNE {
                *next.entry(key).or_insert(0.0) += p;
            }
        };
        for (&(mask, busy), &p) in &states {
            let after: Vec<((u32, Busy), f64)> = match busy {
                Some(job) => vec![((mask, Some(job)), 1.0)],
                None => {
                    let mut out = Vec::new();
                    let mut stay = 1.0;
                    for (i, &qi) in q.iter().enumerate() {
                        if qi > 0.0 && mask & (1 << i) == 0 {
                            run.start[i][t - 1] += p * qi;
                            out.push(((mask | (1 << i), Some((i, t))), qi));
                            stay -= qi;
                        }
                    }
                    out.push(((mask, None), stay.max(0.0)));
                    out
                }
            };
            for ((m, b), w) in after {
                let mass = p * w;
                match b {
                    Some((j, u)) => {
                        let alive = surv[j][t - u];
                        let cont = if alive > 0.0 { surv[j][t + 1 - u] / alive } else { 0.0 };
                        push((m, Some((j, u))), mass * cont);
                        push((m, None), mass * (1.0 - cont));
                    }
                    None => push((m, None), mass),
                }
            }
        }
        states = next;
        run.max_states = run.max_states.max(states.len());
    }

    run.expected_reward = (0..n)
        .map(|i| (1..=h).map(|t| run.start[i][t - 1] * inst.reward_if_started(i, t)).sum::<f64>())
        .sum();
    Ok(run)
}

/// Exact `Free(i,t)` of the policy driven by its own exact values.
pub fn exact_free_table(y: &StartTable, inst: &KnapsackInstance) -> Result<FreeTable> {
    Ok(FreeTable {
        free: track_policy(y, None, inst)?.free,
        source: FreeSource::Exact,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SampledFree {
    pub table: FreeTable,
    /// Per-entry standard errors.
    pub std_error: Vec<Vec<f64>>,
    /// `(job, t)` pairs with positive `y` whose estimate came out zero; their
    /// draw probability is set to zero.
    pub zero_estimates: Vec<(usize, usize)>,
}

/// Estimates `Free` step by step: for each `t`, `R` fresh replays of the
/// policy through `t − 1`, driven by the estimates already frozen for earlier
/// steps.
pub fn sampled_free_table(y: &StartTable, inst: &KnapsackInstance, replications: u64, seed: u64) -> Result<SampledFree> {
    sampled_free_table_with(y, inst, replications, seed, Execution::Parallel)
}

pub fn sampled_free_table_with(
    y: &StartTable,
    inst: &KnapsackInstance,
    replications: u64,
    seed: u64,
    execution: Execution,
) -> Result<SampledFree> {
    inst.validate()?;
    if replications == 0 {
        return Err(Error::param("R", "at least one replication is required"));
    }
    y.validate(inst, 1e-7)?;
    let (n, h) = (inst.n(), inst.horizon);
    let mut table = FreeTable {
        free: vec![vec![1.0; h]; n],
        source: FreeSource::Sampled { replications },
    };
    let mut std_error = vec![vec![0.0; h]; n];
    let labels: Vec<String> = (0..n).map(|i| format!("free{i}")).collect();
    for t in 2..=h {
        let frozen = &table;
        let report = run_trials_with(&labels, replications, derive_seed(seed, t as u64), execution, DEFAULT_Z, |rng, ev| {
            let state = replay(y, frozen, inst, t - 1, rng).0;
            if state.idle_at(t) {
                for i in 0..n {
                    if !state.started[i] {
                        ev.hit(i);
                    }
                }
            }
            0.0
        });
        for (i, (_, stat)) in report.events.iter().enumerate() {
            table.free[i][t - 1] = stat.frequency;
            let f = stat.frequency;
            std_error[i][t - 1] = (f * (1.0 - f) / replications as f64).sqrt();
        }
    }
    let zero_estimates = (0..n)
        .flat_map(|i| (1..=h).map(move |t| (i, t)))
        .filter(|&(i, t)| table.get(i, t) == 0.0 && y.get(i, t) > 0.0)
        .collect();
    Ok(SampledFree {
        table,
        std_error,
        zero_estimates,
    })
}

#[derive(Debug, Clone)]
struct ServerState {
    started: Vec<bool>,
    /// Last step at which the in-service job is still running.
    busy_through: usize,
}

impl ServerState {
    fn idle_at(&self, t: usize) -> bool {
        self.busy_through < t
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScheduledJob {
    pub job: usize,
    pub start: usize,
    pub weight: f64,
    pub duration: usize,
    pub completed: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScheduleTrace {
    pub jobs: Vec<ScheduledJob>,
    pub completed_weight: f64,
    /// Steps whose draw vector was renormalized.
    pub overflow_steps: Vec<usize>,
}

fn replay<R: Rng + ?Sized>(
    y: &StartTable,
    free: &FreeTable,
    inst: &KnapsackInstance,
    through: usize,
    rng: &mut R,
) -> (ServerState, ScheduleTrace) {
    let mut state = ServerState {
        started: vec![false; inst.n()],
        busy_through: 0,
    };
    let mut trace = ScheduleTrace {
        jobs: Vec::new(),
        completed_weight: 0.0,
        overflow_steps: Vec::new(),
    };
    for t in 1..=through {
        let (q, overflow) = draw_vector(y, |i| free.get(i, t), t);
        if overflow {
            trace.overflow_steps.push(t);
        }
        let u: f64 = rng.random();
        let mut acc = 0.0;
        let pick = q.iter().position(|&qi| {
            acc += qi;
            u < acc
        });
        if let Some(i) = pick {
            if state.idle_at(t) && !state.started[i] {
                let (w, d) = inst.sample_job(i, rng);
                state.started[i] = true;
                state.busy_through = t + d - 1;
                let completed = d <= inst.horizon + 1 - t;
                if completed {
                    trace.completed_weight += w;
                }
                trace.jobs.push(ScheduledJob {
                    job: i,
                    start: t,
                    weight: w,
                    duration: d,
                    completed,
                });
            }
        }
    }
    (state, trace)
}

/// One run of the rounding policy with the given `Free` table.
pub fn run_time_indexed_policy<R: Rng + ?Sized>(
    y: &StartTable,
    free: &FreeTable,
    inst: &KnapsackInstance,
    rng: &mut R,
) -> ScheduleTrace {
    replay(y, free, inst, inst.horizon, rng).1
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::solve_lp;
    use crate::sim::run_trials;

    fn deterministic(w: f64, d: usize) -> Vec<JobOutcome> {
        vec![(w, d, 1.0)]
    }

    #[test]
    fn naive_lp_gap_instance() {
        let inst = gap_instance(10).unwrap();
        assert_eq!(inst.n(), 10);
        assert!((inst.mean_duration(0) - 1.9).abs() < 1e-12);
        let sol = solve_lp(&build_naive_knapsack_lp(&inst)).unwrap();
        assert!((sol.objective_value - 1.0).abs() < 1e-9);
        assert!(sol.values.iter().all(|&v| (v - 1.0).abs() < 1e-9));
    }

    #[test]
    fn naive_lp_single_job() {
        let inst = KnapsackInstance::new(5, vec![deterministic(1.0, 5)]).unwrap();
        let sol = solve_lp(&build_naive_knapsack_lp(&inst)).unwrap();
        assert!((sol.objective_value - 1.0).abs() < 1e-12);
    }

    #[test]
    fn naive_lp_binding_budget() {
        // Three jobs of length T: only two fit the 2T budget.
        let inst = KnapsackInstance::new(4, vec![deterministic(1.0, 4); 3]).unwrap();
        let sol = solve_lp(&build_naive_knapsack_lp(&inst)).unwrap();
        assert!((sol.objective_value - 2.0).abs() < 1e-12);
    }

    #[test]
    fn time_indexed_lp_examples() {
        let sol = solve_lp(&build_time_indexed_lp(&gap_instance(10).unwrap())).unwrap();
        assert!((sol.objective_value - 0.1).abs() < 1e-9);

        let one = KnapsackInstance::new(3, vec![deterministic(1.0, 1)]).unwrap();
        assert!((solve_lp(&build_time_indexed_lp(&one)).unwrap().objective_value - 1.0).abs() < 1e-12);

        let two = KnapsackInstance::new(4, vec![deterministic(1.0, 2); 2]).unwrap();
        assert!((solve_lp(&build_time_indexed_lp(&two)).unwrap().objective_value - 2.0).abs() < 1e-9);
    }

    #[test]
    fn instance_validation() {
        assert!(KnapsackInstance::new(3, vec![vec![(1.0, 4, 1.0)]]).is_err());
        assert!(KnapsackInstance::new(3, vec![vec![(1.0, 0, 1.0)]]).is_err());
        assert!(KnapsackInstance::new(3, vec![vec![(1.0, 2, 0.5)]]).is_err());
        assert!(KnapsackInstance::new(3, vec![]).is_err());
        assert!(gap_instance(1).is_err());
    }

    #[test]
    fn exact_tracker_hits_half_marginals() {
        let inst = KnapsackInstance::new(
            3,
            vec![vec![(2.0, 1, 0.5), (1.0, 3, 0.5)], vec![(1.0, 2, 0.7), (0.0, 1, 0.3)]],
        )
        .unwrap();
        let sol = solve_lp(&build_time_indexed_lp(&inst)).unwrap();
        let y = StartTable::from_solution(&inst, &sol).unwrap();
        let run = track_policy(&y, None, &inst).unwrap();
        for i in 0..2 {
            assert_eq!(run.free[i][0], 1.0);
            for t in 1..=3 {
                assert!((run.start[i][t - 1] - y.get(i, t) / 2.0).abs() < 1e-12);
                let half_load: f64 = (0..2).map(|j| y.get(j, t) / 2.0).sum();
                assert!(run.free[i][t - 1] >= half_load - 1e-12);
            }
        }
        assert!((run.expected_reward - sol.objective_value / 2.0).abs() < 1e-12);
        assert!(run.overflow_steps.is_empty());
    }

    #[test]
    fn idle_policy_on_zero_table() {
        let inst = gap_instance(4).unwrap();
        let y = StartTable::zeros(4, 4);
        let run = track_policy(&y, None, &inst).unwrap();
        assert!(run.free.iter().flatten().all(|&f| f == 1.0));
        assert_eq!(run.expected_reward, 0.0);
        let sampled = sampled_free_table(&y, &inst, 100, 1).unwrap();
        assert!(sampled.table.free.iter().flatten().all(|&f| f == 1.0));
        let mut rng = crate::sim::replication_rng(0, 0);
        assert_eq!(run_time_indexed_policy(&y, &sampled.table, &inst, &mut rng).completed_weight, 0.0);
    }

    #[test]
    fn sampled_single_job_free() {
        let inst = KnapsackInstance::new(2, vec![deterministic(1.0, 2)]).unwrap();
        let y = StartTable {
            y: vec![vec![1.0, 0.0]],
        };
        let s = sampled_free_table(&y, &inst, 200_000, 9).unwrap();
        let (f, se) = (s.table.get(0, 2), s.std_error[0][1]);
        assert!((f - 0.5).abs() < 3.0 * se + 1e-12, "{f} ± {se}");
    }

    #[test]
    fn simulation_matches_tracker() {
        let inst = KnapsackInstance::new(
            4,
            vec![
                vec![(3.0, 2, 0.5), (1.0, 4, 0.5)],
                vec![(1.0, 1, 1.0)],
                vec![(2.0, 3, 0.4), (0.5, 1, 0.6)],
            ],
        )
        .unwrap();
        let sol = solve_lp(&build_time_indexed_lp(&inst)).unwrap();
        let y = StartTable::from_solution(&inst, &sol).unwrap();
        let free = exact_free_table(&y, &inst).unwrap();
        let report = run_trials(&[], 200_000, 5, |rng, _| run_time_indexed_policy(&y, &free, &inst, rng).completed_weight);
        let exact = sol.objective_value / 2.0;
        assert!((report.mean - exact).abs() < 4.0 * report.std_error, "{} vs {exact}", report.mean);
    }

    #[test]
    fn tracker_rejects_large_instances() {
        let inst = gap_instance(13).unwrap();
        let y = StartTable::zeros(13, 13);
        assert!(matches!(track_policy(&y, None, &inst), Err(Error::TooLarge { .. })));
    }
}
