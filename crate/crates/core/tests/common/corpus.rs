//! The instance corpus for dominance checks: worked examples plus seeded
//! random instances of every problem kind.

use srr::knapsack::{build_time_indexed_lp, exact_free_table, gap_instance, run_time_indexed_policy, KnapsackInstance, StartTable};
use srr::matching::{
    build_graph_probing_lp, build_matching_lp, run_probe_commit, tight_example, GraphProbingInstance,
    MatchingInstance, RationedMatchingPolicy,
};
use srr::oracles::{optimal_adaptive_hiring, optimal_knapsack_policy, optimal_online_matching, poisson_binomial_min_k};
use srr::rationing::{solve_kunit_plan, KUnitPolicy, RandomOrderPolicy, RationingInstance};
use srr::sequencing::{HiringInstance, OfferSetPolicy, ProbeInstance, ProbeTopkPolicy};
use srr::{run_trials, solve_lp};

const REPS: u64 = 20_000;

pub enum Problem {
    Rationing(RationingInstance),
    RandomOrder(RationingInstance),
    Hiring(HiringInstance),
    Probe(ProbeInstance),
    Knapsack(KnapsackInstance),
    Matching(MatchingInstance),
    Graph(GraphProbingInstance),
}

pub struct Entry {
    pub name: String,
    pub problem: Problem,
}

pub struct Valuation {
    pub mean: f64,
    pub std_error: f64,
    pub lp: f64,
    pub oracle: Option<f64>,
}

impl Entry {
    fn new(name: impl Into<String>, problem: Problem) -> Self {
        Self {
            name: name.into(),
            problem,
        }
    }

    pub fn evaluate(&self) -> Valuation {
        let seed = self.name.bytes().fold(17u64, |h, b| h.wrapping_mul(31).wrapping_add(b as u64));
        match &self.problem {
            Problem::Rationing(inst) | Problem::RandomOrder(inst) => {
                let served = |trace: srr::rationing::OfferTrace| trace.units_taken() as f64;
                let report = if let Problem::RandomOrder(_) = self.problem {
                    let policy = RandomOrderPolicy::new(inst).unwrap();
                    run_trials(&[], REPS, seed, |rng, _| served(policy.run(rng)))
                } else {
                    let policy = KUnitPolicy::new(solve_kunit_plan(inst).unwrap(), inst).unwrap();
                    run_trials(&[], REPS, seed, |rng, _| served(policy.run(rng)))
                };
                let total: f64 = inst.x.iter().sum();
                Valuation {
                    mean: report.mean,
                    std_error: report.std_error,
                    lp: total.min(inst.k as f64),
                    oracle: Some(poisson_binomial_min_k(&inst.x, inst.k).unwrap()),
                }
            }
            Problem::Hiring(inst) => {
                let policy = OfferSetPolicy::new(inst).unwrap();
                let report = run_trials(&[], REPS, seed, |rng, _| policy.run(rng).1.total_weight);
                Valuation {
                    mean: report.mean,
                    std_error: report.std_error,
                    lp: policy.lp_value(),
                    oracle: optimal_adaptive_hiring(inst).ok().map(|o| o.value),
                }
            }
            Problem::Probe(inst) => {
                let policy = ProbeTopkPolicy::new(inst).unwrap();
                let report = run_trials(&[], REPS, seed, |rng, _| policy.run(rng).total_value);
                Valuation {
                    mean: report.mean,
                    std_error: report.std_error,
                    lp: policy.plan().objective_value,
                    oracle: None,
                }
            }
            Problem::Knapsack(inst) => {
                let sol = solve_lp(&build_time_indexed_lp(inst)).unwrap();
                let y = StartTable::from_solution(inst, &sol).unwrap();
                let free = exact_free_table(&y, inst).unwrap();
                let report = run_trials(&[], REPS, seed, |rng, _| run_time_indexed_policy(&y, &free, inst, rng).completed_weight);
                Valuation {
                    mean: report.mean,
                    std_error: report.std_error,
                    lp: sol.objective_value,
                    oracle: optimal_knapsack_policy(inst).ok().map(|o| o.value),
                }
            }
            Problem::Matching(inst) => {
                let sol = solve_lp(&build_matching_lp(inst, false)).unwrap();
                let policy = RationedMatchingPolicy::new(&sol, inst).unwrap();
                let report = run_trials(&[], REPS, seed, |rng, _| policy.run(rng).reward);
                Valuation {
                    mean: report.mean,
                    std_error: report.std_error,
                    lp: sol.objective_value,
                    oracle: optimal_online_matching(inst).ok().map(|o| o.value),
                }
            }
            Problem::Graph(inst) => {
                let sol = build_graph_probing_lp(inst, true).unwrap().solution.unwrap();
                let report = run_trials(&[], REPS, seed, |rng, _| run_probe_commit(&sol.values, inst, rng).matching.reward);
                Valuation {
                    mean: report.mean,
                    std_error: report.std_error,
                    lp: sol.objective_value,
                    oracle: None,
                }
            }
        }
    }
}

pub fn build() -> Vec<Entry> {
    let mut rng = super::rng(99);
    let mut out = vec![
        Entry::new("rationing-halves", Problem::Rationing(RationingInstance::new(1, vec![0.5, 0.5]).unwrap())),
        Entry::new("random-order-unit", Problem::RandomOrder(RationingInstance::new(1, vec![1.0]).unwrap())),
        Entry::new(
            "offering-uniform-100",
            Problem::Hiring(HiringInstance::new(1, 100, vec![1.0; 100], vec![0.01; 100]).unwrap()),
        ),
        Entry::new("knapsack-gap-8", Problem::Knapsack(gap_instance(8).unwrap())),
        Entry::new("matching-tight", Problem::Matching(tight_example(0.01).unwrap())),
    ];
    for c in 0..5 {
        out.push(Entry::new(format!("rationing-{c}"), Problem::Rationing(super::rationing(&mut rng, 10, 3))));
        let n = 2 + c;
        let x = super::capped_vector(&mut rng, n, 1.0);
        out.push(Entry::new(format!("random-order-{c}"), Problem::RandomOrder(RationingInstance::new(1, x).unwrap())));
        out.push(Entry::new(format!("hiring-{c}"), Problem::Hiring(super::hiring(&mut rng, 10))));
    }
    for c in 0..4 {
        out.push(Entry::new(format!("probe-{c}"), Problem::Probe(super::probe(&mut rng, 1 + c % 2))));
        out.push(Entry::new(format!("knapsack-{c}"), Problem::Knapsack(super::knapsack(&mut rng, 6, 8))));
        out.push(Entry::new(format!("matching-{c}"), Problem::Matching(super::matching(&mut rng, 3, 6))));
        out.push(Entry::new(format!("graph-{c}"), Problem::Graph(super::bipartite(&mut rng, 3, 4))));
    }
    out
}
