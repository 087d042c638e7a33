//! Seeded random instance generators shared by the integration tests.
#![allow(dead_code)]

pub mod corpus;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use srr::knapsack::KnapsackInstance;
use srr::matching::{GraphProbingInstance, MatchingInstance, ProbeEdge};
use srr::rationing::RationingInstance;
use srr::sequencing::{DiscreteDistribution, HiringInstance, ProbeInstance};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Probabilities in `[0, 1]` whose sum is at most `cap`.
pub fn capped_vector(rng: &mut ChaCha8Rng, n: usize, cap: f64) -> Vec<f64> {
    let raw: Vec<f64> = (0..n).map(|_| rng.random::<f64>()).collect();
    let total: f64 = raw.iter().sum();
    let target = cap * rng.random_range(0.3..=1.0);
    raw.iter().map(|v| (v * target / total).min(1.0)).collect()
}

pub fn rationing(rng: &mut ChaCha8Rng, max_n: usize, max_k: usize) -> RationingInstance {
    let n = rng.random_range(1..=max_n);
    let k = rng.random_range(1..=max_k);
    RationingInstance::new(k, capped_vector(rng, n, k as f64)).unwrap()
}

pub fn hiring(rng: &mut ChaCha8Rng, max_n: usize) -> HiringInstance {
    let n = rng.random_range(2..=max_n);
    let k = rng.random_range(1..=3.min(n));
    let budget = rng.random_range(k..=n);
    let w = (0..n).map(|_| (rng.random_range(0.0..10.0f64) * 100.0).round() / 100.0).collect();
    let p = (0..n).map(|_| rng.random_range(0.05..1.0)).collect();
    HiringInstance::new(k, budget, w, p).unwrap()
}

pub fn distribution(rng: &mut ChaCha8Rng) -> DiscreteDistribution {
    let atoms = rng.random_range(2..=4);
    let raw: Vec<(f64, f64)> = (0..atoms)
        .map(|_| (rng.random_range(0..=20) as f64 / 2.0, rng.random_range(0.1..1.0)))
        .collect();
    let total: f64 = raw.iter().map(|a| a.1).sum();
    let mut scaled: Vec<(f64, f64)> = raw.iter().map(|&(v, m)| (v, m / total)).collect();
    let head: f64 = scaled[..atoms - 1].iter().map(|a| a.1).sum();
    scaled[atoms - 1].1 = 1.0 - head;
    DiscreteDistribution::from_atoms(&scaled).unwrap()
}

pub fn probe(rng: &mut ChaCha8Rng, k: usize) -> ProbeInstance {
    let n = rng.random_range(k + 1..=8);
    let budget = rng.random_range(k..=n);
    let dists = (0..n).map(|_| distribution(rng)).collect();
    ProbeInstance::new(k, budget, dists).unwrap()
}

pub fn knapsack(rng: &mut ChaCha8Rng, max_n: usize, max_t: usize) -> KnapsackInstance {
    let n = rng.random_range(1..=max_n);
    let horizon = rng.random_range(2..=max_t);
    let jobs = (0..n)
        .map(|_| {
            let outcomes = rng.random_range(1..=3);
            let raw: Vec<f64> = (0..outcomes).map(|_| rng.random_range(0.1..1.0)).collect();
            let total: f64 = raw.iter().sum();
            let mut law: Vec<(f64, usize, f64)> = raw
                .iter()
                .map(|m| (rng.random_range(0..=10) as f64 / 2.0, rng.random_range(1..=horizon), m / total))
                .collect();
            let head: f64 = law[..outcomes - 1].iter().map(|o| o.2).sum();
            law[outcomes - 1].2 = 1.0 - head;
            law
        })
        .collect();
    KnapsackInstance::new(horizon, jobs).unwrap()
}

pub fn matching(rng: &mut ChaCha8Rng, m: usize, n: usize) -> MatchingInstance {
    let p = (0..n).map(|_| rng.random_range(0.1..=1.0)).collect();
    let w = (0..m)
        .map(|_| (0..n).map(|_| rng.random_range(0.0..5.0)).collect())
        .collect();
    MatchingInstance::new(p, w).unwrap()
}

/// Random bipartite graph with some finite patience values.
pub fn bipartite(rng: &mut ChaCha8Rng, left: usize, right: usize) -> GraphProbingInstance {
    let mut edges = Vec::new();
    for u in 0..left {
        for v in left..left + right {
            if rng.random_bool(0.6) {
                edges.push(ProbeEdge {
                    u,
                    v,
                    w: rng.random_range(0.5..5.0),
                    p: rng.random_range(0.1..=1.0),
                });
            }
        }
    }
    let patience = (0..left + right)
        .map(|_| if rng.random_bool(0.5) { Some(rng.random_range(1..=3)) } else { None })
        .collect();
    GraphProbingInstance::new(left + right, edges, patience).unwrap()
}
