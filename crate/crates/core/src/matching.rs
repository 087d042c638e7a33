//! Online stochastic matching and graph probing.
//!
//! Matching: agents arrive in order, materialize with probability `p_i`, and
//! can take one resource. Each resource runs its own single-unit rationing
//! stream at `γ = 1/2` against the probabilities `x_ji` that agent `i` asks
//! for it, so every pair is matched with probability exactly `x_ji / 2`.
//!
//! Graph probing: edges exist independently and must be probed to be seen; a
//! probed existing edge is committed. Vertices have a probe patience.

use std::collections::BTreeMap;

use rand::seq::SliceRandom;
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::numerics::{solve_lp, Bound, LinearProgram, LpSolution, Relation};

/// Acceptance rate used on every resource.
pub const RESOURCE_GAMMA: f64 = 0.5;

/// Degree limit for brute-force subset separation.
pub const CUT_DEGREE_LIMIT: usize = 20;

const CUT_TOL: f64 = 1e-7;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MatchingInstance {
    pub m: usize,
    pub n: usize,
    pub p: Vec<f64>,
    /// `w[j][i]`: reward for matching resource `j` to agent `i`.
    pub w: Vec<Vec<f64>>,
}

impl MatchingInstance {
    pub fn new(p: Vec<f64>, w: Vec<Vec<f64>>) -> Result<Self> {
        let inst = Self {
            m: w.len(),
            n: p.len(),
            p,
            w,
        };
        inst.validate()?;
        Ok(inst)
    }

    pub fn validate(&self) -> Result<()> {
        if self.m == 0 || self.n == 0 {
            return Err(Error::instance("need at least one resource and one agent"));
        }
        if self.p.len() != self.n || self.w.len() != self.m || self.w.iter().any(|r| r.len() != self.n) {
            return Err(Error::instance(format!("p must have {} entries and w must be {}×{}", self.n, self.m, self.n)));
        }
        if let Some(i) = self.p.iter().position(|v| !(0.0..=1.0).contains(v)) {
            return Err(Error::instance(format!("p[{i}] = {} is not in [0, 1]", self.p[i])));
        }
        if self.w.iter().flatten().any(|v| !(v.is_finite() && *v >= 0.0)) {
            return Err(Error::instance("rewards must be finite and ≥ 0"));
        }
        Ok(())
    }
}

/// Variable index of `x_ji`.
pub fn matching_index(n: usize, j: usize, i: usize) -> usize {
    j * n + i
}

/// Matching LP; with `tighten`, adds `x_ji + p_i Σ_{i'<i} x_ji' ≤ p_i`, which
/// every online policy satisfies.
pub fn build_matching_lp(inst: &MatchingInstance, tighten: bool) -> LinearProgram {
    let (m, n) = (inst.m, inst.n);
    let mut lp = LinearProgram::new(m * n);
    let mut names = Vec::with_capacity(m * n);
    for j in 0..m {
        for i in 0..n {
            lp.objective[matching_index(n, j, i)] = inst.w[j][i];
            names.push(format!("x{j}_{i}"));
        }
    }
    lp.names = Some(names);
    for j in 0..m {
        let row: Vec<(usize, f64)> = (0..n).map(|i| (matching_index(n, j, i), 1.0)).collect();
        lp.add_sparse(&row, Relation::Le, 1.0);
    }
    for i in 0..n {
        let row: Vec<(usize, f64)> = (0..m).map(|j| (matching_index(n, j, i), 1.0)).collect();
        lp.add_sparse(&row, Relation::Le, inst.p[i]);
    }
    if tighten {
        for j in 0..m {
            for i in 1..n {
                let mut row: Vec<(usize, f64)> = (0..i).map(|k| (matching_index(n, j, k), inst.p[i])).collect();
                row.push((matching_index(n, j, i), 1.0));
                lp.add_sparse(&row, Relation::Le, inst.p[i]);
            }
        }
    }
    lp
}

/// One resource, two agents: `p = (1, ε)`, `w = (1, 1/ε)`.
pub fn tight_example(eps: f64) -> Result<MatchingInstance> {
    if !(eps > 0.0 && eps <= 1.0) {
        return Err(Error::param("epsilon", format!("{eps} is not in (0, 1]")));
    }
    MatchingInstance::new(vec![1.0, eps], vec![vec![1.0, 1.0 / eps]])
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MatchResult {
    /// `(resource, agent)` pairs, or `(u, v)` edges in the graph case.
    pub pairs: Vec<(usize, usize)>,
    pub reward: f64,
}

/// Per-resource rationing at `γ = 1/2` followed by proportional requests.
#[derive(Debug, Clone)]
pub struct RationedMatchingPolicy {
    inst: MatchingInstance,
    /// `x[j][i]`.
    x: Vec<Vec<f64>>,
    /// `accept[j][i]`: probability the rationing bit of `(j, i)` is one.
    accept: Vec<Vec<f64>>,
}

impl RationedMatchingPolicy {
    pub fn new(sol: &LpSolution, inst: &MatchingInstance) -> Result<Self> {
        inst.validate()?;
        let (m, n) = (inst.m, inst.n);
        if sol.values.len() != m * n {
            return Err(Error::param("x", format!("expected {} values, got {}", m * n, sol.values.len())));
        }
        let x: Vec<Vec<f64>> = (0..m)
            .map(|j| (0..n).map(|i| sol.values[matching_index(n, j, i)].max(0.0)).collect())
            .collect();
        for i in 0..n {
            let s: f64 = (0..m).map(|j| x[j][i]).sum();
            if s > inst.p[i] + 1e-9 {
                return Err(Error::param("x", format!("agent {i} asks for {s} > p = {}", inst.p[i])));
            }
        }
        let mut accept = vec![vec![0.0; n]; m];
        for j in 0..m {
            let mut used = 0.0;
            for i in 0..n {
                let avail = 1.0 - RESOURCE_GAMMA * used;
                if avail <= 0.0 {
                    return Err(Error::param("x", format!("resource {j} is over-demanded")));
                }
                accept[j][i] = (RESOURCE_GAMMA / avail).min(1.0);
                used += x[j][i];
            }
            if used > 1.0 + 1e-9 {
                return Err(Error::param("x", format!("resource {j} has total demand {used} > 1")));
            }
        }
        Ok(Self {
            inst: inst.clone(),
            x,
            accept,
        })
    }

    pub fn run<R: Rng + ?Sized>(&self, rng: &mut R) -> MatchResult {
        let (m, n) = (self.inst.m, self.inst.n);
        let bits: Vec<Vec<bool>> = (0..m)
            .map(|j| (0..n).map(|i| rng.random::<f64>() < self.accept[j][i]).collect())
            .collect();
        let mut taken = vec![false; m];
        let mut out = MatchResult {
            pairs: Vec::new(),
            reward: 0.0,
        };
        for i in 0..n {
            let p = self.inst.p[i];
            if p <= 0.0 || rng.random::<f64>() >= p {
                continue;
            }
            let u: f64 = rng.random();
            let mut acc = 0.0;
            let pick = (0..m).find(|&j| {
                acc += (self.x[j][i] / p).min(1.0);
                u < acc
            });
            if let Some(j) = pick {
                if !taken[j] && bits[j][i] {
                    taken[j] = true;
                    out.pairs.push((j, i));
                    out.reward += self.inst.w[j][i];
                }
            }
        }
        out
    }

    /// Exact `P[(j, i) matched]` as `[j][i]`, and the expected reward, by a
    /// forward pass over the set of taken resources.
    pub fn exact_marginals(&self) -> Result<(Vec<Vec<f64>>, f64)> {
        let (m, n) = (self.inst.m, self.inst.n);
        if m > 20 {
            return Err(Error::TooLarge {
                what: "resources for exact tracking",
                size: m,
                limit: 20,
            });
        }
        let mut states: BTreeMap<u32, f64> = BTreeMap::new();
        states.insert(0, 1.0);
        let mut marg = vec![vec![0.0; n]; m];
        for i in 0..n {
            let mut next: BTreeMap<u32, f64> = BTreeMap::new();
            for (&mask, &prob) in &states {
                let mut stay = 1.0;
                for j in 0..m {
                    if mask & (1 << j) != 0 {
                        continue;
                    }
                    let q = self.x[j][i] * self.accept[j][i];
                    if q > 0.0 {
                        marg[j][i] += prob * q;
                        *next.entry(mask | (1 << j)).or_insert(0.0) += prob * q;
                        stay -= q;
                    }
                }
                *next.entry(mask).or_insert(0.0) += prob * stay;
            }
            states = next;
        }
        let reward = (0..m)
            .map(|j| (0..n).map(|i| marg[j][i] * self.inst.w[j][i]).sum::<f64>())
            .sum();
        Ok((marg, reward))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ProbeEdge {
    pub u: usize,
    pub v: usize,
    pub w: f64,
    pub p: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GraphProbingInstance {
    pub num_vertices: usize,
    pub edges: Vec<ProbeEdge>,
    /// Probe limit per vertex; `None` is unlimited.
    pub patience: Vec<Option<usize>>,
}

impl GraphProbingInstance {
    pub fn new(num_vertices: usize, edges: Vec<ProbeEdge>, patience: Vec<Option<usize>>) -> Result<Self> {
        let inst = Self {
            num_vertices,
            edges,
            patience,
        };
        inst.validate()?;
        Ok(inst)
    }

    pub fn validate(&self) -> Result<()> {
        if self.patience.len() != self.num_vertices {
            return Err(Error::instance(format!(
                "patience has {} entries for {} vertices",
                self.patience.len(),
                self.num_vertices
            )));
        }
        if self.patience.contains(&Some(0)) {
            return Err(Error::instance("patience must be at least 1"));
        }
        for (k, e) in self.edges.iter().enumerate() {
            if e.u >= self.num_vertices || e.v >= self.num_vertices {
                return Err(Error::instance(format!("edge {k} has an endpoint out of range")));
            }
            if e.u == e.v {
                return Err(Error::instance(format!("edge {k} is a self-loop")));
            }
            if !(e.w.is_finite() && e.w >= 0.0) {
                return Err(Error::instance(format!("edge {k} weight {} must be finite and ≥ 0", e.w)));
            }
            if !(0.0..=1.0).contains(&e.p) {
                return Err(Error::instance(format!("edge {k} probability {} is not in [0, 1]", e.p)));
            }
        }
        Ok(())
    }

    /// Edge indices incident to each vertex.
    pub fn incidence(&self) -> Vec<Vec<usize>> {
        let mut inc = vec![Vec::new(); self.num_vertices];
        for (k, e) in self.edges.iter().enumerate() {
            inc[e.u].push(k);
            inc[e.v].push(k);
        }
        inc
    }

    /// Parses whitespace-separated lines `u v w p`. `patience v T` sets a
    /// vertex patience; `#` starts a comment. Vertices are numbered from 0.
    pub fn parse_edge_list(text: &str) -> Result<Self> {
        let mut edges = Vec::new();
        let mut limits: Vec<(usize, usize)> = Vec::new();
        let mut num_vertices = 0;
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap().trim();
            if line.is_empty() {
                continue;
            }
            let fields: Vec<&str> = line.split_whitespace().collect();
            let bad = |what: &str| Error::instance(format!("line {}: {what}: {raw:?}", lineno + 1));
            if fields[0] == "patience" {
                if fields.len() != 3 {
                    return Err(bad("expected `patience v T`"));
                }
                let v: usize = fields[1].parse().map_err(|_| bad("bad vertex"))?;
                let t: usize = fields[2].parse().map_err(|_| bad("bad patience"))?;
                num_vertices = num_vertices.max(v + 1);
                limits.push((v, t));
                continue;
            }
            if fields.len() != 4 {
                return Err(bad("expected `u v w p`"));
            }
            let u: usize = fields[0].parse().map_err(|_| bad("bad vertex"))?;
            let v: usize = fields[1].parse().map_err(|_| bad("bad vertex"))?;
            let w: f64 = fields[2].parse().map_err(|_| bad("bad weight"))?;
            let p: f64 = fields[3].parse().map_err(|_| bad("bad probability"))?;
            num_vertices = num_vertices.max(u + 1).max(v + 1);
            edges.push(ProbeEdge { u, v, w, p });
        }
        let mut patience = vec![None; num_vertices];
        for (v, t) in limits {
            patience[v] = Some(t);
        }
        Self::new(num_vertices, edges, patience)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SubsetCut {
    pub vertex: usize,
    pub edges: Vec<usize>,
    pub rhs: f64,
    /// Violation at the solution that triggered the cut.
    pub violation: f64,
}

#[derive(Debug, Clone)]
pub struct GraphProbingLp {
    pub lp: LinearProgram,
    /// Optimal solution after all cuts (present when cuts were requested).
    pub solution: Option<LpSolution>,
    pub cuts: Vec<SubsetCut>,
    pub rounds: usize,
}

fn base_graph_lp(inst: &GraphProbingInstance) -> LinearProgram {
    let ne = inst.edges.len();
    let mut lp = LinearProgram::new(ne);
    lp.objective = inst.edges.iter().map(|e| e.w * e.p).collect();
    lp.bounds = vec![Bound::UNIT; ne];
    lp.names = Some(inst.edges.iter().map(|e| format!("y{}_{}", e.u, e.v)).collect());
    for (v, inc) in inst.incidence().iter().enumerate() {
        if inc.is_empty() {
            continue;
        }
        if let Some(t) = inst.patience[v] {
            let row: Vec<(usize, f64)> = inc.iter().map(|&k| (k, 1.0)).collect();
            lp.add_sparse(&row, Relation::Le, t as f64);
        }
        let row: Vec<(usize, f64)> = inc.iter().map(|&k| (k, inst.edges[k].p)).collect();
        lp.add_sparse(&row, Relation::Le, 1.0);
    }
    lp
}

/// Most violated subset constraint at `v`, searching all subsets of size ≥ 2.
fn most_violated_subset(inst: &GraphProbingInstance, inc: &[usize], y: &[f64]) -> Option<(Vec<usize>, f64, f64)> {
    let d = inc.len();
    if d < 2 {
        return None;
    }
    let size = 1usize << d;
    let mut load = vec![0.0; size];
    let mut miss = vec![1.0; size];
    let mut best: Option<(usize, f64)> = None;
    for mask in 1..size {
        let low = mask.trailing_zeros() as usize;
        let rest = mask & (mask - 1);
        let e = &inst.edges[inc[low]];
        load[mask] = load[rest] + e.p * y[inc[low]];
        miss[mask] = miss[rest] * (1.0 - e.p);
        if rest == 0 {
            continue;
        }
        let violation = load[mask] - (1.0 - miss[mask]);
        if violation > CUT_TOL && best.is_none_or(|(_, b)| violation > b) {
            best = Some((mask, violation));
        }
    }
    best.map(|(mask, violation)| {
        let edges: Vec<usize> = (0..d).filter(|b| mask & (1 << b) != 0).map(|b| inc[b]).collect();
        (edges, 1.0 - miss[mask], violation)
    })
}

/// Graph probing LP. With `with_subset_cuts`, solves and repeatedly adds the
/// most violated `Σ_{e∈S} p_e y_e ≤ 1 − Π_{e∈S}(1 − p_e)` per vertex.
pub fn build_graph_probing_lp(inst: &GraphProbingInstance, with_subset_cuts: bool) -> Result<GraphProbingLp> {
    inst.validate()?;
    let mut lp = base_graph_lp(inst);
    if !with_subset_cuts {
        return Ok(GraphProbingLp {
            lp,
            solution: None,
            cuts: Vec::new(),
            rounds: 0,
        });
    }
    let inc = inst.incidence();
    if let Some(d) = inc.iter().map(Vec::len).max().filter(|&d| d > CUT_DEGREE_LIMIT) {
        return Err(Error::TooLarge {
            what: "vertex degree for subset-cut separation (solve without cuts)",
            size: d,
            limit: CUT_DEGREE_LIMIT,
        });
    }
    let mut cuts = Vec::new();
    let mut rounds = 0;
    loop {
        let sol = solve_lp(&lp)?.into_optimal()?;
        rounds += 1;
        let mut added = false;
        for (v, edges) in inc.iter().enumerate() {
            if let Some((subset, rhs, violation)) = most_violated_subset(inst, edges, &sol.values) {
                let row: Vec<(usize, f64)> = subset.iter().map(|&k| (k, inst.edges[k].p)).collect();
                lp.add_sparse(&row, Relation::Le, rhs);
                cuts.push(SubsetCut {
                    vertex: v,
                    edges: subset,
                    rhs,
                    violation,
                });
                added = true;
            }
        }
        if !added {
            return Ok(GraphProbingLp {
                lp,
                solution: Some(sol),
                cuts,
                rounds,
            });
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ProbeRun {
    pub matching: MatchResult,
    /// Probed edge indices in probe order.
    pub probed: Vec<usize>,
}

/// Probes edges in a uniformly random order, each feasible edge with
/// probability `y_e`, and commits to every probed edge that exists.
pub fn run_probe_commit<R: Rng + ?Sized>(y: &[f64], inst: &GraphProbingInstance, rng: &mut R) -> ProbeRun {
    let mut order: Vec<usize> = (0..inst.edges.len()).collect();
    order.shuffle(rng);
    let mut left: Vec<Option<usize>> = inst.patience.clone();
    let mut matched = vec![false; inst.num_vertices];
    let mut probed = Vec::new();
    let mut out = MatchResult {
        pairs: Vec::new(),
        reward: 0.0,
    };
    for k in order {
        let e = inst.edges[k];
        let feasible = !matched[e.u] && !matched[e.v] && left[e.u] != Some(0) && left[e.v] != Some(0);
        if !feasible || rng.random::<f64>() >= y[k] {
            continue;
        }
        probed.push(k);
        for end in [e.u, e.v] {
            if let Some(t) = left[end].as_mut() {
                *t -= 1;
            }
        }
        if rng.random::<f64>() < e.p {
            matched[e.u] = true;
            matched[e.v] = true;
            out.pairs.push((e.u, e.v));
            out.reward += e.w;
        }
    }
    ProbeRun { matching: out, probed }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sim::replication_rng;

    #[test]
    fn tight_example_lp() {
        let inst = tight_example(0.01).unwrap();
        let sol = solve_lp(&build_matching_lp(&inst, false)).unwrap();
        assert!(sol.objective_value >= 1.99 - 1e-9);
        let tight = solve_lp(&build_matching_lp(&inst, true)).unwrap();
        assert!(tight.objective_value <= sol.objective_value + 1e-9);
        let one = tight_example(1.0).unwrap();
        assert_eq!(one.w, vec![vec![1.0, 1.0]]);
        assert!(tight_example(0.0).is_err());
    }

    #[test]
    fn single_pair_lp() {
        let inst = MatchingInstance::new(vec![1.0], vec![vec![1.0]]).unwrap();
        assert!((solve_lp(&build_matching_lp(&inst, false)).unwrap().objective_value - 1.0).abs() < 1e-12);
    }

    #[test]
    fn exact_marginals_are_half() {
        let inst = MatchingInstance::new(
            vec![0.9, 0.5, 0.7],
            vec![vec![1.0, 2.0, 0.5], vec![0.3, 1.0, 2.0]],
        )
        .unwrap();
        let sol = solve_lp(&build_matching_lp(&inst, false)).unwrap();
        let policy = RationedMatchingPolicy::new(&sol, &inst).unwrap();
        let (marg, reward) = policy.exact_marginals().unwrap();
        for j in 0..2 {
            for i in 0..3 {
                assert!((marg[j][i] - sol.values[matching_index(3, j, i)] / 2.0).abs() < 1e-12);
            }
        }
        assert!((reward - sol.objective_value / 2.0).abs() < 1e-12);
    }

    #[test]
    fn absent_agents_match_nothing() {
        let inst = MatchingInstance::new(vec![0.0, 0.0], vec![vec![1.0, 1.0]]).unwrap();
        let sol = solve_lp(&build_matching_lp(&inst, false)).unwrap();
        let policy = RationedMatchingPolicy::new(&sol, &inst).unwrap();
        let mut rng = replication_rng(1, 0);
        for _ in 0..100 {
            assert!(policy.run(&mut rng).pairs.is_empty());
        }
    }

    #[test]
    fn single_edge_probe_lp() {
        let inst = GraphProbingInstance::new(2, vec![ProbeEdge { u: 0, v: 1, w: 3.0, p: 0.5 }], vec![Some(1), Some(1)]).unwrap();
        let out = build_graph_probing_lp(&inst, true).unwrap();
        let sol = out.solution.unwrap();
        assert!((sol.values[0] - 1.0).abs() < 1e-12);
        assert!((sol.objective_value - 1.5).abs() < 1e-12);
        assert!(out.cuts.is_empty());
    }

    #[test]
    fn star_with_certain_edges_needs_no_cut() {
        let edges = vec![ProbeEdge { u: 0, v: 1, w: 1.0, p: 1.0 }, ProbeEdge { u: 0, v: 2, w: 1.0, p: 1.0 }];
        let inst = GraphProbingInstance::new(3, edges, vec![None; 3]).unwrap();
        let out = build_graph_probing_lp(&inst, true).unwrap();
        assert!(out.cuts.is_empty());
        assert!((out.solution.unwrap().objective_value - 1.0).abs() < 1e-12);
    }

    #[test]
    fn cuts_bind_on_uncertain_star() {
        let edges: Vec<ProbeEdge> = (1..=3).map(|v| ProbeEdge { u: 0, v, w: 1.0, p: 0.5 }).collect();
        let inst = GraphProbingInstance::new(4, edges, vec![None; 4]).unwrap();
        let plain = solve_lp(&build_graph_probing_lp(&inst, false).unwrap().lp).unwrap();
        let cut = build_graph_probing_lp(&inst, true).unwrap();
        let sol = cut.solution.unwrap();
        assert!((plain.objective_value - 1.0).abs() < 1e-12);
        // Never probing more than the chance some edge exists: 1 - 1/8.
        assert!((sol.objective_value - 0.875).abs() < 1e-9);
        assert!(!cut.cuts.is_empty());
        assert!(cut.cuts.iter().all(|c| c.violation > CUT_TOL));
        assert!(cut.lp.max_violation(&sol.values) < 1e-9);
    }

    #[test]
    fn certain_graph_gives_maximal_matching() {
        let edges = vec![
            ProbeEdge { u: 0, v: 1, w: 1.0, p: 1.0 },
            ProbeEdge { u: 1, v: 2, w: 1.0, p: 1.0 },
            ProbeEdge { u: 2, v: 3, w: 1.0, p: 1.0 },
        ];
        let inst = GraphProbingInstance::new(4, edges, vec![None; 4]).unwrap();
        let mut rng = replication_rng(4, 0);
        for _ in 0..50 {
            let out = run_probe_commit(&[1.0; 3], &inst, &mut rng).matching;
            let mut covered = [false; 4];
            for &(u, v) in &out.pairs {
                assert!(!covered[u] && !covered[v]);
                covered[u] = true;
                covered[v] = true;
            }
            for e in &inst.edges {
                assert!(covered[e.u] || covered[e.v]);
            }
        }
    }

    #[test]
    fn edge_list_parsing() {
        let text = "# triangle\n0 1 1.5 0.5\n1 2 2 0.25 # comment\npatience 2 1\n\n0 2 1 1\n";
        let inst = GraphProbingInstance::parse_edge_list(text).unwrap();
        assert_eq!(inst.num_vertices, 3);
        assert_eq!(inst.edges.len(), 3);
        assert_eq!(inst.edges[1], ProbeEdge { u: 1, v: 2, w: 2.0, p: 0.25 });
        assert_eq!(inst.patience, vec![None, None, Some(1)]);
        assert!(GraphProbingInstance::parse_edge_list("0 0 1 1").is_err());
        assert!(GraphProbingInstance::parse_edge_list("0 1 x 1").is_err());
        assert!(GraphProbingInstance::parse_edge_list("0 1 1").is_err());
    }

    #[test]
    fn degree_guard() {
        let edges: Vec<ProbeEdge> = (1..=21).map(|v| ProbeEdge { u: 0, v, w: 1.0, p: 0.5 }).collect();
        let inst = GraphProbingInstance::new(22, edges, vec![None; 22]).unwrap();
        assert!(build_graph_probing_lp(&inst, false).is_ok());
        assert!(matches!(build_graph_probing_lp(&inst, true), Err(Error::TooLarge { .. })));
    }
}
