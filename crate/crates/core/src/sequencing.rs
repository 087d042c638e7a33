//! Sequential offering under an offer budget, and interviewing applicants with
//! hidden weights (ProbeTop-k).
//!
//! Offering: the LP picks offer probabilities `y`; a basic optimum has at most
//! two fractional coordinates, which are rounded with perfect negative
//! correlation, and offers go out in decreasing weight until positions fill.
//!
//! Interviewing: the concave interview/hire program is solved exactly for
//! discrete weight laws as an LP, then each applicant becomes an offering
//! candidate that "accepts" when its realized weight lands in a top quantile.

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::numerics::{
    count_fractional, solve_lp, Bound, LinearProgram, LpSolution, Relation, FRACTIONAL_TOL,
};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct HiringInstance {
    /// Positions.
    pub k: usize,
    /// Offer budget.
    #[serde(rename = "T")]
    pub budget: usize,
    pub w: Vec<f64>,
    pub p: Vec<f64>,
}

impl HiringInstance {
    pub fn new(k: usize, budget: usize, w: Vec<f64>, p: Vec<f64>) -> Result<Self> {
        let inst = Self { k, budget, w, p };
        inst.validate()?;
        Ok(inst)
    }

    pub fn validate(&self) -> Result<()> {
        if self.k == 0 || self.budget == 0 {
            return Err(Error::instance("k and T must be at least 1"));
        }
        if self.w.is_empty() || self.w.len() != self.p.len() {
            return Err(Error::instance(format!(
                "w and p must be non-empty and equally long ({} vs {})",
                self.w.len(),
                self.p.len()
            )));
        }
        if let Some(i) = self.w.iter().position(|v| !(v.is_finite() && *v >= 0.0)) {
            return Err(Error::instance(format!("w[{i}] = {} must be finite and ≥ 0", self.w[i])));
        }
        if let Some(i) = self.p.iter().position(|v| !(0.0..=1.0).contains(v)) {
            return Err(Error::instance(format!("p[{i}] = {} is not in [0, 1]", self.p[i])));
        }
        Ok(())
    }

    pub fn n(&self) -> usize {
        self.w.len()
    }

    /// Candidate indices by decreasing weight, ties by index.
    pub fn weight_order(&self) -> Vec<usize> {
        let mut order: Vec<usize> = (0..self.n()).collect();
        order.sort_by(|&a, &b| self.w[b].total_cmp(&self.w[a]).then(a.cmp(&b)));
        order
    }
}

/// `max Σ w p y` s.t. `Σ y ≤ T`, `Σ p y ≤ k`, `0 ≤ y ≤ 1`.
pub fn build_hiring_lp(inst: &HiringInstance) -> LinearProgram {
    let n = inst.n();
    let mut lp = LinearProgram::new(n);
    lp.objective = inst.w.iter().zip(&inst.p).map(|(w, p)| w * p).collect();
    lp.bounds = vec![Bound::UNIT; n];
    lp.add_constraint(vec![1.0; n], Relation::Le, inst.budget as f64);
    lp.add_constraint(inst.p.clone(), Relation::Le, inst.k as f64);
    lp.names = Some((0..n).map(|i| format!("y{i}")).collect());
    lp
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OfferSet {
    pub selected: Vec<bool>,
    /// Selected candidates by decreasing weight.
    pub order: Vec<usize>,
}

impl OfferSet {
    fn from_selection(inst: &HiringInstance, selected: Vec<bool>) -> Self {
        let order = inst.weight_order().into_iter().filter(|&i| selected[i]).collect();
        Self { selected, order }
    }

    pub fn len(&self) -> usize {
        self.order.len()
    }

    pub fn is_empty(&self) -> bool {
        self.order.is_empty()
    }
}

/// All offer sets the rounding can produce, with their probabilities.
///
/// At most two outcomes: integral coordinates are kept, a single fractional
/// coordinate is an independent coin, and two fractional coordinates (which
/// sum to one at a basic optimum) are rounded so exactly one goes up.
pub fn offer_set_distribution(inst: &HiringInstance, y: &[f64]) -> Result<Vec<(f64, OfferSet)>> {
    inst.validate()?;
    if y.len() != inst.n() {
        return Err(Error::param("y", format!("length {} does not match {} candidates", y.len(), inst.n())));
    }
    let sol = LpSolution {
        values: y.to_vec(),
        objective_value: 0.0,
        is_basic: true,
        status: crate::numerics::LpStatus::Optimal,
    };
    let frac = count_fractional(&sol, &vec![Bound::UNIT; y.len()], FRACTIONAL_TOL);
    let base: Vec<bool> = y
        .iter()
        .enumerate()
        .map(|(i, &v)| !frac.contains(&i) && v >= 1.0 - FRACTIONAL_TOL)
        .collect();
    let with = |extra: &[usize]| {
        let mut sel = base.clone();
        for &i in extra {
            sel[i] = true;
        }
        OfferSet::from_selection(inst, sel)
    };
    let outcomes = match frac.as_slice() {
        [] => vec![(1.0, with(&[]))],
        &[a] => vec![(y[a], with(&[a])), (1.0 - y[a], with(&[]))],
        &[a, b] => {
            let s = y[a] + y[b];
            if (s - 1.0).abs() > FRACTIONAL_TOL {
                return Err(Error::param(
                    "y",
                    format!("two fractional coordinates must sum to 1, got {s}"),
                ));
            }
            vec![(y[a] / s, with(&[a])), (y[b] / s, with(&[b]))]
        }
        _ => {
            return Err(Error::NotBasic {
                count: frac.len(),
                limit: 2,
            })
        }
    };
    for (_, set) in &outcomes {
        if set.len() > inst.budget {
            return Err(Error::param(
                "y",
                format!("rounded offer set has {} offers, budget is {}", set.len(), inst.budget),
            ));
        }
    }
    Ok(outcomes)
}

/// Draws an offer set whose marginals equal `y`.
pub fn round_offer_set<R: Rng + ?Sized>(inst: &HiringInstance, y: &[f64], rng: &mut R) -> Result<OfferSet> {
    let outcomes = offer_set_distribution(inst, y)?;
    Ok(sample_outcome(outcomes, rng))
}

fn sample_outcome<R: Rng + ?Sized>(mut outcomes: Vec<(f64, OfferSet)>, rng: &mut R) -> OfferSet {
    if outcomes.len() == 1 {
        return outcomes.pop().unwrap().1;
    }
    let u: f64 = rng.random();
    if u < outcomes[0].0 {
        outcomes.swap_remove(0).1
    } else {
        outcomes.swap_remove(1).1
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct HireOutcome {
    pub hired: Vec<usize>,
    pub offers_made: usize,
    pub total_weight: f64,
}

/// Makes offers in the stored order until `k` candidates accept.
pub fn run_offer_policy<R: Rng + ?Sized>(offers: &OfferSet, inst: &HiringInstance, rng: &mut R) -> HireOutcome {
    let mut out = HireOutcome {
        hired: Vec::new(),
        offers_made: 0,
        total_weight: 0.0,
    };
    for &i in &offers.order {
        if out.hired.len() >= inst.k {
            break;
        }
        out.offers_made += 1;
        if rng.random::<f64>() < inst.p[i] {
            out.hired.push(i);
            out.total_weight += inst.w[i];
        }
    }
    out
}

/// Expected hired weight of a fixed offer set, by tracking the number of
/// filled positions.
pub fn expected_offer_value(offers: &OfferSet, inst: &HiringInstance) -> f64 {
    let k = inst.k;
    let mut filled = vec![0.0; k + 1];
    filled[0] = 1.0;
    let mut value = 0.0;
    for &i in &offers.order {
        let p = inst.p[i];
        let open: f64 = filled[..k].iter().sum();
        value += inst.w[i] * p * open;
        let mut next = vec![0.0; k + 1];
        next[k] = filled[k];
        for c in 0..k {
            next[c] += filled[c] * (1.0 - p);
            next[c + 1] += filled[c] * p;
        }
        filled = next;
    }
    value
}

/// Prefix products for the negative-correlation check, in weight order.
///
/// Entry `j` is `(E[Π_{i≤j} (1 - P_i Y_i)], Π_{i≤j} (1 - p_i y_i))`, both exact.
pub fn no_acceptance_prefixes(inst: &HiringInstance, y: &[f64]) -> Result<Vec<(f64, f64)>> {
    let outcomes = offer_set_distribution(inst, y)?;
    let order = inst.weight_order();
    let mut rounded = vec![1.0; outcomes.len()];
    let mut independent = 1.0;
    let mut out = Vec::with_capacity(order.len());
    for &i in &order {
        for (acc, (_, set)) in rounded.iter_mut().zip(&outcomes) {
            if set.selected[i] {
                *acc *= 1.0 - inst.p[i];
            }
        }
        independent *= 1.0 - inst.p[i] * y[i];
        let lhs: f64 = rounded.iter().zip(&outcomes).map(|(acc, (prob, _))| acc * prob).sum();
        out.push((lhs, independent));
    }
    Ok(out)
}

/// Solves the offering LP and samples offer sets from its basic optimum.
#[derive(Debug, Clone)]
pub struct OfferSetPolicy {
    inst: HiringInstance,
    solution: LpSolution,
    outcomes: Vec<(f64, OfferSet)>,
}

impl OfferSetPolicy {
    pub fn new(inst: &HiringInstance) -> Result<Self> {
        inst.validate()?;
        let solution = solve_lp(&build_hiring_lp(inst))?.into_optimal()?;
        let outcomes = offer_set_distribution(inst, &solution.values)?;
        Ok(Self {
            inst: inst.clone(),
            solution,
            outcomes,
        })
    }

    pub fn lp_value(&self) -> f64 {
        self.solution.objective_value
    }

    pub fn offer_probabilities(&self) -> &[f64] {
        &self.solution.values
    }

    /// The derandomized variant: every offer set with its probability.
    pub fn outcomes(&self) -> &[(f64, OfferSet)] {
        &self.outcomes
    }

    /// Exact expected hired weight.
    pub fn expected_value(&self) -> f64 {
        self.outcomes
            .iter()
            .map(|(p, set)| p * expected_offer_value(set, &self.inst))
            .sum()
    }

    /// Best single offer set, for the derandomized policy.
    pub fn best_deterministic(&self) -> (&OfferSet, f64) {
        self.outcomes
            .iter()
            .map(|(_, s)| (s, expected_offer_value(s, &self.inst)))
            .max_by(|a, b| a.1.total_cmp(&b.1))
            .expect("at least one outcome")
    }

    pub fn sample_offers<R: Rng + ?Sized>(&self, rng: &mut R) -> OfferSet {
        sample_outcome(self.outcomes.clone(), rng)
    }

    pub fn run<R: Rng + ?Sized>(&self, rng: &mut R) -> (OfferSet, HireOutcome) {
        let offers = self.sample_offers(rng);
        let outcome = run_offer_policy(&offers, &self.inst, rng);
        (offers, outcome)
    }
}

/// Finite-support law with strictly increasing support.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DiscreteDistribution {
    pub support: Vec<f64>,
    pub mass: Vec<f64>,
}

impl DiscreteDistribution {
    pub fn new(support: Vec<f64>, mass: Vec<f64>) -> Result<Self> {
        let d = Self { support, mass };
        d.validate()?;
        Ok(d)
    }

    /// Sorts by value and merges duplicate atoms.
    pub fn from_atoms(atoms: &[(f64, f64)]) -> Result<Self> {
        let mut atoms: Vec<(f64, f64)> = atoms.iter().copied().filter(|a| a.1 > 0.0).collect();
        atoms.sort_by(|a, b| a.0.total_cmp(&b.0));
        let mut support: Vec<f64> = Vec::new();
        let mut mass: Vec<f64> = Vec::new();
        for (v, m) in atoms {
            if support.last() == Some(&v) {
                *mass.last_mut().unwrap() += m;
            } else {
                support.push(v);
                mass.push(m);
            }
        }
        Self::new(support, mass)
    }

    pub fn validate(&self) -> Result<()> {
        if self.support.is_empty() || self.support.len() != self.mass.len() {
            return Err(Error::instance("distribution needs equally long, non-empty support and mass"));
        }
        if self.support.iter().any(|v| !v.is_finite()) {
            return Err(Error::instance("distribution support must be finite"));
        }
        if self.support.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::instance("distribution support must be strictly increasing"));
        }
        if self.mass.iter().any(|&m| !(m > 0.0)) {
            return Err(Error::instance("distribution masses must be positive"));
        }
        let total: f64 = self.mass.iter().sum();
        if (total - 1.0).abs() > 1e-12 {
            return Err(Error::instance(format!("distribution masses sum to {total}, not 1")));
        }
        Ok(())
    }

    pub fn mean(&self) -> f64 {
        self.support.iter().zip(&self.mass).map(|(v, m)| v * m).sum()
    }

    pub fn max(&self) -> f64 {
        *self.support.last().unwrap()
    }

    /// Atoms from the largest value down.
    fn descending(&self) -> impl Iterator<Item = (f64, f64)> + '_ {
        self.support.iter().copied().zip(self.mass.iter().copied()).rev()
    }

    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> f64 {
        let u: f64 = rng.random();
        let mut acc = 0.0;
        for (v, m) in self.support.iter().zip(&self.mass) {
            acc += m;
            if u < acc {
                return *v;
            }
        }
        self.max()
    }

    /// `∫_{1-p}^1 F^{-1}(q) dq`: total value of the top-`p` probability mass.
    pub fn top_mass_value(&self, p: f64) -> f64 {
        let mut left = p;
        let mut value = 0.0;
        for (v, m) in self.descending() {
            if left <= 0.0 {
                break;
            }
            let take = m.min(left);
            value += take * v;
            left -= take;
        }
        value
    }

    /// Linear pieces `(intercept, slope)` of `p ↦ top_mass_value(p)`, whose
    /// pointwise minimum reproduces it on `[0, 1]`. Breakpoints sit at the
    /// cumulative top masses, slopes are the support values.
    pub fn top_mass_pieces(&self) -> Vec<(f64, f64)> {
        let mut pieces = Vec::with_capacity(self.support.len());
        let (mut cum_mass, mut cum_value) = (0.0, 0.0);
        for (v, m) in self.descending() {
            pieces.push((cum_value - v * cum_mass, v));
            cum_mass += m;
            cum_value += v * m;
        }
        pieces
    }

    /// Hire rule accepting exactly the top-`p` mass: values above `cutoff`
    /// always, the `cutoff` atom with probability `boundary_prob`.
    pub fn top_quantile_rule(&self, p: f64) -> HireRule {
        let mut above = 0.0;
        for (v, m) in self.descending() {
            if above + m >= p - 1e-15 {
                let frac = ((p - above) / m).clamp(0.0, 1.0);
                return HireRule {
                    cutoff: v,
                    boundary_prob: frac,
                };
            }
            above += m;
        }
        HireRule {
            cutoff: self.support[0],
            boundary_prob: 1.0,
        }
    }
}

/// Average value of the top-`p` probability mass, splitting the boundary atom.
pub fn top_p_mean(dist: &DiscreteDistribution, p: f64) -> Result<f64> {
    if !(p > 0.0) || p > 1.0 + 1e-12 {
        return Err(Error::param("p", format!("{p} is not in (0, 1]")));
    }
    let p = p.min(1.0);
    Ok(dist.top_mass_value(p) / p)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct HireRule {
    pub cutoff: f64,
    pub boundary_prob: f64,
}

impl HireRule {
    pub fn accepts<R: Rng + ?Sized>(&self, value: f64, rng: &mut R) -> bool {
        if value > self.cutoff {
            true
        } else if value == self.cutoff {
            self.boundary_prob >= 1.0 || rng.random::<f64>() < self.boundary_prob
        } else {
            false
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ProbeInstance {
    pub k: usize,
    #[serde(rename = "T")]
    pub budget: usize,
    pub dists: Vec<DiscreteDistribution>,
}

impl ProbeInstance {
    pub fn new(k: usize, budget: usize, dists: Vec<DiscreteDistribution>) -> Result<Self> {
        let inst = Self { k, budget, dists };
        inst.validate()?;
        Ok(inst)
    }

    pub fn validate(&self) -> Result<()> {
        if self.k == 0 || self.budget == 0 {
            return Err(Error::instance("k and T must be at least 1"));
        }
        if self.dists.is_empty() {
            return Err(Error::instance("at least one applicant is required"));
        }
        for (i, d) in self.dists.iter().enumerate() {
            d.validate()
                .map_err(|e| Error::instance(format!("dists[{i}]: {e}")))?;
            if d.support[0] < 0.0 {
                return Err(Error::instance(format!("dists[{i}] has a negative support value")));
            }
        }
        Ok(())
    }

    pub fn n(&self) -> usize {
        self.dists.len()
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ProbePlan {
    /// Interview probabilities.
    pub z: Vec<f64>,
    /// Hire probabilities.
    pub x: Vec<f64>,
    pub objective_value: f64,
}

/// Interview/hire LP with real-valued budgets. Variables per applicant are
/// `(z, x, t)` at `3i, 3i+1, 3i+2`; `t` is bounded by the perspective
/// `a_r z + v_r x` of every linear piece of the top-mass value.
pub fn build_probe_lp(dists: &[DiscreteDistribution], interview_budget: f64, hire_budget: f64) -> LinearProgram {
    let n = dists.len();
    let mut lp = LinearProgram::new(3 * n);
    let mut names = Vec::with_capacity(3 * n);
    for i in 0..n {
        lp.objective[3 * i + 2] = 1.0;
        lp.bounds[3 * i] = Bound::UNIT;
        lp.bounds[3 * i + 1] = Bound::UNIT;
        names.extend([format!("z{i}"), format!("x{i}"), format!("t{i}")]);
    }
    lp.names = Some(names);
    let zs: Vec<(usize, f64)> = (0..n).map(|i| (3 * i, 1.0)).collect();
    lp.add_sparse(&zs, Relation::Le, interview_budget);
    let xs: Vec<(usize, f64)> = (0..n).map(|i| (3 * i + 1, 1.0)).collect();
    lp.add_sparse(&xs, Relation::Le, hire_budget);
    for (i, d) in dists.iter().enumerate() {
        lp.add_sparse(&[(3 * i + 1, 1.0), (3 * i, -1.0)], Relation::Le, 0.0);
        for (a, v) in d.top_mass_pieces() {
            lp.add_sparse(&[(3 * i + 2, 1.0), (3 * i, -a), (3 * i + 1, -v)], Relation::Le, 0.0);
        }
    }
    lp
}

pub fn solve_probe_lp(dists: &[DiscreteDistribution], interview_budget: f64, hire_budget: f64) -> Result<ProbePlan> {
    let sol = solve_lp(&build_probe_lp(dists, interview_budget, hire_budget))?.into_optimal()?;
    let n = dists.len();
    Ok(ProbePlan {
        z: (0..n).map(|i| sol.values[3 * i]).collect(),
        x: (0..n).map(|i| sol.values[3 * i + 1].min(sol.values[3 * i])).collect(),
        objective_value: sol.objective_value,
    })
}

/// Exact optimum of the interview/hire program for discrete weight laws.
pub fn solve_probetopk(inst: &ProbeInstance) -> Result<ProbePlan> {
    inst.validate()?;
    solve_probe_lp(&inst.dists, inst.budget as f64, inst.k as f64)
}

/// Value of the interview/hire objective `Σ z_i · top_mass_value_i(x_i / z_i)`.
pub fn probe_objective(dists: &[DiscreteDistribution], z: &[f64], x: &[f64]) -> f64 {
    dists
        .iter()
        .zip(z.iter().zip(x))
        .filter(|(_, (&z, _))| z > 0.0)
        .map(|(d, (&z, &x))| z * d.top_mass_value((x / z).min(1.0)))
        .sum()
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ProbeReduction {
    pub hiring: HiringInstance,
    /// Original applicant index of each candidate in `hiring`.
    pub applicants: Vec<usize>,
    pub rules: Vec<HireRule>,
    /// Interview probabilities of the retained applicants, a feasible offer
    /// vector for `hiring`.
    pub z: Vec<f64>,
}

/// Turns interviewing into offering: applicant `i` becomes a candidate with
/// acceptance probability `x_i / z_i` and weight equal to the mean of its
/// top-`x_i / z_i` mass. Applicants never interviewed are dropped.
pub fn reduce_probetopk_to_offering(plan: &ProbePlan, inst: &ProbeInstance) -> Result<ProbeReduction> {
    inst.validate()?;
    if plan.z.len() != inst.n() || plan.x.len() != inst.n() {
        return Err(Error::param("plan", "plan length does not match the instance"));
    }
    let (mut w, mut p, mut applicants, mut rules, mut z) = (vec![], vec![], vec![], vec![], vec![]);
    for (i, d) in inst.dists.iter().enumerate() {
        let zi = plan.z[i];
        if zi <= 1e-12 {
            continue;
        }
        let pi = (plan.x[i] / zi).clamp(0.0, 1.0);
        let wi = if pi > 0.0 { top_p_mean(d, pi)? } else { d.max() };
        applicants.push(i);
        rules.push(if pi > 0.0 {
            d.top_quantile_rule(pi)
        } else {
            HireRule {
                cutoff: f64::INFINITY,
                boundary_prob: 0.0,
            }
        });
        w.push(wi);
        p.push(pi);
        z.push(zi);
    }
    if applicants.is_empty() {
        return Err(Error::param("plan", "no applicant is ever interviewed"));
    }
    Ok(ProbeReduction {
        hiring: HiringInstance::new(inst.k, inst.budget, w, p)?,
        applicants,
        rules,
        z,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct InterviewOutcome {
    pub interviewed: Vec<usize>,
    pub hired: Vec<usize>,
    pub total_value: f64,
}

/// End-to-end interviewing policy: fixed interview order from the rounded
/// offer set of the reduced instance, immediate hire decisions by quantile.
#[derive(Debug, Clone)]
pub struct ProbeTopkPolicy {
    inst: ProbeInstance,
    plan: ProbePlan,
    reduction: ProbeReduction,
    offers: OfferSetPolicy,
}

impl ProbeTopkPolicy {
    pub fn new(inst: &ProbeInstance) -> Result<Self> {
        let plan = solve_probetopk(inst)?;
        let reduction = reduce_probetopk_to_offering(&plan, inst)?;
        let offers = OfferSetPolicy::new(&reduction.hiring)?;
        Ok(Self {
            inst: inst.clone(),
            plan,
            reduction,
            offers,
        })
    }

    pub fn plan(&self) -> &ProbePlan {
        &self.plan
    }

    pub fn reduction(&self) -> &ProbeReduction {
        &self.reduction
    }

    pub fn offer_policy(&self) -> &OfferSetPolicy {
        &self.offers
    }

    /// Exact expected hired value of the policy.
    pub fn expected_value(&self) -> f64 {
        self.offers.expected_value()
    }

    pub fn run<R: Rng + ?Sized>(&self, rng: &mut R) -> InterviewOutcome {
        let offers = self.offers.sample_offers(rng);
        let mut out = InterviewOutcome {
            interviewed: Vec::new(),
            hired: Vec::new(),
            total_value: 0.0,
        };
        for &c in &offers.order {
            if out.hired.len() >= self.inst.k {
                break;
            }
            let applicant = self.reduction.applicants[c];
            out.interviewed.push(applicant);
            let value = self.inst.dists[applicant].sample(rng);
            if self.reduction.rules[c].accepts(value, rng) {
                out.hired.push(applicant);
                out.total_value += value;
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn two_point() -> DiscreteDistribution {
        DiscreteDistribution::new(vec![0.5, 1.0], vec![0.5, 0.5]).unwrap()
    }

    #[test]
    fn symmetric_instance_lp_is_all_ones() {
        let n = 20;
        let k = 2;
        let inst = HiringInstance::new(k, n, vec![1.0; n], vec![k as f64 / n as f64; n]).unwrap();
        let sol = solve_lp(&build_hiring_lp(&inst)).unwrap();
        assert!((sol.objective_value - k as f64).abs() < 1e-12);
        assert!(sol.values.iter().all(|&y| (y - 1.0).abs() < 1e-12));
    }

    #[test]
    fn single_candidate_lp() {
        let inst = HiringInstance::new(1, 1, vec![5.0], vec![0.4]).unwrap();
        let sol = solve_lp(&build_hiring_lp(&inst)).unwrap();
        assert_eq!(sol.values, vec![1.0]);
        assert!((sol.objective_value - 2.0).abs() < 1e-12);
    }

    #[test]
    fn budget_one_picks_heaviest() {
        let inst = HiringInstance::new(1, 1, vec![3.0, 2.0, 1.0], vec![1.0; 3]).unwrap();
        let sol = solve_lp(&build_hiring_lp(&inst)).unwrap();
        assert_eq!(sol.values, vec![1.0, 0.0, 0.0]);
        assert!((sol.objective_value - 3.0).abs() < 1e-12);
    }

    #[test]
    fn rounding_integral_is_deterministic() {
        let inst = HiringInstance::new(1, 2, vec![1.0, 3.0, 2.0], vec![0.5; 3]).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        let set = round_offer_set(&inst, &[1.0, 0.0, 1.0], &mut rng).unwrap();
        assert_eq!(set.selected, vec![true, false, true]);
        assert_eq!(set.order, vec![2, 0]);
    }

    #[test]
    fn rounding_pair_is_perfectly_anticorrelated() {
        let inst = HiringInstance::new(1, 2, vec![1.0, 3.0, 2.0], vec![0.5; 3]).unwrap();
        let dist = offer_set_distribution(&inst, &[1.0, 0.3, 0.7]).unwrap();
        assert_eq!(dist.len(), 2);
        assert!((dist[0].0 - 0.3).abs() < 1e-15 && dist[0].1.selected == vec![true, true, false]);
        assert!((dist[1].0 - 0.7).abs() < 1e-15 && dist[1].1.selected == vec![true, false, true]);
    }

    #[test]
    fn rounding_single_fractional_is_a_coin() {
        let inst = HiringInstance::new(1, 2, vec![1.0, 1.0], vec![0.5; 2]).unwrap();
        let dist = offer_set_distribution(&inst, &[0.5, 1.0]).unwrap();
        assert_eq!(dist.len(), 2);
        assert_eq!(dist[0].0, 0.5);
        assert!(dist[0].1.selected[0] && !dist[1].1.selected[0]);
    }

    #[test]
    fn rounding_rejects_non_basic() {
        let inst = HiringInstance::new(1, 3, vec![1.0; 3], vec![0.5; 3]).unwrap();
        assert_eq!(
            offer_set_distribution(&inst, &[0.5, 0.5, 0.5]).unwrap_err(),
            Error::NotBasic { count: 3, limit: 2 }
        );
    }

    #[test]
    fn two_offer_expectation() {
        let inst = HiringInstance::new(1, 2, vec![3.0, 2.0], vec![0.5, 1.0]).unwrap();
        let set = OfferSet::from_selection(&inst, vec![true, true]);
        assert!((expected_offer_value(&set, &inst) - 2.5).abs() < 1e-15);
        let empty = OfferSet::from_selection(&inst, vec![false, false]);
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        assert_eq!(run_offer_policy(&empty, &inst, &mut rng).total_weight, 0.0);
    }

    #[test]
    fn expected_value_multi_position() {
        // k = 2, three sure acceptances: only the two heaviest are hired.
        let inst = HiringInstance::new(2, 3, vec![1.0, 5.0, 3.0], vec![1.0; 3]).unwrap();
        let set = OfferSet::from_selection(&inst, vec![true; 3]);
        assert!((expected_offer_value(&set, &inst) - 8.0).abs() < 1e-15);
    }

    #[test]
    fn top_p_mean_two_point() {
        let d = two_point();
        for p in [0.1, 0.3, 0.5] {
            assert!((top_p_mean(&d, p).unwrap() - 1.0).abs() < 1e-15);
        }
        for p in [0.5, 0.6, 0.8, 1.0] {
            assert!((top_p_mean(&d, p).unwrap() - (0.5 + 0.25 / p)).abs() < 1e-15);
        }
        assert!((top_p_mean(&d, 1.0).unwrap() - d.mean()).abs() < 1e-15);
        assert!(top_p_mean(&d, 0.0).is_err());
        assert!(top_p_mean(&d, -0.1).is_err());
    }

    #[test]
    fn top_p_mean_uniform_grid() {
        let m = 1000;
        let mut mass = vec![1.0 / m as f64; m];
        mass[m - 1] = 1.0 - mass[..m - 1].iter().sum::<f64>();
        let d = DiscreteDistribution::new((0..m).map(|i| (i as f64 + 0.5) / m as f64).collect(), mass).unwrap();
        assert!((top_p_mean(&d, 0.4).unwrap() - 0.8).abs() < 1e-3);
    }

    #[test]
    fn pieces_reproduce_top_mass_value() {
        let d = DiscreteDistribution::from_atoms(&[(0.0, 0.2), (2.0, 0.3), (1.0, 0.1), (5.0, 0.4)]).unwrap();
        let pieces = d.top_mass_pieces();
        for s in 0..=100 {
            let p = s as f64 / 100.0;
            let by_pieces = pieces.iter().map(|(a, v)| a + v * p).fold(f64::INFINITY, f64::min);
            assert!((by_pieces - d.top_mass_value(p)).abs() < 1e-12, "p = {p}");
        }
    }

    #[test]
    fn probe_single_applicant() {
        let inst = ProbeInstance::new(1, 1, vec![two_point()]).unwrap();
        let plan = solve_probetopk(&inst).unwrap();
        assert!((plan.z[0] - 1.0).abs() < 1e-12 && (plan.x[0] - 1.0).abs() < 1e-12);
        assert!((plan.objective_value - 0.75).abs() < 1e-12);
    }

    #[test]
    fn probe_half_hire_budget() {
        let plan = solve_probe_lp(&[two_point()], 1.0, 0.5).unwrap();
        assert!((plan.x[0] - 0.5).abs() < 1e-12);
        assert!((plan.z[0] - 1.0).abs() < 1e-12);
        assert!((plan.objective_value - 0.5).abs() < 1e-12);
    }

    #[test]
    fn quantile_rule_and_reduction() {
        let d = two_point();
        let rule = d.top_quantile_rule(0.5);
        assert_eq!(rule.cutoff, 1.0);
        assert!((rule.boundary_prob - 1.0).abs() < 1e-15);
        let rule = d.top_quantile_rule(0.75);
        assert_eq!(rule.cutoff, 0.5);
        assert!((rule.boundary_prob - 0.5).abs() < 1e-15);

        let inst = ProbeInstance::new(1, 1, vec![d.clone(), d]).unwrap();
        let plan = ProbePlan {
            z: vec![1.0, 0.0],
            x: vec![0.5, 0.0],
            objective_value: 0.5,
        };
        let red = reduce_probetopk_to_offering(&plan, &inst).unwrap();
        assert_eq!(red.applicants, vec![0]);
        assert!((red.hiring.p[0] - 0.5).abs() < 1e-15);
        assert!((red.hiring.w[0] - 1.0).abs() < 1e-15);

        let full = ProbePlan {
            z: vec![1.0, 1.0],
            x: vec![1.0, 1.0],
            objective_value: 1.5,
        };
        let red = reduce_probetopk_to_offering(&full, &inst).unwrap();
        assert_eq!(red.hiring.p, vec![1.0, 1.0]);
        assert_eq!(red.hiring.w, vec![0.75, 0.75]);
    }

    #[test]
    fn distribution_validation() {
        assert!(DiscreteDistribution::new(vec![1.0, 0.5], vec![0.5, 0.5]).is_err());
        assert!(DiscreteDistribution::new(vec![0.5, 1.0], vec![0.5, 0.4]).is_err());
        assert!(DiscreteDistribution::new(vec![0.5], vec![1.0]).is_ok());
        let merged = DiscreteDistribution::from_atoms(&[(1.0, 0.25), (1.0, 0.25), (0.0, 0.5)]).unwrap();
        assert_eq!(merged.support, vec![0.0, 1.0]);
    }
}
