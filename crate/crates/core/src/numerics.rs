//! Dense linear programs and a two-phase tableau simplex.
//!
//! The solver always maximizes and returns a vertex (basic) optimum, which the
//! offer-set rounding relies on. Pivoting follows Bland's rule, so runs are
//! deterministic and cannot cycle.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Pivot and feasibility tolerance.
pub const PIVOT_TOL: f64 = 1e-9;

/// Default tolerance for deciding that a coordinate is fractional.
pub const FRACTIONAL_TOL: f64 = 1e-7;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Relation {
    Le,
    Ge,
    Eq,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Constraint {
    pub coefficients: Vec<f64>,
    pub relation: Relation,
    pub rhs: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Bound {
    pub lo: f64,
    pub hi: f64,
}

impl Bound {
    pub const NONNEGATIVE: Bound = Bound {
        lo: 0.0,
        hi: f64::INFINITY,
    };
    pub const UNIT: Bound = Bound { lo: 0.0, hi: 1.0 };
}

/// `max c·x` subject to row constraints and per-variable boxes `0 ≤ lo ≤ x ≤ hi`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LinearProgram {
    pub objective: Vec<f64>,
    pub constraints: Vec<Constraint>,
    pub bounds: Vec<Bound>,
    pub names: Option<Vec<String>>,
}

impl LinearProgram {
    /// An LP over `num_vars` nonnegative variables with a zero objective.
    pub fn new(num_vars: usize) -> Self {
        Self {
            objective: vec![0.0; num_vars],
            constraints: Vec::new(),
            bounds: vec![Bound::NONNEGATIVE; num_vars],
            names: None,
        }
    }

    pub fn num_vars(&self) -> usize {
        self.objective.len()
    }

    pub fn add_constraint(&mut self, coefficients: Vec<f64>, relation: Relation, rhs: f64) {
        self.constraints.push(Constraint {
            coefficients,
            relation,
            rhs,
        });
    }

    /// Adds a constraint given as sparse `(variable, coefficient)` terms.
    pub fn add_sparse(&mut self, terms: &[(usize, f64)], relation: Relation, rhs: f64) {
        let mut row = vec![0.0; self.num_vars()];
        for &(j, a) in terms {
            row[j] += a;
        }
        self.add_constraint(row, relation, rhs);
    }

    pub fn validate(&self) -> Result<()> {
        let n = self.num_vars();
        if self.bounds.len() != n {
            return Err(Error::MalformedLp(format!(
                "{} bounds for {} variables",
                self.bounds.len(),
                n
            )));
        }
        if let Some(names) = &self.names {
            if names.len() != n {
                return Err(Error::MalformedLp(format!(
                    "{} names for {} variables",
                    names.len(),
                    n
                )));
            }
        }
        if self.objective.iter().any(|c| !c.is_finite()) {
            return Err(Error::MalformedLp("non-finite objective coefficient".into()));
        }
        for (r, row) in self.constraints.iter().enumerate() {
            if row.coefficients.len() != n {
                return Err(Error::MalformedLp(format!(
                    "row {r} has {} coefficients, expected {n}",
                    row.coefficients.len()
                )));
            }
            if !row.rhs.is_finite() || row.coefficients.iter().any(|a| !a.is_finite()) {
                return Err(Error::MalformedLp(format!("row {r} has a non-finite entry")));
            }
        }
        for (j, b) in self.bounds.iter().enumerate() {
            if !(b.lo >= 0.0) || !b.lo.is_finite() || b.hi.is_nan() || b.lo > b.hi {
                return Err(Error::MalformedLp(format!(
                    "variable {j} has invalid bounds [{}, {}]",
                    b.lo, b.hi
                )));
            }
        }
        Ok(())
    }

    /// Largest violation of any row or bound at `x` (0 when feasible).
    pub fn max_violation(&self, x: &[f64]) -> f64 {
        let mut worst: f64 = 0.0;
        for row in &self.constraints {
            let lhs: f64 = row.coefficients.iter().zip(x).map(|(a, v)| a * v).sum();
            let v = match row.relation {
                Relation::Le => lhs - row.rhs,
                Relation::Ge => row.rhs - lhs,
                Relation::Eq => (lhs - row.rhs).abs(),
            };
            worst = worst.max(v);
        }
        for (b, &v) in self.bounds.iter().zip(x) {
            worst = worst.max(b.lo - v).max(v - b.hi);
        }
        worst
    }

    pub fn objective_at(&self, x: &[f64]) -> f64 {
        self.objective.iter().zip(x).map(|(c, v)| c * v).sum()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum LpStatus {
    Optimal,
    Infeasible,
    Unbounded,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LpSolution {
    pub values: Vec<f64>,
    pub objective_value: f64,
    pub is_basic: bool,
    pub status: LpStatus,
}

impl LpSolution {
    fn failed(status: LpStatus) -> Self {
        Self {
            values: Vec::new(),
            objective_value: f64::NAN,
            is_basic: false,
            status,
        }
    }

    pub fn is_optimal(&self) -> bool {
        self.status == LpStatus::Optimal
    }

    /// Turns a non-optimal status into the matching error.
    pub fn into_optimal(self) -> Result<Self> {
        match self.status {
            LpStatus::Optimal => Ok(self),
            LpStatus::Infeasible => Err(Error::Infeasible),
            LpStatus::Unbounded => Err(Error::Unbounded),
        }
    }
}

/// Indices whose value lies strictly inside `(lo + tol, hi - tol)`.
pub fn count_fractional(sol: &LpSolution, bounds: &[Bound], tol: f64) -> Vec<usize> {
    sol.values
        .iter()
        .zip(bounds)
        .enumerate()
        .filter(|(_, (&v, b))| v > b.lo + tol && v < b.hi - tol)
        .map(|(j, _)| j)
        .collect()
}

/// Solves `lp`, returning a basic optimal solution when one exists.
///
/// Malformed input is reported through `Err`; infeasibility and unboundedness
/// are reported through [`LpSolution::status`].
pub fn solve_lp(lp: &LinearProgram) -> Result<LpSolution> {
    lp.validate()?;
    let n = lp.num_vars();

    // Shift x = lo + x' so every structural variable is bounded below by 0,
    // then turn finite upper bounds into explicit rows.
    let mut rows: Vec<(Vec<f64>, Relation, f64)> = Vec::with_capacity(lp.constraints.len() + n);
    for c in &lp.constraints {
        let shift: f64 = c
            .coefficients
            .iter()
            .zip(&lp.bounds)
            .map(|(a, b)| a * b.lo)
            .sum();
        rows.push((c.coefficients.clone(), c.relation, c.rhs - shift));
    }
    for (j, b) in lp.bounds.iter().enumerate() {
        if b.hi.is_finite() {
            let mut row = vec![0.0; n];
            row[j] = 1.0;
            rows.push((row, Relation::Le, b.hi - b.lo));
        }
    }

    let mut tableau = Tableau::build(n, rows);
    if !tableau.phase_one() {
        return Ok(LpSolution::failed(LpStatus::Infeasible));
    }
    if !tableau.phase_two(&lp.objective) {
        return Ok(LpSolution::failed(LpStatus::Unbounded));
    }

    let shifted = tableau.primal(n);
    let values: Vec<f64> = shifted
        .iter()
        .zip(&lp.bounds)
        .map(|(&v, b)| {
            let x = b.lo + v;
            if (x - b.lo).abs() <= 1e-12 {
                b.lo
            } else if b.hi.is_finite() && (x - b.hi).abs() <= 1e-12 {
                b.hi
            } else {
                x.clamp(b.lo, b.hi)
            }
        })
        .collect();
    let objective_value = lp.objective_at(&values);
    Ok(LpSolution {
        values,
        objective_value,
        is_basic: true,
        status: LpStatus::Optimal,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum ColumnKind {
    Structural,
    Slack,
    Artificial,
}

struct Tableau {
    /// Constraint rows, last entry is the right-hand side.
    rows: Vec<Vec<f64>>,
    /// Reduced costs for maximization; last entry is minus the objective value.
    cost: Vec<f64>,
    basis: Vec<usize>,
    kinds: Vec<ColumnKind>,
}

impl Tableau {
    fn build(num_structural: usize, rows: Vec<(Vec<f64>, Relation, f64)>) -> Self {
        let m = rows.len();
        let mut normalized = Vec::with_capacity(m);
        let (mut n_slack, mut n_art) = (0, 0);
        for (mut a, mut rel, mut b) in rows {
            if b < 0.0 {
                a.iter_mut().for_each(|v| *v = -*v);
                b = -b;
                rel = match rel {
                    Relation::Le => Relation::Ge,
                    Relation::Ge => Relation::Le,
                    Relation::Eq => Relation::Eq,
                };
            }
            match rel {
                Relation::Le => n_slack += 1,
                Relation::Ge => {
                    n_slack += 1;
                    n_art += 1;
                }
                Relation::Eq => n_art += 1,
            }
            normalized.push((a, rel, b));
        }

        let width = num_structural + n_slack + n_art;
        let mut kinds = vec![ColumnKind::Structural; num_structural];
        kinds.extend(std::iter::repeat_n(ColumnKind::Slack, n_slack));
        kinds.extend(std::iter::repeat_n(ColumnKind::Artificial, n_art));

        let mut table = Vec::with_capacity(m);
        let mut basis = Vec::with_capacity(m);
        let (mut next_slack, mut next_art) = (num_structural, num_structural + n_slack);
        for (a, rel, b) in normalized {
            let mut row = vec![0.0; width + 1];
            row[..num_structural].copy_from_slice(&a);
            row[width] = b;
            match rel {
                Relation::Le => {
                    row[next_slack] = 1.0;
                    basis.push(next_slack);
                    next_slack += 1;
                }
                Relation::Ge => {
                    row[next_slack] = -1.0;
                    next_slack += 1;
                    row[next_art] = 1.0;
                    basis.push(next_art);
                    next_art += 1;
                }
                Relation::Eq => {
                    row[next_art] = 1.0;
                    basis.push(next_art);
                    next_art += 1;
                }
            }
            table.push(row);
        }

        Self {
            rows: table,
            cost: vec![0.0; width + 1],
            basis,
            kinds,
        }
    }

    fn width(&self) -> usize {
        self.kinds.len()
    }

    fn set_objective(&mut self, c: impl Fn(usize) -> f64) {
        let w = self.width();
        for j in 0..w {
            self.cost[j] = c(j);
        }
        self.cost[w] = 0.0;
        for (r, &bj) in self.basis.iter().enumerate() {
            let cb = c(bj);
            if cb != 0.0 {
                for (cj, aj) in self.cost.iter_mut().zip(&self.rows[r]) {
                    *cj -= cb * aj;
                }
            }
        }
    }

    /// Minimizes the sum of artificials; false when the rows are inconsistent.
    fn phase_one(&mut self) -> bool {
        if !self.kinds.contains(&ColumnKind::Artificial) {
            return true;
        }
        let kinds = self.kinds.clone();
        self.set_objective(|j| {
            if kinds[j] == ColumnKind::Artificial {
                -1.0
            } else {
                0.0
            }
        });
        // Phase one is bounded below by zero, so it never reports unbounded.
        self.iterate(true);

        let w = self.width();
        let scale = 1.0 + self.rows.iter().map(|r| r[w].abs()).fold(0.0, f64::max);
        let infeasibility: f64 = self
            .basis
            .iter()
            .zip(&self.rows)
            .filter(|(&b, _)| self.kinds[b] == ColumnKind::Artificial)
            .map(|(_, row)| row[w])
            .sum();
        if infeasibility > PIVOT_TOL * scale {
            return false;
        }

        // Drive zero-valued artificials out of the basis; drop redundant rows.
        let mut r = 0;
        while r < self.rows.len() {
            if self.kinds[self.basis[r]] != ColumnKind::Artificial {
                r += 1;
                continue;
            }
            let entering = (0..w)
                .find(|&j| self.kinds[j] != ColumnKind::Artificial && self.rows[r][j].abs() > PIVOT_TOL);
            match entering {
                Some(j) => {
                    self.pivot(r, j);
                    r += 1;
                }
                None => {
                    self.rows.remove(r);
                    self.basis.remove(r);
                }
            }
        }
        true
    }

    fn phase_two(&mut self, objective: &[f64]) -> bool {
        let n = objective.len();
        self.set_objective(|j| if j < n { objective[j] } else { 0.0 });
        self.iterate(false)
    }

    /// Bland's rule pivoting until optimal (true) or unbounded (false).
    fn iterate(&mut self, allow_artificial: bool) -> bool {
        let w = self.width();
        loop {
            let entering = (0..w).find(|&j| {
                (allow_artificial || self.kinds[j] != ColumnKind::Artificial) && self.cost[j] > PIVOT_TOL
            });
            let Some(col) = entering else {
                return true;
            };
            let mut leave: Option<(usize, f64)> = None;
            for (r, row) in self.rows.iter().enumerate() {
                let a = row[col];
                if a > PIVOT_TOL {
                    let ratio = row[w] / a;
                    leave = match leave {
                        None => Some((r, ratio)),
                        Some((best, best_ratio)) => {
                            if ratio < best_ratio - PIVOT_TOL
                                || (ratio <= best_ratio + PIVOT_TOL && self.basis[r] < self.basis[best])
                            {
                                Some((r, ratio))
                            } else {
                                Some((best, best_ratio))
                            }
                        }
                    };
                }
            }
            let Some((row, _)) = leave else {
                return false;
            };
            self.pivot(row, col);
        }
    }

    fn pivot(&mut self, r: usize, col: usize) {
        let p = self.rows[r][col];
        for v in self.rows[r].iter_mut() {
            *v /= p;
        }
        self.rows[r][col] = 1.0;
        let pivot_row = self.rows[r].clone();
        for (i, row) in self.rows.iter_mut().enumerate() {
            if i == r {
                continue;
            }
            let f = row[col];
            if f != 0.0 {
                for (v, pv) in row.iter_mut().zip(&pivot_row) {
                    *v -= f * pv;
                }
                row[col] = 0.0;
            }
        }
        let f = self.cost[col];
        if f != 0.0 {
            for (v, pv) in self.cost.iter_mut().zip(&pivot_row) {
                *v -= f * pv;
            }
            self.cost[col] = 0.0;
        }
        self.basis[r] = col;
    }

    fn primal(&self, n: usize) -> Vec<f64> {
        let w = self.width();
        let mut x = vec![0.0; n];
        for (r, &b) in self.basis.iter().enumerate() {
            if b < n {
                x[b] = self.rows[r][w].max(0.0);
            }
        }
        x
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn optimal(lp: &LinearProgram) -> LpSolution {
        let sol = solve_lp(lp).unwrap();
        assert_eq!(sol.status, LpStatus::Optimal);
        sol
    }

    #[test]
    fn single_variable_identity() {
        let mut lp = LinearProgram::new(1);
        lp.objective = vec![1.0];
        lp.bounds = vec![Bound::UNIT];
        lp.add_constraint(vec![1.0], Relation::Le, 1.0);
        let sol = optimal(&lp);
        assert_eq!(sol.values, vec![1.0]);
        assert_eq!(sol.objective_value, 1.0);
    }

    #[test]
    fn prophet_lp_two_agents() {
        // max x1 + 100 x2, x1 + x2 <= 1, x1 <= 1, x2 <= 0.01
        let mut lp = LinearProgram::new(2);
        lp.objective = vec![1.0, 100.0];
        lp.bounds = vec![Bound { lo: 0.0, hi: 1.0 }, Bound { lo: 0.0, hi: 0.01 }];
        lp.add_constraint(vec![1.0, 1.0], Relation::Le, 1.0);
        let sol = optimal(&lp);
        assert!((sol.values[0] - 0.99).abs() < 1e-12);
        assert!((sol.values[1] - 0.01).abs() < 1e-12);
        assert!((sol.objective_value - 1.99).abs() < 1e-12);
    }

    #[test]
    fn contradictory_rows_are_infeasible() {
        let mut lp = LinearProgram::new(1);
        lp.objective = vec![1.0];
        lp.add_constraint(vec![1.0], Relation::Le, -1.0);
        assert_eq!(solve_lp(&lp).unwrap().status, LpStatus::Infeasible);
    }

    #[test]
    fn unbounded_ray() {
        let mut lp = LinearProgram::new(2);
        lp.objective = vec![1.0, 0.0];
        lp.add_constraint(vec![-1.0, 1.0], Relation::Le, 1.0);
        assert_eq!(solve_lp(&lp).unwrap().status, LpStatus::Unbounded);
    }

    #[test]
    fn equalities_and_lower_bounds() {
        // max x + y, x + y = 3, x >= 1, y in [0.5, 1.5], x - y >= 0
        let mut lp = LinearProgram::new(2);
        lp.objective = vec![1.0, 1.0];
        lp.bounds = vec![Bound { lo: 1.0, hi: f64::INFINITY }, Bound { lo: 0.5, hi: 1.5 }];
        lp.add_constraint(vec![1.0, 1.0], Relation::Eq, 3.0);
        lp.add_constraint(vec![1.0, -1.0], Relation::Ge, 0.0);
        let sol = optimal(&lp);
        assert!((sol.objective_value - 3.0).abs() < 1e-12);
        assert!(lp.max_violation(&sol.values) < 1e-12);
    }

    #[test]
    fn redundant_equalities() {
        let mut lp = LinearProgram::new(2);
        lp.objective = vec![2.0, 1.0];
        lp.add_constraint(vec![1.0, 1.0], Relation::Eq, 1.0);
        lp.add_constraint(vec![2.0, 2.0], Relation::Eq, 2.0);
        let sol = optimal(&lp);
        assert!((sol.objective_value - 2.0).abs() < 1e-12);
    }

    #[test]
    fn degenerate_vertex_terminates() {
        // Classic Beale cycling example; Bland's rule must terminate.
        let mut lp = LinearProgram::new(4);
        lp.objective = vec![0.75, -150.0, 0.02, -6.0];
        lp.add_constraint(vec![0.25, -60.0, -0.04, 9.0], Relation::Le, 0.0);
        lp.add_constraint(vec![0.5, -90.0, -0.02, 3.0], Relation::Le, 0.0);
        lp.add_constraint(vec![0.0, 0.0, 1.0, 0.0], Relation::Le, 1.0);
        let sol = optimal(&lp);
        assert!((sol.objective_value - 0.05).abs() < 1e-9);
    }

    #[test]
    fn malformed_rows_rejected() {
        let mut lp = LinearProgram::new(2);
        lp.add_constraint(vec![1.0], Relation::Le, 1.0);
        assert!(matches!(solve_lp(&lp), Err(Error::MalformedLp(_))));
        let mut lp = LinearProgram::new(1);
        lp.bounds[0] = Bound { lo: 2.0, hi: 1.0 };
        assert!(solve_lp(&lp).is_err());
    }

    #[test]
    fn fractional_count() {
        let sol = LpSolution {
            values: vec![0.5, 0.5, 1.0],
            objective_value: 0.0,
            is_basic: true,
            status: LpStatus::Optimal,
        };
        assert_eq!(count_fractional(&sol, &[Bound::UNIT; 3], FRACTIONAL_TOL), vec![0, 1]);
        let integral = LpSolution {
            values: vec![0.0, 1.0],
            ..sol
        };
        assert!(count_fractional(&integral, &[Bound::UNIT; 2], FRACTIONAL_TOL).is_empty());
    }
}
