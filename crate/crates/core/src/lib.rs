//! Relax-and-round toolkit for sequential stochastic optimization.
//!
//! Each problem family comes with an LP relaxation builder, a rounding policy
//! that turns a fractional LP solution into an executable randomized online
//! policy, and an exact tracker of that policy's own state distribution:
//!
//! - [`rationing`]: k-unit rationing / online contention resolution, fixed and
//!   random arrival order.
//! - [`sequencing`]: sequential offering with an offer budget, and interviewing
//!   with hidden weights (ProbeTop-k) by reduction to offering.
//! - [`knapsack`]: correlated stochastic knapsack through a time-indexed LP.
//! - [`matching`]: online stochastic matching and stochastic probing in graphs.
//!
//! [`oracles`] holds brute-force optimal policies used as independent checks,
//! and [`sim`] is the seeded Monte Carlo engine shared by every executor.
//! Replications run on rayon when the `parallel` feature is enabled (default).

pub mod error;
pub mod knapsack;
pub mod matching;
pub mod numerics;
pub mod oracles;
pub mod rationing;
pub mod sequencing;
pub mod sim;

pub use error::{Error, Result};
pub use numerics::{solve_lp, LinearProgram, LpSolution, LpStatus, Relation};
pub use sim::{run_trials, Execution, SimulationReport, TrialRng};

/// `1 - e^{-k} k^k / k!`, the best uniform guarantee when k units meet an
/// expected demand of at most k.
///
/// Evaluated in log space so large `k` does not overflow.
pub fn correlation_gap_constant(k: usize) -> f64 {
    assert!(k >= 1, "k must be positive");
    let kf = k as f64;
    let log_term = -kf + kf * kf.ln() - statrs::function::gamma::ln_gamma(kf + 1.0);
    1.0 - log_term.exp()
}
