//! Solver output shared by every method.

use alloc::vec::Vec;

use crate::linalg::{FlopCounter, Vector};

/// State after one iteration.
///
/// For the conjugate gradient solver, `cost` is `E` at the new iterate,
/// `d_norm` the 2-norm of the next search direction, and `alpha`, `beta`,
/// `v` the step length, Polak-Ribière coefficient and fuzzy weight used.
/// Stationary methods report the 2-norm of the iterate change as `d_norm`
/// and the neutral values `alpha = 1`, `beta = 0`, `v = 1`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IterationRecord {
    /// 1-based iteration number.
    pub k: usize,
    pub cost: f64,
    pub d_norm: f64,
    pub alpha: f64,
    pub beta: f64,
    pub v: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SolveReport {
    pub solution: Vector,
    pub iterations: usize,
    pub restarts: usize,
    /// `||A x - b||_2` at the returned solution.
    pub residual_norm: f64,
    /// `E` at the starting point.
    pub initial_cost: f64,
    /// All counted operations, including setup.
    pub flops: FlopCounter,
    /// Operations spent inside iterations only.
    pub iteration_flops: FlopCounter,
    pub converged: bool,
    pub trace: Vec<IterationRecord>,
}

impl SolveReport {
    pub fn final_cost(&self) -> f64 {
        self.trace.last().map_or(self.initial_cost, |r| r.cost)
    }

    /// Mean operations per iteration, or `None` for zero iterations.
    pub fn flops_per_iteration(&self) -> Option<f64> {
        (self.iterations > 0).then(|| self.iteration_flops.total() as f64 / self.iterations as f64)
    }
}
