//! Uniform dispatch over the four solvers.

use std::fmt;
use std::str::FromStr;

use fuzzycg_core::stationary::{gauss_seidel, jacobi};
use fuzzycg_core::{fcg, svd, FlopCounter, LinearSystem, SolveReport, SolverOptions, StationaryOptions};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, clap::ValueEnum)]
pub enum Solver {
    /// Fuzzy-weighted Polak-Ribière conjugate gradient
    Fcg,
    Jacobi,
    /// Gauss-Seidel
    Gs,
    /// SVD pseudoinverse
    Svd,
}

impl Solver {
    pub const ALL: [Solver; 4] = [Solver::Fcg, Solver::Jacobi, Solver::Gs, Solver::Svd];

    pub fn name(self) -> &'static str {
        match self {
            Solver::Fcg => "fcg",
            Solver::Jacobi => "jacobi",
            Solver::Gs => "gs",
            Solver::Svd => "svd",
        }
    }
}

impl fmt::Display for Solver {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Solver {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Solver::ALL
            .into_iter()
            .find(|v| v.name() == s)
            .ok_or_else(|| Error::Usage(format!("unknown solver '{s}' (expected fcg, jacobi, gs or svd)")))
    }
}

#[derive(Debug, Clone, Default)]
pub struct RunOptions {
    pub fcg: SolverOptions,
    pub stationary: StationaryOptions,
}

/// Runs `solver` on `sys`. The SVD path is direct: it reports zero
/// iterations, no FLOP count and `converged = true`.
pub fn run(sys: &LinearSystem, solver: Solver, opts: &RunOptions) -> Result<SolveReport> {
    let report = match solver {
        Solver::Fcg => fcg::solve(sys, &opts.fcg)?,
        Solver::Jacobi => jacobi(sys, &opts.stationary)?,
        Solver::Gs => gauss_seidel(sys, &opts.stationary)?,
        Solver::Svd => {
            let solution = svd::pinv_solve(sys);
            let residual_norm = sys.residual(&solution)?.norm2();
            SolveReport {
                initial_cost: 0.5 * sys.b().norm2().powi(2),
                solution,
                iterations: 0,
                restarts: 0,
                residual_norm,
                flops: FlopCounter::new(),
                iteration_flops: FlopCounter::new(),
                converged: true,
                trace: Vec::new(),
            }
        }
    };
    Ok(report)
}
