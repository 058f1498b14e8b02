//! Jacobi and Gauss-Seidel sweeps for square systems.

use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::fcg::cost;
use crate::linalg::{FlopCounter, LinearSystem, Vector};
use crate::report::{IterationRecord, SolveReport};

/// Growth of the step norm, relative to the first step, treated as divergence.
const DIVERGENCE_FACTOR: f64 = 1e6;

#[derive(Debug, Clone, PartialEq)]
pub struct StationaryOptions {
    /// Stop when the max-norm of the iterate change (or of the residual)
    /// drops below this.
    pub tolerance: f64,
    pub max_iterations: usize,
    pub x0: Option<Vector>,
}

impl Default for StationaryOptions {
    fn default() -> Self {
        Self {
            tolerance: 5e-5,
            max_iterations: 1000,
            x0: None,
        }
    }
}

impl StationaryOptions {
    pub fn with_tolerance(mut self, tolerance: f64) -> Self {
        self.tolerance = tolerance;
        self
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Sweep {
    Jacobi,
    GaussSeidel,
}

/// `x_i <- (b_i - sum_{j != i} a_ij x_j) / a_ii` using only the previous iterate.
pub fn jacobi(sys: &LinearSystem, opts: &StationaryOptions) -> Result<SolveReport> {
    run(sys, opts, Sweep::Jacobi)
}

/// Like [`jacobi`], but each component update sees the components already
/// updated in the same sweep.
pub fn gauss_seidel(sys: &LinearSystem, opts: &StationaryOptions) -> Result<SolveReport> {
    run(sys, opts, Sweep::GaussSeidel)
}

fn run(sys: &LinearSystem, opts: &StationaryOptions, kind: Sweep) -> Result<SolveReport> {
    let a = sys.a();
    let n = a.rows();
    if a.cols() != n {
        return Err(Error::NotSquare {
            rows: n,
            cols: a.cols(),
        });
    }
    if let Some(index) = (0..n).find(|&i| a.get(i, i) == 0.0) {
        return Err(Error::ZeroDiagonal { index });
    }
    if !(opts.tolerance.is_finite() && opts.tolerance > 0.0) {
        return Err(Error::InvalidParameter("tolerance must be positive"));
    }
    if opts.max_iterations == 0 {
        return Err(Error::InvalidParameter("max_iterations must be positive"));
    }
    let mut x = match &opts.x0 {
        Some(x0) if x0.len() != n => {
            return Err(Error::DimensionMismatch {
                op: "initial guess",
                expected: n,
                found: x0.len(),
            })
        }
        Some(x0) => x0.as_slice().to_vec(),
        None => alloc::vec![0.0; n],
    };
    let b = sys.b().as_slice();
    let initial_cost = cost(sys, &Vector::from_raw(x.clone()))?;
    let mut flops = FlopCounter::new();
    let mut trace = Vec::new();
    let mut first_step = None;
    let mut converged = false;
    let mut prev = x.clone();

    while trace.len() < opts.max_iterations {
        prev.copy_from_slice(&x);
        for i in 0..n {
            let src = match kind {
                Sweep::Jacobi => &prev,
                Sweep::GaussSeidel => &x,
            };
            let off: f64 = a
                .row(i)
                .iter()
                .zip(src.iter())
                .enumerate()
                .filter(|&(j, _)| j != i)
                .map(|(_, (aij, xj))| aij * xj)
                .sum();
            x[i] = (b[i] - off) / a.get(i, i);
        }
        flops.mul(n * n);
        flops.add(n * (n - 1));

        if !x.iter().all(|v| v.is_finite()) {
            x.copy_from_slice(&prev);
            break;
        }
        let (step_inf, step2) = prev.iter().zip(&x).fold((0.0f64, 0.0), |(m, s), (p, q)| {
            let d = q - p;
            (m.max(d.abs()), s + d * d)
        });
        let xv = Vector::from_raw(x.clone());
        let residual_inf = sys.residual(&xv)?.norm_inf();
        trace.push(IterationRecord {
            k: trace.len() + 1,
            cost: cost(sys, &xv)?,
            d_norm: libm::sqrt(step2),
            alpha: 1.0,
            beta: 0.0,
            v: 1.0,
        });
        if step_inf < opts.tolerance || residual_inf < opts.tolerance {
            converged = true;
            break;
        }
        let first = *first_step.get_or_insert(step_inf);
        if step_inf > DIVERGENCE_FACTOR * first {
            break;
        }
    }

    let solution = Vector::from_raw(x);
    let residual_norm = sys.residual(&solution)?.norm2();
    Ok(SolveReport {
        iterations: trace.len(),
        solution,
        restarts: 0,
        residual_norm,
        initial_cost,
        flops,
        iteration_flops: flops,
        converged,
        trace,
    })
}
