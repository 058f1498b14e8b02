//! Restarted Polak-Ribière conjugate gradient with a fuzzy step weight.
//!
//! Minimizes `E(x) = ||A x - b||^2 / 2` for any `m x n` system. Each
//! iteration moves along `x_{k+1} = x_k + alpha_k v_k d_k`, where `v_k` is a
//! scalar weight in `[v_min, 1]` supplied by a [`FuzzyWeightSource`] and the
//! working gradient is scaled by it, `g_k = grad E(x_k) / v_k`:
//!
//! ```text
//! g_0     = (A^T A x_0 - A^T b) / v_0,     d_0 = -g_0
//! alpha_k = -(v_k g_k^T d_k) / (v_k d_k^T A^T A d_k)
//! g_{k+1} = (A^T A x_{k+1} - A^T b) / v_{k+1}
//! beta_k  = g_{k+1}^T (g_{k+1} - g_k) / (g_k^T g_k)
//! d_{k+1} = -g_{k+1} + beta_k d_k
//! ```
//!
//! After `n` inner iterations the direction is reset to steepest descent
//! from the current iterate. The loop stops once
//! `v_k ||d_k||_2 < epsilon * max(1, ||A^T b||_2)`; measuring the weighted
//! direction keeps the test independent of the `1/v_k` scale of `g_k`.
//!
//! With `v == 1` this is CGNR; started from zero it converges to the
//! minimum-norm least-squares solution. `alpha_k` is the exact minimizer of
//! `E(x_k + alpha v_k d_k)`, so the cost never increases.

use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::linalg::{axpy, dot_slices, FlopCounter, LinearSystem, Vector};
use crate::report::{IterationRecord, SolveReport};
use crate::tsk::TskModel;

/// Where the scalar step weight `v_k` comes from.
#[derive(Debug, Clone, PartialEq)]
pub enum FuzzyWeightSource {
    /// A fixed weight (`Constant(1.0)` is plain CGNR).
    Constant(f64),
    /// The largest unnormalized rule activation of a model over the `n`
    /// unknowns, evaluated at the current iterate.
    MaxActivation(TskModel),
}

impl Default for FuzzyWeightSource {
    fn default() -> Self {
        FuzzyWeightSource::Constant(1.0)
    }
}

impl FuzzyWeightSource {
    /// Weight at `x`, clamped into `[v_min, 1]`.
    pub fn weight(&self, x: &Vector, v_min: f64) -> f64 {
        let raw = match self {
            FuzzyWeightSource::Constant(c) => *c,
            FuzzyWeightSource::MaxActivation(model) => model
                .rule_activations(x)
                .map(|a| a.iter().copied().fold(0.0, f64::max))
                .unwrap_or(0.0),
        };
        raw.clamp(v_min, 1.0)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SolverOptions {
    /// Relative stopping threshold on `||d_k||`.
    pub epsilon: f64,
    /// Iteration budget is `max_restarts * n`.
    pub max_restarts: usize,
    pub weight_source: FuzzyWeightSource,
    /// Floor of the fuzzy weight, in `(0, 1]`.
    pub v_min: f64,
    /// Starting point; zero when `None`.
    pub x0: Option<Vector>,
    /// Use `max(beta, 0)` instead of the raw coefficient.
    pub nonnegative_beta: bool,
}

impl Default for SolverOptions {
    fn default() -> Self {
        Self {
            epsilon: 1e-10,
            max_restarts: 100,
            weight_source: FuzzyWeightSource::default(),
            v_min: 1e-6,
            x0: None,
            nonnegative_beta: false,
        }
    }
}

impl SolverOptions {
    pub fn with_weight_source(mut self, source: FuzzyWeightSource) -> Self {
        self.weight_source = source;
        self
    }

    pub fn with_epsilon(mut self, epsilon: f64) -> Self {
        self.epsilon = epsilon;
        self
    }

    pub fn with_max_restarts(mut self, max_restarts: usize) -> Self {
        self.max_restarts = max_restarts;
        self
    }

    pub fn with_x0(mut self, x0: Vector) -> Self {
        self.x0 = Some(x0);
        self
    }

    pub fn validate(&self, sys: &LinearSystem) -> Result<()> {
        if !(self.epsilon.is_finite() && self.epsilon > 0.0) {
            return Err(Error::InvalidParameter("epsilon must be positive"));
        }
        if self.max_restarts == 0 {
            return Err(Error::InvalidParameter("max_restarts must be positive"));
        }
        if !(self.v_min > 0.0 && self.v_min <= 1.0) {
            return Err(Error::InvalidParameter("v_min must lie in (0, 1]"));
        }
        match &self.weight_source {
            FuzzyWeightSource::Constant(c) if !(c.is_finite() && *c > 0.0) => {
                return Err(Error::InvalidParameter("constant weight must be positive"));
            }
            FuzzyWeightSource::MaxActivation(model) if model.input_count() != sys.unknowns() => {
                return Err(Error::DimensionMismatch {
                    op: "fuzzy model inputs",
                    expected: sys.unknowns(),
                    found: model.input_count(),
                });
            }
            _ => {}
        }
        if let Some(x0) = &self.x0 {
            if x0.len() != sys.unknowns() {
                return Err(Error::DimensionMismatch {
                    op: "initial guess",
                    expected: sys.unknowns(),
                    found: x0.len(),
                });
            }
        }
        Ok(())
    }
}

/// `E(x) = ||A x - b||^2 / 2`
pub fn cost(sys: &LinearSystem, x: &Vector) -> Result<f64> {
    let r = sys.residual(x)?;
    Ok(0.5 * dot_slices(r.as_slice(), r.as_slice(), &mut FlopCounter::new()))
}

/// `(A^T A x - A^T b) / v`
pub fn scaled_gradient(sys: &LinearSystem, x: &Vector, v: f64) -> Result<Vector> {
    let atb = sys.a().transpose_matvec(sys.b())?;
    gradient_with(sys, &atb, x, v, &mut FlopCounter::new())
}

fn gradient_with(
    sys: &LinearSystem,
    atb: &Vector,
    x: &Vector,
    v: f64,
    flops: &mut FlopCounter,
) -> Result<Vector> {
    if !(v > 0.0) {
        return Err(Error::InvalidParameter("fuzzy weight must be positive"));
    }
    let mut g = sys.a().normal_apply_counted(x, flops)?;
    let inv = 1.0 / v;
    for (gi, bi) in g.as_mut_slice().iter_mut().zip(atb.iter()) {
        *gi = (*gi - bi) * inv;
    }
    flops.add(atb.len());
    flops.mul(atb.len());
    Ok(g)
}

/// `d` counts as a null-space direction when `||A d|| <= eps_mach ||A||_F ||d||`.
fn null_space_floor(a_norm: f64, dd: f64) -> f64 {
    let s = f64::EPSILON * a_norm;
    s * s * dd
}

/// Exact line-search step for direction `d` at working gradient `g`:
/// `alpha = -(v g^T d) / (v ||A d||^2)`.
pub fn line_search_alpha(sys: &LinearSystem, g: &Vector, d: &Vector, v: f64) -> Result<f64> {
    if g.len() != d.len() {
        return Err(Error::DimensionMismatch {
            op: "line search",
            expected: d.len(),
            found: g.len(),
        });
    }
    let mut flops = FlopCounter::new();
    let ad = sys.a().matvec_counted(d, &mut flops)?;
    let ad2 = dot_slices(ad.as_slice(), ad.as_slice(), &mut flops);
    let dd = dot_slices(d.as_slice(), d.as_slice(), &mut flops);
    if ad2 <= null_space_floor(sys.a().frobenius_norm(), dd) {
        return Err(Error::NullSpaceDirection);
    }
    let gd = dot_slices(g.as_slice(), d.as_slice(), &mut flops);
    Ok(-(v * gd) / (v * ad2))
}

/// Polak-Ribière coefficient `g_next^T (g_next - g_prev) / g_prev^T g_prev`.
/// `None` when `g_prev` vanishes, which means the previous iterate was
/// already stationary.
pub fn pr_beta(g_next: &Vector, g_prev: &Vector) -> Option<f64> {
    pr_beta_counted(g_next.as_slice(), g_prev.as_slice(), &mut FlopCounter::new())
}

fn pr_beta_counted(g_next: &[f64], g_prev: &[f64], flops: &mut FlopCounter) -> Option<f64> {
    let denom = dot_slices(g_prev, g_prev, flops);
    if !(denom > f64::MIN_POSITIVE) {
        return None;
    }
    let num: f64 = g_next
        .iter()
        .zip(g_prev)
        .map(|(a, b)| a * (a - b))
        .sum();
    flops.add(2 * g_next.len() - 1);
    flops.mul(g_next.len());
    flops.mul(1);
    Some(num / denom)
}

/// One completed iteration, passed to the observer of [`solve_observed`].
#[derive(Debug)]
pub struct Step<'a> {
    /// Zero-based index of the restart cycle.
    pub cycle: usize,
    /// Direction `d_k` the step moved along.
    pub direction: &'a Vector,
    /// The new iterate `x_{k+1}`.
    pub iterate: &'a Vector,
    pub record: &'a IterationRecord,
}

pub fn solve(sys: &LinearSystem, opts: &SolverOptions) -> Result<SolveReport> {
    solve_observed(sys, opts, |_| {})
}

/// [`solve`], calling `observer` after every iteration.
pub fn solve_observed<F>(sys: &LinearSystem, opts: &SolverOptions, mut observer: F) -> Result<SolveReport>
where
    F: FnMut(&Step<'_>),
{
    opts.validate(sys)?;
    let n = sys.unknowns();
    let a = sys.a();
    let mut flops = FlopCounter::new();
    let mut iteration_flops = FlopCounter::new();

    let atb = a.transpose_matvec_counted(sys.b(), &mut flops)?;
    let threshold = opts.epsilon * atb.norm2_counted(&mut flops).max(1.0);
    let a_norm = a.frobenius_norm();
    let budget = opts.max_restarts.saturating_mul(n);

    let mut x = opts.x0.clone().unwrap_or_else(|| Vector::zeros(n));
    let initial_cost = cost(sys, &x)?;
    let mut trace: Vec<IterationRecord> = Vec::new();
    let mut restarts = 0;
    let mut converged = false;

    'cycles: loop {
        // Restart: steepest descent from the current iterate.
        let mut v = opts.weight_source.weight(&x, opts.v_min);
        let mut g = gradient_with(sys, &atb, &x, v, &mut flops)?;
        let mut d = g.scaled(-1.0);
        flops.mul(n);
        if v * d.norm2_counted(&mut flops) < threshold {
            converged = true;
            break;
        }

        for inner in 0..n {
            if trace.len() >= budget {
                break 'cycles;
            }
            let start = flops;

            let ad = a.matvec_counted(&d, &mut flops)?;
            let ad2 = dot_slices(ad.as_slice(), ad.as_slice(), &mut flops);
            let dd = dot_slices(d.as_slice(), d.as_slice(), &mut flops);
            if ad2 <= null_space_floor(a_norm, dd) {
                if inner == 0 {
                    // A A^T r = 0 forces A^T r = 0: x is already stationary.
                    converged = true;
                    break 'cycles;
                }
                break;
            }
            let gd = dot_slices(g.as_slice(), d.as_slice(), &mut flops);
            let alpha = -(v * gd) / (v * ad2);
            flops.mul(3);

            let mut x_next = x.clone();
            axpy(alpha * v, d.as_slice(), x_next.as_mut_slice(), &mut flops);
            flops.mul(1);

            let v_next = opts.weight_source.weight(&x_next, opts.v_min);
            let g_next = gradient_with(sys, &atb, &x_next, v_next, &mut flops)?;
            let mut beta = pr_beta_counted(g_next.as_slice(), g.as_slice(), &mut flops).unwrap_or(0.0);
            if opts.nonnegative_beta {
                beta = beta.max(0.0);
            }
            let mut d_next = g_next.scaled(-1.0);
            flops.mul(n);
            axpy(beta, d.as_slice(), d_next.as_mut_slice(), &mut flops);
            let d_norm = d_next.norm2_counted(&mut flops);

            if !(x_next.is_all_finite() && d_next.is_all_finite() && alpha.is_finite()) {
                break 'cycles;
            }
            iteration_flops.merge(&flops.since(&start));

            let record = IterationRecord {
                k: trace.len() + 1,
                cost: cost(sys, &x_next)?,
                d_norm,
                alpha,
                beta,
                v,
            };
            observer(&Step {
                cycle: restarts,
                direction: &d,
                iterate: &x_next,
                record: &record,
            });
            trace.push(record);

            x = x_next;
            g = g_next;
            d = d_next;
            v = v_next;
            if v * d_norm < threshold {
                converged = true;
                break 'cycles;
            }
        }
        if trace.len() >= budget {
            break;
        }
        restarts += 1;
    }

    let residual_norm = sys.residual(&x)?.norm2();
    Ok(SolveReport {
        iterations: trace.len(),
        solution: x,
        restarts,
        residual_norm,
        initial_cost,
        flops,
        iteration_flops,
        converged,
        trace,
    })
}
