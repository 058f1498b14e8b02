//! Empirical cost of the fuzzy conjugate gradient iteration.
//!
//! For each size `n`, random `n x n` systems with entries uniform in
//! `[-1, 1]` plus `n` on the diagonal are solved with `v == 1`. The mean
//! number of counted operations per iteration is fitted against `n` on a
//! log-log scale; the slope estimates the exponent of the per-iteration
//! cost.

use std::fmt::Write as _;
use std::thread;

use fuzzycg_core::{fcg, LinearSystem, Matrix, SolverOptions, Vector};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ScalingStudyResult {
    pub sizes: Vec<usize>,
    /// Mean over trials of operations per iteration.
    pub flops_per_iteration: Vec<f64>,
    /// Mean over trials of all counted operations, setup included.
    pub total_flops: Vec<f64>,
    /// Iteration count of every trial, per size.
    pub iterations: Vec<Vec<usize>>,
    pub slope: f64,
    pub intercept: f64,
}

struct Trial {
    per_iteration: f64,
    total: f64,
    iterations: usize,
}

pub fn shifted_random_system(n: usize, seed: u64) -> LinearSystem {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut data: Vec<f64> = (0..n * n).map(|_| rng.gen_range(-1.0..=1.0)).collect();
    for i in 0..n {
        data[i * n + i] += n as f64;
    }
    let b: Vec<f64> = (0..n).map(|_| rng.gen_range(-1.0..=1.0)).collect();
    LinearSystem::new(
        Matrix::new(n, n, data).expect("finite entries"),
        Vector::new(b).expect("finite entries"),
    )
    .expect("square system")
}

fn trial_seed(seed: u64, n: usize, trial: usize) -> u64 {
    seed ^ ((n as u64) << 32) ^ trial as u64
}

fn run_trial(n: usize, seed: u64) -> Result<Trial> {
    let sys = shifted_random_system(n, seed);
    let report = fcg::solve(&sys, &SolverOptions::default())?;
    let per_iteration = report
        .flops_per_iteration()
        .ok_or_else(|| Error::Usage(format!("size {n}: solver took no iterations")))?;
    Ok(Trial {
        per_iteration,
        total: report.flops.total() as f64,
        iterations: report.iterations,
    })
}

/// Ordinary least squares fit `y = slope * x + intercept`.
pub fn fit_line(xs: &[f64], ys: &[f64]) -> (f64, f64) {
    let n = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / n;
    let my = ys.iter().sum::<f64>() / n;
    let sxy: f64 = xs.iter().zip(ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let sxx: f64 = xs.iter().map(|x| (x - mx) * (x - mx)).sum();
    let slope = sxy / sxx;
    (slope, my - slope * mx)
}

pub fn scaling_study(sizes: &[usize], trials: usize, seed: u64) -> Result<ScalingStudyResult> {
    if sizes.len() < 2 {
        return Err(Error::Usage("scaling study needs at least two sizes".into()));
    }
    if sizes.windows(2).any(|w| w[0] >= w[1]) || sizes[0] == 0 {
        return Err(Error::Usage("sizes must be positive and strictly increasing".into()));
    }
    if trials == 0 {
        return Err(Error::Usage("trials must be positive".into()));
    }

    let mut result = ScalingStudyResult {
        sizes: sizes.to_vec(),
        flops_per_iteration: Vec::with_capacity(sizes.len()),
        total_flops: Vec::with_capacity(sizes.len()),
        iterations: Vec::with_capacity(sizes.len()),
        slope: f64::NAN,
        intercept: f64::NAN,
    };
    for &n in sizes {
        let outcomes: Vec<Result<Trial>> = thread::scope(|s| {
            let handles: Vec<_> = (0..trials)
                .map(|t| s.spawn(move || run_trial(n, trial_seed(seed, n, t))))
                .collect();
            handles
                .into_iter()
                .map(|h| h.join().expect("trial thread panicked"))
                .collect()
        });
        let outcomes = outcomes.into_iter().collect::<Result<Vec<_>>>()?;
        let count = outcomes.len() as f64;
        result
            .flops_per_iteration
            .push(outcomes.iter().map(|t| t.per_iteration).sum::<f64>() / count);
        result
            .total_flops
            .push(outcomes.iter().map(|t| t.total).sum::<f64>() / count);
        result
            .iterations
            .push(outcomes.iter().map(|t| t.iterations).collect());
    }
    let xs: Vec<f64> = sizes.iter().map(|&n| (n as f64).ln()).collect();
    let ys: Vec<f64> = result.flops_per_iteration.iter().map(|f| f.ln()).collect();
    (result.slope, result.intercept) = fit_line(&xs, &ys);
    Ok(result)
}

pub fn emit_text(result: &ScalingStudyResult) -> String {
    let mut out = String::new();
    let _ = writeln!(
        out,
        "{:>6}  {:>14}  {:>14}  {:>12}",
        "n", "flops/iter", "total flops", "iterations"
    );
    for (i, n) in result.sizes.iter().enumerate() {
        let its: Vec<String> = result.iterations[i].iter().map(|k| k.to_string()).collect();
        let _ = writeln!(
            out,
            "{:>6}  {:>14.1}  {:>14.1}  {:>12}",
            n,
            result.flops_per_iteration[i],
            result.total_flops[i],
            its.join(",")
        );
    }
    let _ = writeln!(
        out,
        "log-log slope {:.4}, intercept {:.4}",
        result.slope, result.intercept
    );
    out
}
