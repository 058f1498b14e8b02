//! Acceptance criteria. Each test prints one `PASS`/`FAIL` line; run with
//! `cargo test -p fuzzycg --test acceptance -- --nocapture --test-threads=1`.

use std::path::Path;
use std::time::{Duration, Instant};

use fuzzycg::bench::scaling_study;
use fuzzycg::cli::run;
use fuzzycg::fixtures::{self, Fixture};
use fuzzycg::solvers::Solver;
use fuzzycg::system_file::{parse_system, read_system, serialize_system};
use fuzzycg_core::fcg::{solve, solve_observed};
use fuzzycg_core::stationary::{gauss_seidel, jacobi};
use fuzzycg_core::svd::pinv_solve;
use fuzzycg_core::{
    FuzzyWeightSource, LinearSystem, Matrix, SolveReport, SolverOptions, StationaryOptions,
    TrainingSample, TskModel, Vector,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn verdict(id: &str, what: &str, pass: bool, detail: String) {
    println!("{id:<5} {:<4} {what}: {detail}", if pass { "PASS" } else { "FAIL" });
    assert!(pass, "{id} {what}: {detail}");
}

fn unit_weight() -> SolverOptions {
    SolverOptions::default()
        .with_weight_source(FuzzyWeightSource::Constant(1.0))
        .with_epsilon(1e-10)
}

fn max_err(x: &Vector, expected: &[f64]) -> f64 {
    x.iter()
        .zip(expected)
        .map(|(a, b)| (a - b).abs())
        .fold(0.0, f64::max)
}

fn random_system(rng: &mut ChaCha8Rng, m: usize, n: usize) -> LinearSystem {
    let a: Vec<f64> = (0..m * n).map(|_| rng.gen_range(-1.0..1.0)).collect();
    let b: Vec<f64> = (0..m).map(|_| rng.gen_range(-1.0..1.0)).collect();
    LinearSystem::new(Matrix::new(m, n, a).unwrap(), Vector::new(b).unwrap()).unwrap()
}

fn well_conditioned(rng: &mut ChaCha8Rng, n: usize) -> LinearSystem {
    let mut a: Vec<f64> = (0..n * n).map(|_| rng.gen_range(-1.0..1.0)).collect();
    for i in 0..n {
        a[i * n + i] += n as f64;
    }
    let b: Vec<f64> = (0..n).map(|_| rng.gen_range(-1.0..1.0)).collect();
    LinearSystem::new(Matrix::new(n, n, a).unwrap(), Vector::new(b).unwrap()).unwrap()
}

#[test]
fn ac01a_fixture_solutions_exact_systems() {
    let start = Instant::now();
    let mut worst = Vec::new();
    let mut pass = true;
    for id in [1, 2, 4] {
        let f = fixtures::fixture(id).unwrap();
        let report = solve(&f.system, &unit_weight()).unwrap();
        let err = max_err(&report.solution, &f.expected);
        pass &= report.converged && err <= 1e-6;
        worst.push(format!("ex{id} err {err:.1e}"));
    }
    let elapsed = start.elapsed();
    pass &= elapsed < Duration::from_secs(1);
    verdict(
        "AC1a",
        "fcg reproduces examples 1, 2, 4 within 1e-6",
        pass,
        format!("{} in {elapsed:?}", worst.join(", ")),
    );
}

#[test]
fn ac01b_fixture_solution_underdetermined_printed_vector() {
    let f = fixtures::fixture(3).unwrap();
    let start = Instant::now();
    let report = solve(&f.system, &unit_weight()).unwrap();
    let elapsed = start.elapsed();
    let err = max_err(&report.solution, &f.expected);
    verdict(
        "AC1b",
        "fcg matches the printed example 3 vector within 5e-5",
        report.converged && err <= 5e-5 && elapsed < Duration::from_secs(1),
        format!("max componentwise error {err:.3e} in {elapsed:?}"),
    );
}

#[test]
fn ac02_iteration_bounds() {
    let mut pass = true;
    let mut detail = Vec::new();
    for id in [1, 2, 4] {
        let f: Fixture = fixtures::fixture(id).unwrap();
        let n = f.system.unknowns();
        let report = solve(&f.system, &unit_weight()).unwrap();
        pass &= report.converged && report.restarts == 0 && report.iterations <= n;
        detail.push(format!(
            "ex{id}: {} <= {n} (reference {})",
            report.iterations,
            f.reference_iterations.unwrap()
        ));
    }
    verdict("AC2", "fcg converges within one restart cycle", pass, detail.join("; "));
}

#[test]
fn ac03_solver_ordering() {
    let opts = StationaryOptions::default();
    assert_eq!(opts.tolerance, 5e-5);
    let ex1 = fixtures::fixture(1).unwrap().system;
    let ex2 = fixtures::fixture(2).unwrap().system;
    let fcg = solve(&ex1, &unit_weight()).unwrap().iterations;
    let gs = gauss_seidel(&ex1, &opts).unwrap();
    let jac = jacobi(&ex1, &opts).unwrap();
    let jac2 = jacobi(&ex2, &opts).unwrap();
    let pass = fcg < gs.iterations
        && gs.iterations < jac.iterations
        && gs.converged
        && jac.converged
        && jac2.converged
        && (6..=20).contains(&jac2.iterations);
    verdict(
        "AC3",
        "fcg < gauss-seidel < jacobi on example 1, jacobi 6-20 on example 2",
        pass,
        format!(
            "ex1 {fcg} < {} < {}; ex2 jacobi {}",
            gs.iterations, jac.iterations, jac2.iterations
        ),
    );
}

#[test]
fn ac04_agreement_with_pseudoinverse() {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let mut systems: Vec<LinearSystem> = [3, 4]
        .iter()
        .map(|&id| fixtures::fixture(id).unwrap().system)
        .collect();
    for _ in 0..20 {
        systems.push(random_system(&mut rng, 5, 9));
        systems.push(random_system(&mut rng, 9, 5));
    }
    let worst = systems
        .iter()
        .map(|sys| {
            let x = solve(sys, &unit_weight()).unwrap().solution;
            let p = pinv_solve(sys);
            x.max_abs_diff(&p).unwrap()
        })
        .fold(0.0, f64::max);
    verdict(
        "AC4",
        "fcg agrees with pinv on fixtures 3, 4 and 40 random systems",
        worst <= 1e-6,
        format!("worst componentwise gap {worst:.2e} over {} systems", systems.len()),
    );
}

struct Params {
    centers: Vec<Vec<f64>>,
    widths: Vec<Vec<f64>>,
    consequents: Vec<f64>,
}

impl Params {
    fn model(&self) -> TskModel {
        TskModel::from_grids(&self.centers, &self.widths, self.consequents.clone()).unwrap()
    }

    fn loss(&self, s: &TrainingSample) -> f64 {
        self.model().loss(s).unwrap()
    }
}

fn central(p: &mut Params, s: &TrainingSample, get: impl Fn(&mut Params) -> &mut f64) -> f64 {
    let h = 1e-6;
    let orig = *get(p);
    *get(p) = orig + h;
    let plus = p.loss(s);
    *get(p) = orig - h;
    let minus = p.loss(s);
    *get(p) = orig;
    (plus - minus) / (2.0 * h)
}

#[test]
fn ac05_gradient_correctness() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let mut checked = 0usize;
    let mut failures = Vec::new();
    let ok = |g: f64, fd: f64| (g - fd).abs() <= (1e-5 * fd.abs()).max(1e-8);
    for trial in 0..100 {
        let rules = rng.gen_range(1..=5);
        let inputs = rng.gen_range(1..=4);
        let mut grid = |lo: f64, hi: f64| -> Vec<Vec<f64>> {
            (0..rules)
                .map(|_| (0..inputs).map(|_| rng.gen_range(lo..hi)).collect())
                .collect()
        };
        let centers = grid(-1.0, 1.0);
        let widths = grid(0.5, 2.0);
        let mut p = Params {
            centers,
            widths,
            consequents: (0..rules).map(|_| rng.gen_range(-2.0..2.0)).collect(),
        };
        let x: Vec<f64> = (0..inputs).map(|_| rng.gen_range(-1.0..1.0)).collect();
        let s = TrainingSample::new(Vector::new(x).unwrap(), rng.gen_range(-2.0..2.0)).unwrap();
        let g = p.model().gradients(&s).unwrap();
        for i in 0..rules {
            let fd = central(&mut p, &s, |q| &mut q.consequents[i]);
            checked += 1;
            if !ok(g.consequents[i], fd) {
                failures.push(format!("trial {trial} c{i}"));
            }
            for j in 0..inputs {
                let fd = central(&mut p, &s, |q| &mut q.centers[i][j]);
                if !ok(g.centers[i * inputs + j], fd) {
                    failures.push(format!("trial {trial} m{i}{j}"));
                }
                let fd = central(&mut p, &s, |q| &mut q.widths[i][j]);
                if !ok(g.widths[i * inputs + j], fd) {
                    failures.push(format!("trial {trial} s{i}{j}"));
                }
                checked += 2;
            }
        }
    }
    verdict(
        "AC5",
        "TSK gradients match central differences (h = 1e-6)",
        failures.is_empty(),
        format!("{checked} partials, {} mismatches {:?}", failures.len(), failures),
    );
}

fn descent_holds(report: &SolveReport) -> bool {
    let mut last = report.initial_cost;
    report.trace.iter().all(|r| {
        let ok = r.cost.is_finite() && r.cost <= last + 1e-12 * (1.0 + last);
        last = r.cost;
        ok
    })
}

#[test]
fn ac06_normalization_and_descent() {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let mut worst_sum = 0.0f64;
    for _ in 0..1000 {
        let rules = rng.gen_range(1..=6);
        let inputs = rng.gen_range(1..=4);
        let centers: Vec<Vec<f64>> = (0..rules)
            .map(|_| (0..inputs).map(|_| rng.gen_range(-1.0..1.0)).collect())
            .collect();
        let widths: Vec<Vec<f64>> = (0..rules)
            .map(|_| (0..inputs).map(|_| rng.gen_range(0.3..2.0)).collect())
            .collect();
        let model = TskModel::from_grids(&centers, &widths, vec![0.0; rules]).unwrap();
        let x = Vector::new((0..inputs).map(|_| rng.gen_range(-1.0..1.0)).collect()).unwrap();
        let sum: f64 = model.firing_strengths(&x).unwrap().iter().sum();
        worst_sum = worst_sum.max((sum - 1.0).abs());
    }

    let mut traces = 0;
    let mut descent = true;
    for f in fixtures::all() {
        descent &= descent_holds(&solve(&f.system, &unit_weight()).unwrap());
        traces += 1;
    }
    for k in 0..20 {
        let (m, n) = [(6, 6), (5, 9), (9, 5), (8, 8)][k % 4];
        let sys = random_system(&mut rng, m, n);
        descent &= descent_holds(&solve(&sys, &unit_weight()).unwrap());
        traces += 1;
    }
    verdict(
        "AC6",
        "firing strengths sum to 1; fcg cost is non-increasing",
        worst_sum <= 1e-12 && descent,
        format!("max |sum - 1| = {worst_sum:.1e} over 1000 draws; descent on {traces} traces: {descent}"),
    );
}

#[test]
fn ac07_conjugacy() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut worst = 0.0f64;
    let mut pairs = 0;
    for _ in 0..10 {
        let sys = well_conditioned(&mut rng, 8);
        let mut dirs: Vec<Vector> = Vec::new();
        solve_observed(&sys, &unit_weight(), |step| {
            if step.cycle == 0 {
                dirs.push(step.direction.clone());
            }
        })
        .unwrap();
        let a = sys.a();
        let g = |u: &Vector, w: &Vector| a.normal_apply(u).unwrap().dot(w).unwrap();
        for i in 0..dirs.len() {
            for j in 0..i {
                let r = g(&dirs[i], &dirs[j]).abs()
                    / (g(&dirs[i], &dirs[i]) * g(&dirs[j], &dirs[j])).sqrt();
                worst = worst.max(r);
                pairs += 1;
            }
        }
    }
    verdict(
        "AC7",
        "directions are A^T A-conjugate within a restart cycle",
        pairs > 0 && worst < 1e-6,
        format!("worst normalized |d_i^T A^T A d_j| = {worst:.2e} over {pairs} pairs"),
    );
}

#[test]
fn ac08_constant_weight_neutrality() {
    let sys = fixtures::fixture(1).unwrap().system;
    let iterates = |c: f64| {
        let mut xs = Vec::new();
        let opts = unit_weight().with_weight_source(FuzzyWeightSource::Constant(c));
        solve_observed(&sys, &opts, |s| xs.push(s.iterate.clone())).unwrap();
        xs
    };
    let (unit, quarter) = (iterates(1.0), iterates(0.25));
    let worst = unit
        .iter()
        .zip(&quarter)
        .map(|(a, b)| a.max_abs_diff(b).unwrap())
        .fold(0.0, f64::max);
    verdict(
        "AC8",
        "iterates with v = 1 and v = 0.25 coincide on example 1",
        unit.len() == quarter.len() && !unit.is_empty() && worst <= 1e-12,
        format!("{} vs {} iterates, max gap {worst:.1e}", unit.len(), quarter.len()),
    );
}

#[test]
fn ac09_complexity_slope() {
    let start = Instant::now();
    let result = scaling_study(&[16, 32, 64, 128], 5, 0x5eed).unwrap();
    let elapsed = start.elapsed();
    verdict(
        "AC9",
        "flops-per-iteration log-log slope in [1.9, 2.1]",
        (1.9..=2.1).contains(&result.slope) && elapsed < Duration::from_secs(30),
        format!(
            "slope {:.4}, flops/iter {:?}, {elapsed:?}",
            result.slope, result.flops_per_iteration
        ),
    );
}

fn check_report_schema(v: &serde_json::Value) -> Result<(), String> {
    let obj = v.as_object().ok_or("not an object")?;
    let num = |key: &str| obj.get(key).and_then(|x| x.as_f64()).ok_or(format!("{key} not a number"));
    let uint = |key: &str| obj.get(key).and_then(|x| x.as_u64()).ok_or(format!("{key} not an integer"));
    let solution = obj
        .get("solution")
        .and_then(|s| s.as_array())
        .ok_or("solution not an array")?;
    if solution.is_empty() || !solution.iter().all(|x| x.is_f64() || x.is_i64() || x.is_u64()) {
        return Err("solution entries must be numbers".into());
    }
    let iterations = uint("iterations")?;
    uint("restarts")?;
    num("residual_norm")?;
    let flops = obj.get("flops").and_then(|f| f.as_object()).ok_or("flops not an object")?;
    for key in ["add", "mul"] {
        flops.get(key).and_then(|x| x.as_u64()).ok_or(format!("flops.{key}"))?;
    }
    obj.get("converged").and_then(|c| c.as_bool()).ok_or("converged not a bool")?;
    let trace = obj.get("trace").and_then(|t| t.as_array()).ok_or("trace not an array")?;
    if trace.len() as u64 != iterations {
        return Err("trace length differs from iterations".into());
    }
    for r in trace {
        r.get("k").and_then(|x| x.as_u64()).ok_or("trace.k")?;
        for key in ["E", "d_norm", "alpha", "beta", "v"] {
            r.get(key).and_then(|x| x.as_f64()).ok_or(format!("trace.{key}"))?;
        }
    }
    Ok(())
}

#[test]
fn ac10_cli_contract() {
    let mut problems = Vec::new();

    let data = Path::new(env!("CARGO_MANIFEST_DIR")).join("data");
    for f in fixtures::all() {
        if parse_system(&serialize_system(&f.system)).unwrap() != f.system {
            problems.push(format!("fixture {} does not round-trip", f.id));
        }
        let file = read_system(&data.join(format!("example{}.txt", f.id))).unwrap();
        if file != f.system {
            problems.push(format!("data/example{}.txt differs from fixture", f.id));
        }
    }

    let mut combos = 0;
    for id in 1..=4u8 {
        for solver in Solver::ALL {
            combos += 1;
            let applicable = fixtures::fixture(id).unwrap().system.classify()
                == fuzzycg_core::SystemKind::ExactlyDetermined
                || matches!(solver, Solver::Fcg | Solver::Svd);
            // Example 3's printed vector is not reachable at 5e-5 by any solver.
            let expected = match (applicable, id) {
                (false, _) => 2,
                (true, 3) => 1,
                _ => 0,
            };
            let mut out = Vec::new();
            let mut err = Vec::new();
            let id_arg = id.to_string();
            let code = run(
                ["fuzzycg", "fixture", "--id", &id_arg, "--solver", solver.name(), "--json"],
                &mut out,
                &mut err,
            );
            if code != expected {
                problems.push(format!("fixture {id} {solver}: exit {code}, expected {expected}"));
            }
            if code != 2 {
                match serde_json::from_slice::<serde_json::Value>(&out) {
                    Ok(v) => {
                        if let Err(e) = check_report_schema(&v) {
                            problems.push(format!("fixture {id} {solver}: {e}"));
                        }
                    }
                    Err(e) => problems.push(format!("fixture {id} {solver}: invalid JSON {e}")),
                }
            } else if err.is_empty() {
                problems.push(format!("fixture {id} {solver}: no error message"));
            }
        }
    }
    verdict(
        "AC10",
        "file round-trips, JSON schema and exit codes",
        problems.is_empty(),
        format!("{combos} solver/fixture combinations; problems: {problems:?}"),
    );
}
