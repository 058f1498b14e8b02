//! The four built-in reference systems and their expected solutions.

use fuzzycg_core::{LinearSystem, Matrix, SolveReport, Vector};

use crate::error::{Error, Result};
use crate::solvers::{self, RunOptions, Solver};

#[derive(Debug, Clone)]
pub struct Fixture {
    pub id: u8,
    pub name: &'static str,
    pub system: LinearSystem,
    /// Reference solution, as printed (four decimals for fixture 3).
    pub expected: Vec<f64>,
    /// Reference iteration count of the fuzzy conjugate gradient method.
    pub reference_iterations: Option<usize>,
}

impl Fixture {
    /// Componentwise tolerance for a pass verdict. The stationary methods
    /// stop at a 5e-5 step, and fixture 3 is printed to four decimals.
    pub fn tolerance(&self, solver: Solver) -> f64 {
        match (self.id, solver) {
            (3, _) | (_, Solver::Jacobi | Solver::Gs) => 5e-5,
            _ => 1e-6,
        }
    }
}

fn build(rows: &[&[f64]], b: &[f64]) -> LinearSystem {
    let a = Matrix::from_rows(rows).expect("fixture matrix");
    LinearSystem::new(a, Vector::new(b.to_vec()).expect("fixture rhs")).expect("fixture system")
}

pub fn fixture(id: u8) -> Result<Fixture> {
    let f = match id {
        1 => Fixture {
            id,
            name: "exactly determined 4x4",
            system: build(
                &[
                    &[10.0, -2.0, -1.0, -1.0],
                    &[-2.0, 10.0, -1.0, -1.0],
                    &[-1.0, -1.0, 10.0, -2.0],
                    &[-1.0, -1.0, -2.0, 10.0],
                ],
                &[3.0, 15.0, 27.0, -9.0],
            ),
            expected: vec![1.0, 2.0, 3.0, 0.0],
            reference_iterations: Some(3),
        },
        2 => Fixture {
            id,
            name: "exactly determined 3x3",
            system: build(
                &[&[20.0, 1.0, -2.0], &[3.0, 20.0, -1.0], &[2.0, -3.0, 20.0]],
                &[17.0, -18.0, 25.0],
            ),
            expected: vec![1.0, -1.0, 1.0],
            reference_iterations: Some(4),
        },
        3 => Fixture {
            id,
            name: "underdetermined 5x9",
            system: build(
                &[
                    &[6.0, 2.0, 4.0, -9.0, -12.0, 2.0, -12.0, 0.0, 1.0],
                    &[8.0, -10.0, 1.0, 8.0, -22.0, 0.0, -11.0, -11.0, 7.0],
                    &[9.0, -7.0, -6.0, 6.0, 10.0, -10.0, 15.0, -13.0, -12.0],
                    &[-10.0, 11.0, -6.0, -8.0, -5.0, -9.0, 1.0, -3.0, -5.0],
                    &[2.0, -1.0, 4.0, -3.0, 3.0, -4.0, -12.0, 10.0, -3.0],
                ],
                &[-12.0, -13.0, 9.0, 0.0, -6.0],
            ),
            expected: vec![
                -0.1886, 0.4444, -0.1066, 0.1450, 0.3418, -0.0678, 0.4396, -0.0186, 0.0060,
            ],
            reference_iterations: Some(4),
        },
        4 => Fixture {
            id,
            name: "overdetermined 5x3",
            system: build(
                &[
                    &[1.0, 2.0, 3.0],
                    &[3.0, 2.0, 1.0],
                    &[1.0, 1.0, 1.0],
                    &[2.0, 3.0, -1.0],
                    &[1.0, 1.0, 0.0],
                ],
                &[14.0, 10.0, 6.0, 5.0, 3.0],
            ),
            expected: vec![1.0, 2.0, 3.0],
            reference_iterations: Some(2),
        },
        _ => return Err(Error::Usage(format!("unknown fixture {id} (expected 1-4)"))),
    };
    Ok(f)
}

pub fn all() -> Vec<Fixture> {
    (1..=4).map(|id| fixture(id).expect("built-in fixture")).collect()
}

#[derive(Debug, Clone)]
pub struct FixtureOutcome {
    pub fixture: Fixture,
    pub solver: Solver,
    pub report: SolveReport,
    pub max_error: f64,
    pub tolerance: f64,
    pub pass: bool,
}

pub fn run_fixture(id: u8, solver: Solver, opts: &RunOptions) -> Result<FixtureOutcome> {
    let fixture = fixture(id)?;
    let report = solvers::run(&fixture.system, solver, opts)?;
    let max_error = report
        .solution
        .iter()
        .zip(&fixture.expected)
        .map(|(x, e)| (x - e).abs())
        .fold(0.0, f64::max);
    let tolerance = fixture.tolerance(solver);
    Ok(FixtureOutcome {
        pass: report.converged && max_error <= tolerance,
        fixture,
        solver,
        report,
        max_error,
        tolerance,
    })
}
