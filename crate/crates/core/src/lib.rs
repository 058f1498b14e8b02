//! Dense linear system solvers built around a fuzzy-weighted Polak-Ribière
//! conjugate gradient iteration.
//!
//! The crate is `no_std` and only needs `alloc`. It provides:
//!
//! * [`linalg`]: dense row-major matrices and vectors with FLOP accounting,
//! * [`tsk`]: a zeroth-order Takagi-Sugeno-Kang fuzzy model with Gaussian
//!   antecedents and its backpropagation learning rules,
//! * [`fcg`]: the restarted fuzzy-weighted Polak-Ribière conjugate gradient
//!   solver for `Ax = b` (exactly, under- and overdetermined),
//! * [`stationary`] and [`svd`]: the Jacobi, Gauss-Seidel and pseudoinverse
//!   baselines it is compared against.
//!
//! File formats, fixtures, the benchmark harness and the command line tool
//! live in the companion `fuzzycg` crate.

#![no_std]
#![warn(missing_debug_implementations)]

extern crate alloc;

mod error;
pub mod fcg;
pub mod linalg;
pub mod report;
pub mod stationary;
pub mod svd;
pub mod tsk;

pub use error::{Error, Result};
pub use fcg::{FuzzyWeightSource, SolverOptions};
pub use linalg::{FlopCounter, LinearSystem, Matrix, SystemKind, Vector};
pub use report::{IterationRecord, SolveReport};
pub use stationary::StationaryOptions;
pub use svd::SvdResult;
pub use tsk::{GaussianMf, LearningRates, TrainingSample, TskModel};
