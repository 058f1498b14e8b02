//! Command-line front end for `fuzzycg-core`: the plain-text system format,
//! the JSON fuzzy-model format, the built-in reference systems, report
//! output and the FLOP scaling study.

pub mod bench;
pub mod cli;
pub mod error;
pub mod fixtures;
pub mod model_file;
pub mod output;
pub mod solvers;
pub mod system_file;

pub use error::{Error, Result};
