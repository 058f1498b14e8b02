//! Argument parsing and dispatch for the `fuzzycg` binary.
//!
//! Exit codes: 0 converged / pass, 1 not converged / fail, 2 usage, parse or
//! input error.

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use fuzzycg_core::{FuzzyWeightSource, SolverOptions};

use crate::bench;
use crate::error::{Error, Result};
use crate::fixtures;
use crate::model_file;
use crate::output::{self, Format};
use crate::solvers::{self, RunOptions, Solver};
use crate::system_file;

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Parser)]
#[command(name = "fuzzycg", version, about = "Fuzzy-weighted conjugate gradient solver for Ax = b")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Solve a system read from a file.
    Solve(SolveArgs),
    /// Solve one of the built-in reference systems and compare with the
    /// expected solution.
    Fixture(FixtureArgs),
    /// Measure operations per iteration against problem size.
    Bench(BenchArgs),
}

#[derive(Debug, Args)]
pub struct SolveArgs {
    #[arg(long)]
    pub input: PathBuf,
    #[arg(long, value_enum, default_value_t = Solver::Fcg)]
    pub solver: Solver,
    #[command(flatten)]
    pub fcg: FcgArgs,
    /// JSON TSK model supplying the fuzzy step weight (fcg only).
    #[arg(long)]
    pub fuzzy_model: Option<PathBuf>,
    #[arg(long)]
    pub json: bool,
}

#[derive(Debug, Args)]
pub struct FcgArgs {
    #[arg(long, default_value_t = 1e-10)]
    pub epsilon: f64,
    #[arg(long, default_value_t = 100)]
    pub max_restarts: usize,
}

#[derive(Debug, Args)]
pub struct FixtureArgs {
    #[arg(long, value_parser = clap::value_parser!(u8).range(1..=4))]
    pub id: u8,
    #[arg(long, value_enum)]
    pub solver: Solver,
    #[arg(long)]
    pub json: bool,
}

#[derive(Debug, Args)]
pub struct BenchArgs {
    #[arg(long, value_delimiter = ',', default_value = "16,32,64,128")]
    pub sizes: Vec<usize>,
    #[arg(long, default_value_t = 5)]
    pub trials: usize,
    #[arg(long, default_value_t = 0x5eed)]
    pub seed: u64,
    #[arg(long)]
    pub json: bool,
}

fn format(json: bool) -> Format {
    if json {
        Format::Json
    } else {
        Format::Text
    }
}

fn fcg_options(args: &FcgArgs) -> SolverOptions {
    SolverOptions::default()
        .with_epsilon(args.epsilon)
        .with_max_restarts(args.max_restarts)
}

fn solve(args: &SolveArgs, out: &mut dyn Write) -> Result<i32> {
    let sys = system_file::read_system(&args.input)?;
    let mut opts = RunOptions {
        fcg: fcg_options(&args.fcg),
        ..Default::default()
    };
    if let Some(path) = &args.fuzzy_model {
        if args.solver != Solver::Fcg {
            return Err(Error::Usage("--fuzzy-model only applies to --solver fcg".into()));
        }
        opts.fcg.weight_source = FuzzyWeightSource::MaxActivation(model_file::read_model(path)?);
    }
    let report = solvers::run(&sys, args.solver, &opts)?;
    write!(out, "{}", output::emit_report(&report, format(args.json))).ok();
    Ok(if report.converged { EXIT_OK } else { EXIT_FAIL })
}

fn fixture(args: &FixtureArgs, out: &mut dyn Write) -> Result<i32> {
    let outcome = fixtures::run_fixture(args.id, args.solver, &RunOptions::default())?;
    write!(out, "{}", output::emit_fixture(&outcome, format(args.json))).ok();
    Ok(if outcome.pass { EXIT_OK } else { EXIT_FAIL })
}

fn bench(args: &BenchArgs, out: &mut dyn Write) -> Result<i32> {
    let result = bench::scaling_study(&args.sizes, args.trials, args.seed)?;
    let text = if args.json {
        let mut s = serde_json::to_string_pretty(&result)?;
        s.push('\n');
        s
    } else {
        bench::emit_text(&result)
    };
    write!(out, "{text}").ok();
    Ok(EXIT_OK)
}

/// Parses `args` (including the program name) and runs the command,
/// returning the process exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = e.exit_code();
            let rendered = e.render();
            if code == 0 {
                write!(out, "{rendered}").ok();
            } else {
                write!(err, "{rendered}").ok();
            }
            return code;
        }
    };
    let result = match &cli.command {
        Command::Solve(a) => solve(a, out),
        Command::Fixture(a) => fixture(a, out),
        Command::Bench(a) => bench(a, out),
    };
    match result {
        Ok(code) => code,
        Err(e) => {
            writeln!(err, "error: {e}").ok();
            EXIT_USAGE
        }
    }
}
