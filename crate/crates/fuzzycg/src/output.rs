//! Text and JSON renderings of a [`SolveReport`].

use std::fmt::Write as _;

use fuzzycg_core::SolveReport;
use serde::{Deserialize, Serialize};

use crate::fixtures::FixtureOutcome;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Text,
    Json,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FlopsJson {
    pub add: u64,
    pub mul: u64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TraceJson {
    pub k: usize,
    #[serde(rename = "E")]
    pub cost: f64,
    pub d_norm: f64,
    pub alpha: f64,
    pub beta: f64,
    pub v: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FixtureJson {
    pub id: u8,
    pub expected: Vec<f64>,
    pub max_error: f64,
    pub tolerance: f64,
    pub pass: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReportJson {
    pub solution: Vec<f64>,
    pub iterations: usize,
    pub restarts: usize,
    pub residual_norm: f64,
    pub flops: FlopsJson,
    pub converged: bool,
    pub trace: Vec<TraceJson>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub solver: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub fixture: Option<FixtureJson>,
}

impl ReportJson {
    pub fn from_report(report: &SolveReport) -> Self {
        ReportJson {
            solution: report.solution.as_slice().to_vec(),
            iterations: report.iterations,
            restarts: report.restarts,
            residual_norm: report.residual_norm,
            flops: FlopsJson {
                add: report.flops.additions,
                mul: report.flops.multiplications,
            },
            converged: report.converged,
            trace: report
                .trace
                .iter()
                .map(|r| TraceJson {
                    k: r.k,
                    cost: r.cost,
                    d_norm: r.d_norm,
                    alpha: r.alpha,
                    beta: r.beta,
                    v: r.v,
                })
                .collect(),
            solver: None,
            fixture: None,
        }
    }

    pub fn from_fixture(outcome: &FixtureOutcome) -> Self {
        let mut json = Self::from_report(&outcome.report);
        json.solver = Some(outcome.solver.name().to_string());
        json.fixture = Some(FixtureJson {
            id: outcome.fixture.id,
            expected: outcome.fixture.expected.clone(),
            max_error: outcome.max_error,
            tolerance: outcome.tolerance,
            pass: outcome.pass,
        });
        json
    }
}

pub fn emit_report(report: &SolveReport, format: Format) -> String {
    match format {
        Format::Json => to_json(&ReportJson::from_report(report)),
        Format::Text => report_text(report),
    }
}

pub fn emit_fixture(outcome: &FixtureOutcome, format: Format) -> String {
    match format {
        Format::Json => to_json(&ReportJson::from_fixture(outcome)),
        Format::Text => {
            let f = &outcome.fixture;
            let mut out = format!("fixture {} ({}) with {}\n", f.id, f.name, outcome.solver);
            out.push_str(&report_text(&outcome.report));
            let _ = writeln!(out, "expected    {}", vector_text(&f.expected));
            if let Some(k) = f.reference_iterations {
                let _ = writeln!(out, "reference   {k} fcg iterations");
            }
            let _ = writeln!(
                out,
                "max error   {:.3e} (tolerance {:.0e}): {}",
                outcome.max_error,
                outcome.tolerance,
                if outcome.pass { "PASS" } else { "FAIL" }
            );
            out
        }
    }
}

fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("report serializes");
    s.push('\n');
    s
}

fn vector_text(v: &[f64]) -> String {
    let items: Vec<String> = v.iter().map(|x| format!("{x:.6}")).collect();
    format!("[{}]", items.join(", "))
}

fn report_text(report: &SolveReport) -> String {
    let mut out = String::new();
    if !report.trace.is_empty() {
        let _ = writeln!(
            out,
            "{:>5}  {:>13}  {:>11}  {:>11}  {:>11}  {:>9}",
            "k", "E", "||d||", "alpha", "beta", "v"
        );
        for r in &report.trace {
            let _ = writeln!(
                out,
                "{:>5}  {:>13.6e}  {:>11.4e}  {:>11.4e}  {:>11.4e}  {:>9.3e}",
                r.k, r.cost, r.d_norm, r.alpha, r.beta, r.v
            );
        }
    }
    let _ = writeln!(out, "solution    {}", vector_text(report.solution.as_slice()));
    let _ = writeln!(
        out,
        "iterations  {} ({} restarts)",
        report.iterations, report.restarts
    );
    let _ = writeln!(out, "residual    {:.6e}", report.residual_norm);
    let _ = writeln!(
        out,
        "flops       {} add, {} mul",
        report.flops.additions, report.flops.multiplications
    );
    let _ = writeln!(out, "converged   {}", report.converged);
    out
}
