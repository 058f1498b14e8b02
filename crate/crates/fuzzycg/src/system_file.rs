//! Plain-text linear system format.
//!
//! ```text
//! # comments run from '#' to the end of the line
//! m n
//! a_11 ... a_1n
//! ...
//! a_m1 ... a_mn
//! b_1 ... b_m
//! ```

use std::fmt::Write as _;
use std::path::Path;

use fuzzycg_core::{LinearSystem, Matrix, Vector};

use crate::error::{Error, Result};

fn parse_err(line: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        message: message.into(),
    }
}

fn numbers(line: usize, text: &str, expected: usize, what: &str) -> Result<Vec<f64>> {
    let values = text
        .split_whitespace()
        .map(|tok| {
            tok.parse::<f64>()
                .ok()
                .filter(|v| v.is_finite())
                .ok_or_else(|| parse_err(line, format!("invalid number '{tok}'")))
        })
        .collect::<Result<Vec<_>>>()?;
    if values.len() != expected {
        return Err(parse_err(
            line,
            format!("{what} has {} of {expected} entries", values.len()),
        ));
    }
    Ok(values)
}

pub fn parse_system(text: &str) -> Result<LinearSystem> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("").trim()))
        .filter(|(_, l)| !l.is_empty());

    let (line, header) = lines
        .next()
        .ok_or_else(|| parse_err(1, "missing dimension line"))?;
    let dims: Vec<usize> = header
        .split_whitespace()
        .map(|t| t.parse::<usize>())
        .collect::<std::result::Result<_, _>>()
        .map_err(|_| parse_err(line, format!("malformed dimension line '{header}'")))?;
    let (m, n) = match dims[..] {
        [m, n] if m > 0 && n > 0 => (m, n),
        _ => return Err(parse_err(line, format!("malformed dimension line '{header}'"))),
    };

    let mut a = Vec::with_capacity(m * n);
    let mut last = line;
    for r in 0..m {
        let (line, row) = lines
            .next()
            .ok_or_else(|| parse_err(last + 1, format!("missing row {} of A", r + 1)))?;
        a.extend(numbers(line, row, n, &format!("row {} of A", r + 1))?);
        last = line;
    }
    let (line, rhs) = lines
        .next()
        .ok_or_else(|| parse_err(last + 1, "missing right-hand side"))?;
    let b = numbers(line, rhs, m, "b")?;
    if let Some((line, _)) = lines.next() {
        return Err(parse_err(line, "unexpected content after right-hand side"));
    }
    let a = Matrix::new(m, n, a)?;
    Ok(LinearSystem::new(a, Vector::new(b)?)?)
}

/// Writes every value with the shortest representation that parses back to
/// the same `f64`, so `parse_system(&serialize_system(s)) == s`.
pub fn serialize_system(sys: &LinearSystem) -> String {
    let a = sys.a();
    let mut out = String::new();
    let _ = writeln!(out, "{} {}", a.rows(), a.cols());
    let join = |vals: &[f64]| {
        vals.iter()
            .map(|v| v.to_string())
            .collect::<Vec<_>>()
            .join(" ")
    };
    for i in 0..a.rows() {
        let _ = writeln!(out, "{}", join(a.row(i)));
    }
    let _ = writeln!(out, "{}", join(sys.b().as_slice()));
    out
}

pub fn read_system(path: &Path) -> Result<LinearSystem> {
    let text = std::fs::read_to_string(path).map_err(|source| Error::Io {
        path: path.display().to_string(),
        source,
    })?;
    parse_system(&text)
}
