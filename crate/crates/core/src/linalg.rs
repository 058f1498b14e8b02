//! Dense real vectors and row-major matrices.
//!
//! Every kernel comes in two flavours: a plain method and a `*_counted`
//! method that adds the scalar additions and multiplications it performs to
//! a [`FlopCounter`]. Conventions: an `n`-term inner product costs `n`
//! multiplications and `n - 1` additions; a scaled update `y + t*x` costs `n`
//! of each.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::ops::Index;

use crate::error::{Error, Result};

/// Tally of scalar floating point operations.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct FlopCounter {
    pub additions: u64,
    pub multiplications: u64,
}

impl FlopCounter {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add(&mut self, n: usize) {
        self.additions += n as u64;
    }

    pub fn mul(&mut self, n: usize) {
        self.multiplications += n as u64;
    }

    pub fn total(&self) -> u64 {
        self.additions + self.multiplications
    }

    pub fn reset(&mut self) {
        *self = Self::default();
    }

    /// Operations performed since `earlier` was snapshotted.
    pub fn since(&self, earlier: &FlopCounter) -> FlopCounter {
        FlopCounter {
            additions: self.additions - earlier.additions,
            multiplications: self.multiplications - earlier.multiplications,
        }
    }

    pub fn merge(&mut self, other: &FlopCounter) {
        self.additions += other.additions;
        self.multiplications += other.multiplications;
    }
}

fn check_finite(data: &[f64]) -> Result<()> {
    match data.iter().position(|v| !v.is_finite()) {
        Some(index) => Err(Error::NonFinite { index }),
        None => Ok(()),
    }
}

fn check_len(op: &'static str, expected: usize, found: usize) -> Result<()> {
    if expected == found {
        Ok(())
    } else {
        Err(Error::DimensionMismatch {
            op,
            expected,
            found,
        })
    }
}

pub(crate) fn dot_slices(u: &[f64], v: &[f64], flops: &mut FlopCounter) -> f64 {
    debug_assert_eq!(u.len(), v.len());
    flops.mul(u.len());
    flops.add(u.len().saturating_sub(1));
    u.iter().zip(v).map(|(a, b)| a * b).sum()
}

/// `y += t * x`
pub(crate) fn axpy(t: f64, x: &[f64], y: &mut [f64], flops: &mut FlopCounter) {
    debug_assert_eq!(x.len(), y.len());
    flops.mul(x.len());
    flops.add(x.len());
    for (yi, xi) in y.iter_mut().zip(x) {
        *yi += t * xi;
    }
}

/// A non-empty vector of finite reals.
#[derive(Debug, Clone, PartialEq)]
pub struct Vector {
    data: Vec<f64>,
}

impl Vector {
    pub fn new(data: Vec<f64>) -> Result<Self> {
        if data.is_empty() {
            return Err(Error::Empty);
        }
        check_finite(&data)?;
        Ok(Self { data })
    }

    /// # Panics
    /// If `n == 0`.
    pub fn zeros(n: usize) -> Self {
        assert!(n > 0, "vector length must be positive");
        Self { data: vec![0.0; n] }
    }

    /// Skips validation. Callers check finiteness where overflow is possible.
    pub(crate) fn from_raw(data: Vec<f64>) -> Self {
        debug_assert!(!data.is_empty());
        Self { data }
    }

    pub(crate) fn as_mut_slice(&mut self) -> &mut [f64] {
        &mut self.data
    }

    pub(crate) fn is_all_finite(&self) -> bool {
        self.data.iter().all(|v| v.is_finite())
    }

    pub fn len(&self) -> usize {
        self.data.len()
    }

    /// Always `false`; vectors hold at least one entry.
    pub fn is_empty(&self) -> bool {
        self.data.is_empty()
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.data
    }

    pub fn into_vec(self) -> Vec<f64> {
        self.data
    }

    pub fn iter(&self) -> core::slice::Iter<'_, f64> {
        self.data.iter()
    }

    pub fn dot(&self, other: &Vector) -> Result<f64> {
        self.dot_counted(other, &mut FlopCounter::new())
    }

    pub fn dot_counted(&self, other: &Vector, flops: &mut FlopCounter) -> Result<f64> {
        check_len("dot", self.len(), other.len())?;
        Ok(dot_slices(&self.data, &other.data, flops))
    }

    pub fn norm2(&self) -> f64 {
        self.norm2_counted(&mut FlopCounter::new())
    }

    pub fn norm2_counted(&self, flops: &mut FlopCounter) -> f64 {
        libm::sqrt(dot_slices(&self.data, &self.data, flops))
    }

    pub fn norm_inf(&self) -> f64 {
        self.data.iter().fold(0.0, |m, v| m.max(v.abs()))
    }

    pub fn scaled(&self, factor: f64) -> Vector {
        Vector::from_raw(self.data.iter().map(|v| v * factor).collect())
    }

    /// Componentwise `self - other`.
    pub fn sub(&self, other: &Vector) -> Result<Vector> {
        check_len("sub", self.len(), other.len())?;
        Ok(Vector::from_raw(
            self.data.iter().zip(&other.data).map(|(a, b)| a - b).collect(),
        ))
    }

    /// Largest componentwise absolute difference.
    pub fn max_abs_diff(&self, other: &Vector) -> Result<f64> {
        Ok(self.sub(other)?.norm_inf())
    }
}

impl Index<usize> for Vector {
    type Output = f64;

    fn index(&self, i: usize) -> &f64 {
        &self.data[i]
    }
}

impl AsRef<[f64]> for Vector {
    fn as_ref(&self) -> &[f64] {
        &self.data
    }
}

/// Dense `rows x cols` matrix of finite reals in row-major order.
#[derive(Debug, Clone, PartialEq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<f64>,
}

impl Matrix {
    pub fn new(rows: usize, cols: usize, data: Vec<f64>) -> Result<Self> {
        if rows == 0 || cols == 0 {
            return Err(Error::Empty);
        }
        check_len("matrix entries", rows * cols, data.len())?;
        check_finite(&data)?;
        Ok(Self { rows, cols, data })
    }

    pub fn from_rows<R: AsRef<[f64]>>(rows: &[R]) -> Result<Self> {
        let m = rows.len();
        let n = rows.first().map_or(0, |r| r.as_ref().len());
        let mut data = Vec::with_capacity(m * n);
        for r in rows {
            check_len("row length", n, r.as_ref().len())?;
            data.extend_from_slice(r.as_ref());
        }
        Self::new(m, n, data)
    }

    pub fn identity(n: usize) -> Self {
        assert!(n > 0, "matrix dimension must be positive");
        let mut data = vec![0.0; n * n];
        for i in 0..n {
            data[i * n + i] = 1.0;
        }
        Self {
            rows: n,
            cols: n,
            data,
        }
    }

    pub(crate) fn from_raw(rows: usize, cols: usize, data: Vec<f64>) -> Self {
        debug_assert_eq!(rows * cols, data.len());
        Self { rows, cols, data }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.data[i * self.cols + j]
    }

    pub fn row(&self, i: usize) -> &[f64] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.data
    }

    pub fn transpose(&self) -> Matrix {
        let mut data = vec![0.0; self.data.len()];
        for i in 0..self.rows {
            for j in 0..self.cols {
                data[j * self.rows + i] = self.get(i, j);
            }
        }
        Matrix::from_raw(self.cols, self.rows, data)
    }

    pub fn frobenius_norm(&self) -> f64 {
        libm::sqrt(self.data.iter().map(|v| v * v).sum())
    }

    /// `A x`
    pub fn matvec(&self, x: &Vector) -> Result<Vector> {
        self.matvec_counted(x, &mut FlopCounter::new())
    }

    pub fn matvec_counted(&self, x: &Vector, flops: &mut FlopCounter) -> Result<Vector> {
        check_len("matvec", self.cols, x.len())?;
        let out = (0..self.rows)
            .map(|i| dot_slices(self.row(i), x.as_slice(), flops))
            .collect();
        Ok(Vector::from_raw(out))
    }

    /// `A^T y`, without forming the transpose.
    pub fn transpose_matvec(&self, y: &Vector) -> Result<Vector> {
        self.transpose_matvec_counted(y, &mut FlopCounter::new())
    }

    pub fn transpose_matvec_counted(&self, y: &Vector, flops: &mut FlopCounter) -> Result<Vector> {
        check_len("transpose_matvec", self.rows, y.len())?;
        let mut out = vec![0.0; self.cols];
        for (i, &yi) in y.iter().enumerate() {
            for (o, a) in out.iter_mut().zip(self.row(i)) {
                *o += a * yi;
            }
        }
        flops.mul(self.rows * self.cols);
        flops.add((self.rows - 1) * self.cols);
        Ok(Vector::from_raw(out))
    }

    /// `A^T (A d)` as two matrix-vector products; `A^T A` is never formed.
    pub fn normal_apply(&self, d: &Vector) -> Result<Vector> {
        self.normal_apply_counted(d, &mut FlopCounter::new())
    }

    pub fn normal_apply_counted(&self, d: &Vector, flops: &mut FlopCounter) -> Result<Vector> {
        let ad = self.matvec_counted(d, flops)?;
        self.transpose_matvec_counted(&ad, flops)
    }
}

/// Shape of `Ax = b` in terms of equations `m` and unknowns `n`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SystemKind {
    ExactlyDetermined,
    Underdetermined,
    Overdetermined,
}

impl fmt::Display for SystemKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SystemKind::ExactlyDetermined => "exactly determined",
            SystemKind::Underdetermined => "underdetermined",
            SystemKind::Overdetermined => "overdetermined",
        })
    }
}

/// The pair `(A, b)` of `Ax = b`.
#[derive(Debug, Clone, PartialEq)]
pub struct LinearSystem {
    a: Matrix,
    b: Vector,
}

impl LinearSystem {
    pub fn new(a: Matrix, b: Vector) -> Result<Self> {
        check_len("right-hand side", a.rows(), b.len())?;
        Ok(Self { a, b })
    }

    pub fn a(&self) -> &Matrix {
        &self.a
    }

    pub fn b(&self) -> &Vector {
        &self.b
    }

    /// Number of equations.
    pub fn equations(&self) -> usize {
        self.a.rows()
    }

    /// Number of unknowns.
    pub fn unknowns(&self) -> usize {
        self.a.cols()
    }

    pub fn classify(&self) -> SystemKind {
        use core::cmp::Ordering::*;
        match self.unknowns().cmp(&self.equations()) {
            Equal => SystemKind::ExactlyDetermined,
            Greater => SystemKind::Underdetermined,
            Less => SystemKind::Overdetermined,
        }
    }

    /// `A x - b`
    pub fn residual(&self, x: &Vector) -> Result<Vector> {
        self.residual_counted(x, &mut FlopCounter::new())
    }

    pub fn residual_counted(&self, x: &Vector, flops: &mut FlopCounter) -> Result<Vector> {
        let mut r = self.a.matvec_counted(x, flops)?;
        for (ri, bi) in r.as_mut_slice().iter_mut().zip(self.b.iter()) {
            *ri -= bi;
        }
        flops.add(self.b.len());
        Ok(r)
    }
}
