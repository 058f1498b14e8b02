//! Thin singular value decomposition by one-sided Jacobi rotations, and the
//! pseudoinverse (minimum-norm least-squares) solve built on it.

use alloc::vec;
use alloc::vec::Vec;

use crate::linalg::{LinearSystem, Matrix, Vector};

const MAX_SWEEPS: usize = 80;

/// `A = U diag(s) V^T` with `r = min(m, n)` columns in `U` (`m x r`) and
/// `V` (`n x r`), singular values non-increasing.
#[derive(Debug, Clone, PartialEq)]
pub struct SvdResult {
    pub singular_values: Vec<f64>,
    pub u: Matrix,
    pub v: Matrix,
    /// Singular values at or below this count as zero.
    pub threshold: f64,
}

impl SvdResult {
    pub fn rank(&self) -> usize {
        self.singular_values
            .iter()
            .filter(|&&s| s > self.threshold)
            .count()
    }

    pub fn reconstruct(&self) -> Matrix {
        let (m, n, r) = (self.u.rows(), self.v.rows(), self.singular_values.len());
        let mut data = vec![0.0; m * n];
        for i in 0..m {
            for j in 0..n {
                data[i * n + j] = (0..r)
                    .map(|k| self.u.get(i, k) * self.singular_values[k] * self.v.get(j, k))
                    .sum();
            }
        }
        Matrix::from_raw(m, n, data)
    }

    /// `V diag(s)^+ U^T b`
    pub fn pinv_apply(&self, b: &Vector) -> Vector {
        let (m, n) = (self.u.rows(), self.v.rows());
        assert_eq!(b.len(), m, "right-hand side length must match U");
        let mut x = vec![0.0; n];
        for (k, &s) in self.singular_values.iter().enumerate() {
            if s <= self.threshold {
                continue;
            }
            let coef = (0..m).map(|i| self.u.get(i, k) * b[i]).sum::<f64>() / s;
            for (j, xj) in x.iter_mut().enumerate() {
                *xj += coef * self.v.get(j, k);
            }
        }
        Vector::from_raw(x)
    }
}

/// Column-major working copy for the rotations.
struct Columns {
    len: usize,
    data: Vec<f64>,
}

impl Columns {
    fn col(&self, k: usize) -> &[f64] {
        &self.data[k * self.len..(k + 1) * self.len]
    }

    fn rotate(&mut self, p: usize, q: usize, c: f64, s: f64) {
        for i in 0..self.len {
            let xp = self.data[p * self.len + i];
            let xq = self.data[q * self.len + i];
            self.data[p * self.len + i] = c * xp - s * xq;
            self.data[q * self.len + i] = s * xp + c * xq;
        }
    }
}

fn dot(u: &[f64], v: &[f64]) -> f64 {
    u.iter().zip(v).map(|(a, b)| a * b).sum()
}

pub fn svd(a: &Matrix) -> SvdResult {
    let (m, n) = (a.rows(), a.cols());
    let work = if m >= n { a.clone() } else { a.transpose() };
    let (rows, cols) = (work.rows(), work.cols());

    let mut u = Columns {
        len: rows,
        data: vec![0.0; rows * cols],
    };
    for i in 0..rows {
        for j in 0..cols {
            u.data[j * rows + i] = work.get(i, j);
        }
    }
    let mut v = Columns {
        len: cols,
        data: vec![0.0; cols * cols],
    };
    for j in 0..cols {
        v.data[j * cols + j] = 1.0;
    }

    for _ in 0..MAX_SWEEPS {
        let mut rotated = false;
        for p in 0..cols {
            for q in p + 1..cols {
                let alpha = dot(u.col(p), u.col(p));
                let beta = dot(u.col(q), u.col(q));
                let gamma = dot(u.col(p), u.col(q));
                if gamma == 0.0 || gamma.abs() <= f64::EPSILON * libm::sqrt(alpha * beta) {
                    continue;
                }
                rotated = true;
                let zeta = (beta - alpha) / (2.0 * gamma);
                let t = zeta.signum() / (zeta.abs() + libm::sqrt(1.0 + zeta * zeta));
                let t = if zeta == 0.0 { 1.0 } else { t };
                let c = 1.0 / libm::sqrt(1.0 + t * t);
                let s = c * t;
                u.rotate(p, q, c, s);
                v.rotate(p, q, c, s);
            }
        }
        if !rotated {
            break;
        }
    }

    let mut order: Vec<(f64, usize)> = (0..cols)
        .map(|k| (libm::sqrt(dot(u.col(k), u.col(k))), k))
        .collect();
    order.sort_by(|a, b| b.0.total_cmp(&a.0));

    let r = cols;
    let mut u_out = vec![0.0; rows * r];
    let mut v_out = vec![0.0; cols * r];
    let mut values = Vec::with_capacity(r);
    for (dst, &(s, src)) in order.iter().enumerate() {
        values.push(s);
        for i in 0..rows {
            u_out[i * r + dst] = if s > 0.0 { u.col(src)[i] / s } else { 0.0 };
        }
        for j in 0..cols {
            v_out[j * r + dst] = v.col(src)[j];
        }
    }
    let u_mat = Matrix::from_raw(rows, r, u_out);
    let v_mat = Matrix::from_raw(cols, r, v_out);
    let threshold = m.max(n) as f64 * f64::EPSILON * values.first().copied().unwrap_or(0.0);
    let (u, v) = if m >= n { (u_mat, v_mat) } else { (v_mat, u_mat) };
    SvdResult {
        singular_values: values,
        u,
        v,
        threshold,
    }
}

/// Minimum-norm least-squares solution `A^+ b`.
pub fn pinv_solve(sys: &LinearSystem) -> Vector {
    svd(sys.a()).pinv_apply(sys.b())
}
