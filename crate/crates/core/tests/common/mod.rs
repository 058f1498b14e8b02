#![allow(dead_code)]

use fuzzycg_core::{LinearSystem, Matrix, Vector};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn random_matrix(rng: &mut impl Rng, m: usize, n: usize) -> Matrix {
    Matrix::new(m, n, (0..m * n).map(|_| rng.gen_range(-1.0..1.0)).collect()).unwrap()
}

pub fn random_vector(rng: &mut impl Rng, n: usize) -> Vector {
    Vector::new((0..n).map(|_| rng.gen_range(-1.0..1.0)).collect()).unwrap()
}

/// Random square matrix with `shift` added on the diagonal.
pub fn shifted_matrix(rng: &mut impl Rng, n: usize, shift: f64) -> Matrix {
    let mut data: Vec<f64> = (0..n * n).map(|_| rng.gen_range(-1.0..1.0)).collect();
    for i in 0..n {
        data[i * n + i] += shift;
    }
    Matrix::new(n, n, data).unwrap()
}

pub fn random_system(rng: &mut impl Rng, m: usize, n: usize) -> LinearSystem {
    LinearSystem::new(random_matrix(rng, m, n), random_vector(rng, m)).unwrap()
}

/// Gaussian elimination with partial pivoting on a dense copy.
pub fn gauss_solve(mut a: Vec<Vec<f64>>, mut b: Vec<f64>) -> Vec<f64> {
    let n = b.len();
    for col in 0..n {
        let piv = (col..n)
            .max_by(|&i, &j| a[i][col].abs().total_cmp(&a[j][col].abs()))
            .unwrap();
        a.swap(col, piv);
        b.swap(col, piv);
        for r in col + 1..n {
            let f = a[r][col] / a[col][col];
            for c in col..n {
                a[r][c] -= f * a[col][c];
            }
            b[r] -= f * b[col];
        }
    }
    let mut x = vec![0.0; n];
    for r in (0..n).rev() {
        let s: f64 = (r + 1..n).map(|c| a[r][c] * x[c]).sum();
        x[r] = (b[r] - s) / a[r][r];
    }
    x
}

/// Minimum-norm / least-squares solution of a full-rank system through the
/// small Gram system: `x = A^T (A A^T)^{-1} b` when `m <= n`, else
/// `(A^T A)^{-1} A^T b`.
pub fn full_rank_lstsq(sys: &LinearSystem) -> Vec<f64> {
    let a = sys.a();
    let (m, n) = (a.rows(), a.cols());
    let b = sys.b().as_slice();
    if m <= n {
        let gram: Vec<Vec<f64>> = (0..m)
            .map(|i| (0..m).map(|j| (0..n).map(|k| a.get(i, k) * a.get(j, k)).sum()).collect())
            .collect();
        let y = gauss_solve(gram, b.to_vec());
        (0..n).map(|k| (0..m).map(|i| a.get(i, k) * y[i]).sum()).collect()
    } else {
        let gram: Vec<Vec<f64>> = (0..n)
            .map(|i| (0..n).map(|j| (0..m).map(|k| a.get(k, i) * a.get(k, j)).sum()).collect())
            .collect();
        let rhs: Vec<f64> = (0..n).map(|i| (0..m).map(|k| a.get(k, i) * b[k]).sum()).collect();
        gauss_solve(gram, rhs)
    }
}

pub fn max_abs_diff(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y).abs()).fold(0.0, f64::max)
}
