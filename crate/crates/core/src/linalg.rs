//! Small dense vectors and matrices.
//!
//! Every tensor in this crate lives on a manifold of dimension at most
//! `n + 1 = 8`, so storage is a fixed-size array with a logical length. No
//! heap, no generic dimension parameters.

use core::ops::{Index, IndexMut};

use crate::fmath::sqrt;

pub const MAX_DIM: usize = 8;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Vector {
    len: usize,
    data: [f64; MAX_DIM],
}

impl Vector {
    pub fn zeros(len: usize) -> Self {
        assert!(len <= MAX_DIM, "vector length {len} exceeds {MAX_DIM}");
        Vector {
            len,
            data: [0.0; MAX_DIM],
        }
    }

    pub fn from_slice(values: &[f64]) -> Self {
        let mut v = Vector::zeros(values.len());
        v.data[..values.len()].copy_from_slice(values);
        v
    }

    pub fn from_fn(len: usize, mut f: impl FnMut(usize) -> f64) -> Self {
        let mut v = Vector::zeros(len);
        for i in 0..len {
            v.data[i] = f(i);
        }
        v
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.data[..self.len]
    }

    pub fn dot(&self, other: &Vector) -> f64 {
        debug_assert_eq!(self.len, other.len);
        self.as_slice()
            .iter()
            .zip(other.as_slice())
            .map(|(a, b)| a * b)
            .sum()
    }

    pub fn scale(&self, s: f64) -> Vector {
        Vector::from_fn(self.len, |i| self.data[i] * s)
    }

    pub fn add(&self, other: &Vector) -> Vector {
        Vector::from_fn(self.len, |i| self.data[i] + other.data[i])
    }

    pub fn max_abs(&self) -> f64 {
        self.as_slice().iter().fold(0.0, |m, x| m.max(x.abs()))
    }

    pub fn min(&self) -> f64 {
        self.as_slice().iter().copied().fold(f64::INFINITY, f64::min)
    }

    pub fn max(&self) -> f64 {
        self.as_slice()
            .iter()
            .copied()
            .fold(f64::NEG_INFINITY, f64::max)
    }
}

impl Index<usize> for Vector {
    type Output = f64;
    fn index(&self, i: usize) -> &f64 {
        debug_assert!(i < self.len);
        &self.data[i]
    }
}

impl IndexMut<usize> for Vector {
    fn index_mut(&mut self, i: usize) -> &mut f64 {
        debug_assert!(i < self.len);
        &mut self.data[i]
    }
}

/// Square matrix of logical size `dim <= MAX_DIM`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Matrix {
    dim: usize,
    data: [[f64; MAX_DIM]; MAX_DIM],
}

impl Matrix {
    pub fn zeros(dim: usize) -> Self {
        assert!(dim <= MAX_DIM, "matrix size {dim} exceeds {MAX_DIM}");
        Matrix {
            dim,
            data: [[0.0; MAX_DIM]; MAX_DIM],
        }
    }

    pub fn identity(dim: usize) -> Self {
        Matrix::from_fn(dim, |i, j| if i == j { 1.0 } else { 0.0 })
    }

    pub fn diagonal(values: &[f64]) -> Self {
        let n = values.len();
        Matrix::from_fn(n, |i, j| if i == j { values[i] } else { 0.0 })
    }

    pub fn from_fn(dim: usize, mut f: impl FnMut(usize, usize) -> f64) -> Self {
        let mut m = Matrix::zeros(dim);
        for i in 0..dim {
            for j in 0..dim {
                m.data[i][j] = f(i, j);
            }
        }
        m
    }

    pub fn outer(u: &Vector, v: &Vector) -> Self {
        Matrix::from_fn(u.len(), |i, j| u[i] * v[j])
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn transpose(&self) -> Matrix {
        Matrix::from_fn(self.dim, |i, j| self.data[j][i])
    }

    pub fn symmetric_part(&self) -> Matrix {
        Matrix::from_fn(self.dim, |i, j| 0.5 * (self.data[i][j] + self.data[j][i]))
    }

    pub fn mul(&self, other: &Matrix) -> Matrix {
        let n = self.dim;
        Matrix::from_fn(n, |i, j| (0..n).map(|k| self.data[i][k] * other.data[k][j]).sum())
    }

    pub fn mul_vec(&self, v: &Vector) -> Vector {
        let n = self.dim;
        Vector::from_fn(n, |i| (0..n).map(|k| self.data[i][k] * v[k]).sum())
    }

    pub fn add(&self, other: &Matrix) -> Matrix {
        Matrix::from_fn(self.dim, |i, j| self.data[i][j] + other.data[i][j])
    }

    pub fn sub(&self, other: &Matrix) -> Matrix {
        Matrix::from_fn(self.dim, |i, j| self.data[i][j] - other.data[i][j])
    }

    pub fn scale(&self, s: f64) -> Matrix {
        Matrix::from_fn(self.dim, |i, j| self.data[i][j] * s)
    }

    pub fn trace(&self) -> f64 {
        (0..self.dim).map(|i| self.data[i][i]).sum()
    }

    /// `u^T M v`.
    pub fn bilinear(&self, u: &Vector, v: &Vector) -> f64 {
        let n = self.dim;
        let mut acc = 0.0;
        for i in 0..n {
            for j in 0..n {
                acc += u[i] * self.data[i][j] * v[j];
            }
        }
        acc
    }

    /// Entrywise (Frobenius) inner product.
    pub fn frobenius(&self, other: &Matrix) -> f64 {
        let n = self.dim;
        let mut acc = 0.0;
        for i in 0..n {
            for j in 0..n {
                acc += self.data[i][j] * other.data[i][j];
            }
        }
        acc
    }

    pub fn max_abs(&self) -> f64 {
        let mut m: f64 = 0.0;
        for i in 0..self.dim {
            for j in 0..self.dim {
                m = m.max(self.data[i][j].abs());
            }
        }
        m
    }

    pub fn asymmetry(&self) -> f64 {
        let mut m: f64 = 0.0;
        for i in 0..self.dim {
            for j in 0..i {
                m = m.max((self.data[i][j] - self.data[j][i]).abs());
            }
        }
        m
    }

    /// Principal submatrix obtained by dropping nothing but keeping rows and
    /// columns `offset..offset + dim`.
    pub fn block(&self, offset: usize, dim: usize) -> Matrix {
        Matrix::from_fn(dim, |i, j| self.data[offset + i][offset + j])
    }

    /// Gauss-Jordan inverse with partial pivoting.
    pub fn inverse(&self) -> Option<Matrix> {
        let n = self.dim;
        let mut a = *self;
        let mut inv = Matrix::identity(n);
        let scale = self.max_abs();
        if scale == 0.0 {
            return None;
        }
        for col in 0..n {
            let pivot = (col..n)
                .max_by(|&x, &y| a.data[x][col].abs().total_cmp(&a.data[y][col].abs()))
                .unwrap_or(col);
            if a.data[pivot][col].abs() <= 1e-300 {
                return None;
            }
            a.data.swap(col, pivot);
            inv.data.swap(col, pivot);
            let p = a.data[col][col];
            for j in 0..n {
                a.data[col][j] /= p;
                inv.data[col][j] /= p;
            }
            for row in 0..n {
                if row != col {
                    let factor = a.data[row][col];
                    if factor != 0.0 {
                        for j in 0..n {
                            a.data[row][j] -= factor * a.data[col][j];
                            inv.data[row][j] -= factor * inv.data[col][j];
                        }
                    }
                }
            }
        }
        Some(inv)
    }

    /// Lower-triangular Cholesky factor of a symmetric positive definite matrix.
    pub fn cholesky(&self) -> Option<Matrix> {
        let n = self.dim;
        let mut l = Matrix::zeros(n);
        for i in 0..n {
            for j in 0..=i {
                let mut s = self.data[i][j];
                for k in 0..j {
                    s -= l.data[i][k] * l.data[j][k];
                }
                if i == j {
                    if s <= 0.0 {
                        return None;
                    }
                    l.data[i][i] = sqrt(s);
                } else {
                    l.data[i][j] = s / l.data[j][j];
                }
            }
        }
        Some(l)
    }

    /// Inverse of a lower-triangular matrix by forward substitution.
    pub fn lower_triangular_inverse(&self) -> Matrix {
        let n = self.dim;
        let mut inv = Matrix::zeros(n);
        for col in 0..n {
            for i in col..n {
                let mut s = if i == col { 1.0 } else { 0.0 };
                for k in col..i {
                    s -= self.data[i][k] * inv.data[k][col];
                }
                inv.data[i][col] = s / self.data[i][i];
            }
        }
        inv
    }

    /// Eigenvalues of a symmetric matrix by cyclic Jacobi rotations, ascending.
    pub fn symmetric_eigenvalues(&self) -> Vector {
        let n = self.dim;
        let mut a = self.symmetric_part();
        for _sweep in 0..100 {
            let mut off = 0.0;
            for p in 0..n {
                for q in (p + 1)..n {
                    off += a.data[p][q] * a.data[p][q];
                }
            }
            let diag: f64 = (0..n).map(|i| a.data[i][i] * a.data[i][i]).sum();
            if off <= 1e-32 * diag.max(1e-300) {
                break;
            }
            for p in 0..n {
                for q in (p + 1)..n {
                    let apq = a.data[p][q];
                    if apq == 0.0 {
                        continue;
                    }
                    let theta = (a.data[q][q] - a.data[p][p]) / (2.0 * apq);
                    let t = theta.signum() / (theta.abs() + sqrt(theta * theta + 1.0));
                    let t = if theta == 0.0 { 1.0 } else { t };
                    let c = 1.0 / sqrt(t * t + 1.0);
                    let s = t * c;
                    for k in 0..n {
                        let akp = a.data[k][p];
                        let akq = a.data[k][q];
                        a.data[k][p] = c * akp - s * akq;
                        a.data[k][q] = s * akp + c * akq;
                    }
                    for k in 0..n {
                        let apk = a.data[p][k];
                        let aqk = a.data[q][k];
                        a.data[p][k] = c * apk - s * aqk;
                        a.data[q][k] = s * apk + c * aqk;
                    }
                }
            }
        }
        let mut eig = Vector::from_fn(n, |i| a.data[i][i]);
        eig.data[..n].sort_by(f64::total_cmp);
        eig
    }

    /// Eigenvalues of `metric^{-1} form` for a symmetric form and a positive
    /// definite metric: the principal values of the form relative to the metric.
    pub fn generalized_eigenvalues(form: &Matrix, metric: &Matrix) -> Option<Vector> {
        let l_inv = metric.cholesky()?.lower_triangular_inverse();
        Some(l_inv.mul(form).mul(&l_inv.transpose()).symmetric_eigenvalues())
    }

    /// The form expressed in a metric-orthonormal frame, `L^{-1} form L^{-T}`.
    pub fn in_orthonormal_frame(form: &Matrix, metric: &Matrix) -> Option<Matrix> {
        let l_inv = metric.cholesky()?.lower_triangular_inverse();
        Some(l_inv.mul(form).mul(&l_inv.transpose()).symmetric_part())
    }
}

impl Index<(usize, usize)> for Matrix {
    type Output = f64;
    fn index(&self, (i, j): (usize, usize)) -> &f64 {
        debug_assert!(i < self.dim && j < self.dim);
        &self.data[i][j]
    }
}

impl IndexMut<(usize, usize)> for Matrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut f64 {
        debug_assert!(i < self.dim && j < self.dim);
        &mut self.data[i][j]
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample() -> Matrix {
        Matrix::from_fn(4, |i, j| {
            let (a, b) = (i.min(j) as f64, i.max(j) as f64);
            1.0 / (1.0 + a + b) + if i == j { 2.0 } else { 0.0 }
        })
    }

    #[test]
    fn inverse_round_trip() {
        let m = sample();
        let inv = m.inverse().unwrap();
        let id = m.mul(&inv);
        assert!(id.sub(&Matrix::identity(4)).max_abs() < 1e-14);
    }

    #[test]
    fn singular_matrix_has_no_inverse() {
        let m = Matrix::from_fn(3, |i, _| i as f64);
        assert!(m.inverse().is_none());
    }

    #[test]
    fn cholesky_reconstructs() {
        let m = sample();
        let l = m.cholesky().unwrap();
        assert!(l.mul(&l.transpose()).sub(&m).max_abs() < 1e-14);
        let li = l.lower_triangular_inverse();
        assert!(li.mul(&l).sub(&Matrix::identity(4)).max_abs() < 1e-14);
    }

    #[test]
    fn jacobi_eigenvalues_match_trace_and_determinant() {
        let m = Matrix::from_fn(2, |i, j| [[2.0, 1.0], [1.0, 3.0]][i][j]);
        let e = m.symmetric_eigenvalues();
        let disc = sqrt(5.0);
        assert!((e[0] - (2.5 - disc / 2.0)).abs() < 1e-14);
        assert!((e[1] - (2.5 + disc / 2.0)).abs() < 1e-14);
    }

    #[test]
    fn generalized_eigenvalues_of_scaled_metric() {
        let g = Matrix::diagonal(&[1.0, 4.0, 9.0]);
        let a = Matrix::diagonal(&[2.0, 4.0, 27.0]);
        let e = Matrix::generalized_eigenvalues(&a, &g).unwrap();
        assert!((e[0] - 1.0).abs() < 1e-14);
        assert!((e[1] - 2.0).abs() < 1e-14);
        assert!((e[2] - 3.0).abs() < 1e-14);
    }
}
