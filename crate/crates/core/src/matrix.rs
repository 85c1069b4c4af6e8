//! Elementary symmetric functions of a symmetric matrix and the
//! `σ₁σ₁(A|k) ≥ σ₂ + …` inequality with its remainder.
//!
//! Indices `k` are 1-based, as in `σ₁(A|k)`.

use alloc::format;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::linalg::{Matrix, MAX_DIM};

/// Symmetric `n×n` matrix stored as its packed upper triangle.
#[derive(Clone, Debug, PartialEq)]
pub struct SymMatrix {
    n: usize,
    upper: Vec<f64>,
}

fn packed(n: usize, i: usize, j: usize) -> usize {
    let (i, j) = if i <= j { (i, j) } else { (j, i) };
    i * n - i * (i + 1) / 2 + j
}

impl SymMatrix {
    /// Builds from `f(i, j)` evaluated for `i ≤ j` only.
    pub fn from_upper(n: usize, mut f: impl FnMut(usize, usize) -> f64) -> Result<Self> {
        if !(2..=7).contains(&n) {
            return Err(Error::domain(format!("matrix size {n} outside 2..=7")));
        }
        let mut upper = Vec::with_capacity(n * (n + 1) / 2);
        for i in 0..n {
            for j in i..n {
                upper.push(f(i, j));
            }
        }
        if upper.iter().any(|x| !x.is_finite()) {
            return Err(Error::non_finite("matrix entry", format!("size {n}")));
        }
        Ok(SymMatrix { n, upper })
    }

    pub fn diagonal(values: &[f64]) -> Result<Self> {
        Self::from_upper(values.len(), |i, j| if i == j { values[i] } else { 0.0 })
    }

    pub fn identity(n: usize) -> Result<Self> {
        Self::from_upper(n, |i, j| if i == j { 1.0 } else { 0.0 })
    }

    /// Symmetric part of a dense matrix.
    pub fn from_matrix(m: &Matrix) -> Result<Self> {
        Self::from_upper(m.dim(), |i, j| 0.5 * (m[(i, j)] + m[(j, i)]))
    }

    /// Row-major entries; the lower triangle is ignored.
    pub fn from_rows(n: usize, entries: &[f64]) -> Result<Self> {
        if entries.len() != n * n {
            return Err(Error::domain(format!("expected {} entries, got {}", n * n, entries.len())));
        }
        Self::from_upper(n, |i, j| entries[i * n + j])
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.upper[packed(self.n, i, j)]
    }

    pub fn to_matrix(&self) -> Matrix {
        debug_assert!(self.n <= MAX_DIM);
        Matrix::from_fn(self.n, |i, j| self.get(i, j))
    }

    /// Largest absolute entry.
    pub fn norm(&self) -> f64 {
        self.upper.iter().fold(0.0, |m, x| m.max(x.abs()))
    }

    fn check_k(&self, k: usize) -> Result<usize> {
        if k == 0 || k > self.n {
            return Err(Error::domain(format!("k = {k} outside 1..={}", self.n)));
        }
        Ok(k - 1)
    }
}

pub fn sigma1(a: &SymMatrix) -> f64 {
    (0..a.n).map(|i| a.get(i, i)).sum()
}

/// `σ₁(A) − a_kk`.
pub fn sigma1_bar(a: &SymMatrix, k: usize) -> Result<f64> {
    let k = a.check_k(k)?;
    Ok((0..a.n).filter(|&i| i != k).map(|i| a.get(i, i)).sum())
}

/// `Σ_{i<j} (a_ii a_jj − a_ij²)`.
pub fn sigma2(a: &SymMatrix) -> f64 {
    let mut s = 0.0;
    for i in 0..a.n {
        for j in i + 1..a.n {
            s += a.get(i, i) * a.get(j, j) - a.get(i, j) * a.get(i, j);
        }
    }
    s
}

/// `σ₁σ₁(A|k) − σ₂ − (n/(2(n−1))) σ₁(A|k)²`.
pub fn inequality_gap(a: &SymMatrix, k: usize) -> Result<f64> {
    let bar = sigma1_bar(a, k)?;
    let nf = a.n as f64;
    Ok(sigma1(a) * bar - sigma2(a) - nf / (2.0 * (nf - 1.0)) * bar * bar)
}

/// The two non-negative terms the gap equals.
pub fn gap_remainder(a: &SymMatrix, k: usize) -> Result<f64> {
    let k0 = a.check_k(k)?;
    let n = a.n;
    let (mut off, mut spread) = (0.0, 0.0);
    for i in 0..n {
        for j in i + 1..n {
            off += a.get(i, j) * a.get(i, j);
            if i != k0 && j != k0 {
                let d = a.get(i, i) - a.get(j, j);
                spread += d * d;
            }
        }
    }
    Ok(off + spread / (2.0 * (n as f64 - 1.0)))
}

/// `|gap − remainder|`; zero up to rounding for every symmetric matrix.
pub fn identity_residual(a: &SymMatrix, k: usize) -> Result<f64> {
    Ok((inequality_gap(a, k)? - gap_remainder(a, k)?).abs())
}

pub const EQUALITY_THRESHOLD: f64 = 1e-10;

/// Diagonal with `a_ii` equal for all `i ≠ k`, up to `1e−10·‖A‖`.
pub fn is_equality_case(a: &SymMatrix, k: usize) -> Result<bool> {
    let k0 = a.check_k(k)?;
    let tol = EQUALITY_THRESHOLD * a.norm();
    let n = a.n;
    for i in 0..n {
        for j in i + 1..n {
            if a.get(i, j).abs() > tol {
                return Ok(false);
            }
        }
    }
    let diag: Vec<f64> = (0..n).filter(|&i| i != k0).map(|i| a.get(i, i)).collect();
    let lo = diag.iter().copied().fold(f64::INFINITY, f64::min);
    let hi = diag.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    Ok(hi - lo <= tol)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn identity_examples() {
        let i3 = SymMatrix::identity(3).unwrap();
        assert_eq!(sigma1(&i3), 3.0);
        assert_eq!(sigma1_bar(&i3, 1).unwrap(), 2.0);
        assert_eq!(sigma2(&i3), 3.0);
        let dg = SymMatrix::diagonal(&[2.5, -0.75]).unwrap();
        assert_eq!(sigma1_bar(&dg, 1).unwrap(), -0.75);
        assert_eq!(identity_residual(&dg, 1).unwrap(), 0.0);
        assert!(sigma1_bar(&dg, 0).is_err());
        assert!(sigma1_bar(&dg, 3).is_err());
    }

    #[test]
    fn ones_matrix_by_hand() {
        // σ₁ = 3, σ₁(A|2) = 2, σ₂ = 0: gap = 6 − 0 − 3 = 3 = three unit
        // off-diagonal squares plus a zero spread term.
        let a = SymMatrix::from_upper(3, |_, _| 1.0).unwrap();
        assert_eq!(inequality_gap(&a, 2).unwrap(), 3.0);
        assert!(identity_residual(&a, 2).unwrap() <= 1e-12);
        assert!(!is_equality_case(&a, 2).unwrap());
    }

    #[test]
    fn equality_case() {
        let a = SymMatrix::diagonal(&[7.0, 2.0, 2.0, 2.0]).unwrap();
        assert_eq!(inequality_gap(&a, 1).unwrap(), 0.0);
        assert!(is_equality_case(&a, 1).unwrap());
        assert!(!is_equality_case(&a, 2).unwrap());
        let eps = 1e-3;
        let b = SymMatrix::from_upper(4, |i, j| match (i, j) {
            (0, 0) => 7.0,
            (1, 2) => eps,
            (i, j) if i == j => 2.0,
            _ => 0.0,
        })
        .unwrap();
        assert!(inequality_gap(&b, 1).unwrap() >= eps * eps - 1e-12);
    }

    #[test]
    fn packed_layout() {
        let a = SymMatrix::from_rows(3, &[1.0, 2.0, 3.0, 9.0, 4.0, 5.0, 9.0, 9.0, 6.0]).unwrap();
        assert_eq!(a.get(2, 1), 5.0);
        assert_eq!(a.get(0, 2), 3.0);
        assert_eq!(a.to_matrix()[(1, 0)], 2.0);
    }
}
