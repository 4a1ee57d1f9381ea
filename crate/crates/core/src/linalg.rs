//! Dense complex linear algebra: Hermitian matrices, a cyclic Jacobi
//! eigensolver and LU determinants. Dimensions here stay in the low hundreds.

use alloc::vec;
use alloc::vec::Vec;

use num_complex::Complex64;

use crate::{Error, Result};

/// Largest tolerated entrywise deviation from H = H†.
pub const HERMITICITY_TOL: f64 = 1e-14;

/// Jacobi stops once the off-diagonal Frobenius norm falls below this
/// fraction of the full Frobenius norm.
pub const OFF_DIAGONAL_TARGET: f64 = 1e-12;

pub const MAX_SWEEPS: usize = 100;

/// Dense complex Hermitian matrix, row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct HermitianMatrix {
    dim: usize,
    entries: Vec<Complex64>,
}

impl HermitianMatrix {
    /// Checks the entry count and Hermiticity within [`HERMITICITY_TOL`].
    pub fn from_row_major(dim: usize, entries: Vec<Complex64>) -> Result<Self> {
        if entries.len() != dim * dim {
            return Err(Error::DimensionMismatch { expected: dim * dim, found: entries.len() });
        }
        for r in 0..dim {
            for c in r..dim {
                let deviation = (entries[r * dim + c] - entries[c * dim + r].conj()).norm();
                if deviation.is_nan() || deviation > HERMITICITY_TOL {
                    return Err(Error::NotHermitian { row: r, col: c, deviation });
                }
            }
        }
        Ok(Self { dim, entries })
    }

    pub(crate) fn zeros(dim: usize) -> Self {
        Self { dim, entries: vec![Complex64::new(0.0, 0.0); dim * dim] }
    }

    /// Adds `value` at (r, c) and its conjugate at (c, r).
    pub(crate) fn add_coupling(&mut self, r: usize, c: usize, value: Complex64) {
        debug_assert_ne!(r, c);
        self.entries[r * self.dim + c] += value;
        self.entries[c * self.dim + r] += value.conj();
    }

    pub(crate) fn add_diagonal(&mut self, r: usize, value: f64) {
        self.entries[r * self.dim + r] += value;
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, row: usize, col: usize) -> Complex64 {
        self.entries[row * self.dim + col]
    }

    pub fn entries(&self) -> &[Complex64] {
        &self.entries
    }

    pub fn apply(&self, v: &[Complex64]) -> Result<Vec<Complex64>> {
        if v.len() != self.dim {
            return Err(Error::DimensionMismatch { expected: self.dim, found: v.len() });
        }
        Ok(self
            .entries
            .chunks_exact(self.dim.max(1))
            .take(self.dim)
            .map(|row| row.iter().zip(v).map(|(a, b)| a * b).sum())
            .collect())
    }

    pub fn frobenius_norm(&self) -> f64 {
        libm::sqrt(self.entries.iter().map(|z| z.norm_sqr()).sum())
    }
}

/// Eigenpairs with ascending eigenvalues; `vectors[i]` belongs to `values[i]`.
#[derive(Debug, Clone)]
pub struct EigenDecomposition {
    pub values: Vec<f64>,
    pub vectors: Vec<Vec<Complex64>>,
}

/// Cyclic Jacobi diagonalisation of a Hermitian matrix.
///
/// Each rotation first removes the phase of the pivot with a diagonal unitary
/// and then applies the real symmetric Jacobi rotation, so the whole sweep
/// stays in complex arithmetic without doubling the dimension.
pub fn eig_hermitian(h: &HermitianMatrix) -> Result<EigenDecomposition> {
    let n = h.dim;
    let mut a = h.entries.clone();
    let mut v = vec![Complex64::new(0.0, 0.0); n * n];
    for i in 0..n {
        v[i * n + i] = Complex64::new(1.0, 0.0);
        a[i * n + i].im = 0.0;
    }
    let scale = h.frobenius_norm();
    let target = OFF_DIAGONAL_TARGET * scale;

    let off_norm = |a: &[Complex64]| -> f64 {
        let mut s = 0.0;
        for p in 0..n {
            for q in 0..n {
                if p != q {
                    s += a[p * n + q].norm_sqr();
                }
            }
        }
        libm::sqrt(s)
    };

    let mut sweeps = 0;
    loop {
        let off = off_norm(&a);
        if off <= target {
            break;
        }
        if sweeps == MAX_SWEEPS {
            return Err(Error::NoConvergence { sweeps, off_norm: off });
        }
        sweeps += 1;
        for p in 0..n {
            for q in p + 1..n {
                let pivot = a[p * n + q];
                let magnitude = pivot.norm();
                if magnitude == 0.0 {
                    continue;
                }
                let e = pivot / magnitude;
                let ebar = e.conj();
                let app = a[p * n + p].re;
                let aqq = a[q * n + q].re;
                let theta = (aqq - app) / (2.0 * magnitude);
                let t = if theta.is_finite() {
                    let sign = if theta >= 0.0 { 1.0 } else { -1.0 };
                    sign / (theta.abs() + libm::sqrt(theta * theta + 1.0))
                } else {
                    0.0
                };
                let c = 1.0 / libm::sqrt(t * t + 1.0);
                let s = t * c;

                // A <- A U
                for r in 0..n {
                    let arp = a[r * n + p];
                    let arq = a[r * n + q];
                    a[r * n + p] = arp * c - arq * ebar * s;
                    a[r * n + q] = arp * s + arq * ebar * c;
                }
                // A <- U^H A
                for r in 0..n {
                    let apr = a[p * n + r];
                    let aqr = a[q * n + r];
                    a[p * n + r] = apr * c - aqr * e * s;
                    a[q * n + r] = apr * s + aqr * e * c;
                }
                a[p * n + q] = Complex64::new(0.0, 0.0);
                a[q * n + p] = Complex64::new(0.0, 0.0);
                a[p * n + p].im = 0.0;
                a[q * n + q].im = 0.0;
                // V <- V U
                for r in 0..n {
                    let vrp = v[r * n + p];
                    let vrq = v[r * n + q];
                    v[r * n + p] = vrp * c - vrq * ebar * s;
                    v[r * n + q] = vrp * s + vrq * ebar * c;
                }
            }
        }
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| a[i * n + i].re.total_cmp(&a[j * n + j].re));
    let values = order.iter().map(|&i| a[i * n + i].re).collect();
    let vectors = order.iter().map(|&col| (0..n).map(|r| v[r * n + col]).collect()).collect();
    Ok(EigenDecomposition { values, vectors })
}

/// Determinant of a square row-major matrix by LU with partial pivoting.
pub fn determinant(mut m: Vec<Complex64>, n: usize) -> Complex64 {
    debug_assert_eq!(m.len(), n * n);
    let mut det = Complex64::new(1.0, 0.0);
    for col in 0..n {
        let pivot_row =
            (col..n).max_by(|&i, &j| m[i * n + col].norm().total_cmp(&m[j * n + col].norm())).unwrap_or(col);
        let pivot = m[pivot_row * n + col];
        if pivot.norm() == 0.0 {
            return Complex64::new(0.0, 0.0);
        }
        if pivot_row != col {
            for k in 0..n {
                m.swap(pivot_row * n + k, col * n + k);
            }
            det = -det;
        }
        det *= pivot;
        for r in col + 1..n {
            let factor = m[r * n + col] / pivot;
            if factor.norm() == 0.0 {
                continue;
            }
            for k in col..n {
                let sub = factor * m[col * n + k];
                m[r * n + k] -= sub;
            }
        }
    }
    det
}

pub(crate) fn inner(a: &[Complex64], b: &[Complex64]) -> Complex64 {
    a.iter().zip(b).map(|(x, y)| x.conj() * y).sum()
}

pub(crate) fn norm(a: &[Complex64]) -> f64 {
    libm::sqrt(a.iter().map(|z| z.norm_sqr()).sum())
}
