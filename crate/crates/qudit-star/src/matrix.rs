//! Dense complex matrices: the universal operator carrier.

use nalgebra::DMatrix;
use num_complex::Complex64;
use std::ops::{Add, Index, Mul, Sub};

use crate::error::{Error, Result};

/// Shorthand constructor for a complex value.
#[inline]
pub fn c64(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

/// A dense `d × d` complex matrix.
///
/// Carrier for every operator in the crate: density matrices, dequantizers,
/// quantizers, observables. Immutable after construction; every operation
/// returns a new value, so sharing across threads needs no synchronization.
#[derive(Clone, Debug, PartialEq)]
pub struct ComplexMatrix {
    data: DMatrix<Complex64>,
}

impl ComplexMatrix {
    pub fn zeros(dim: usize) -> Self {
        Self {
            data: DMatrix::zeros(dim, dim),
        }
    }

    pub fn identity(dim: usize) -> Self {
        Self {
            data: DMatrix::identity(dim, dim),
        }
    }

    /// Builds a `dim × dim` matrix from an entry function `(row, col) -> value`.
    pub fn from_fn(dim: usize, f: impl FnMut(usize, usize) -> Complex64) -> Self {
        Self {
            data: DMatrix::from_fn(dim, dim, f),
        }
    }

    /// Builds a matrix from row slices; fails unless the array is square.
    pub fn from_rows(rows: &[Vec<Complex64>]) -> Result<Self> {
        let dim = rows.len();
        if dim == 0 || rows.iter().any(|r| r.len() != dim) {
            return Err(Error::BadShape {
                what: format!("expected a square matrix, got {} ragged rows", dim),
            });
        }
        Ok(Self::from_fn(dim, |r, c| rows[r][c]))
    }

    pub fn dim(&self) -> usize {
        self.data.nrows()
    }

    #[inline]
    pub fn get(&self, row: usize, col: usize) -> Complex64 {
        self.data[(row, col)]
    }

    pub fn trace(&self) -> Complex64 {
        self.data.trace()
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> Self {
        Self {
            data: self.data.adjoint(),
        }
    }

    pub fn scale(&self, factor: Complex64) -> Self {
        Self {
            data: &self.data * factor,
        }
    }

    /// `Tr(self · rhs)` without forming the product matrix.
    pub fn trace_product(&self, rhs: &Self) -> Complex64 {
        assert_eq!(self.dim(), rhs.dim(), "trace_product dimension mismatch");
        let d = self.dim();
        let mut acc = Complex64::new(0.0, 0.0);
        for j in 0..d {
            for k in 0..d {
                acc += self.data[(j, k)] * rhs.data[(k, j)];
            }
        }
        acc
    }

    /// Largest entrywise deviation from `M = M†`.
    pub fn hermiticity_error(&self) -> f64 {
        let d = self.dim();
        let mut max = 0.0f64;
        for r in 0..d {
            for c in r..d {
                let dev = (self.data[(r, c)] - self.data[(c, r)].conj()).norm();
                max = max.max(dev);
            }
        }
        max
    }

    pub fn is_hermitian(&self, tol: f64) -> bool {
        self.hermiticity_error() <= tol
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    /// Entrywise max-norm distance to `rhs`.
    pub fn max_abs_diff(&self, rhs: &Self) -> f64 {
        assert_eq!(self.dim(), rhs.dim(), "max_abs_diff dimension mismatch");
        self.data
            .iter()
            .zip(rhs.data.iter())
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    /// `self · rhs − rhs · self`.
    pub fn commutator(&self, rhs: &Self) -> Self {
        Self {
            data: &self.data * &rhs.data - &rhs.data * &self.data,
        }
    }

    /// Eigenvalues of a Hermitian matrix, ascending. The caller is responsible
    /// for Hermiticity; only the lower triangle is consulted.
    pub fn hermitian_eigenvalues(&self) -> Vec<f64> {
        let eig = self.data.clone().symmetric_eigen();
        let mut vals: Vec<f64> = eig.eigenvalues.iter().copied().collect();
        vals.sort_by(|a, b| a.partial_cmp(b).unwrap());
        vals
    }

    /// True when every eigenvalue is at least `-tol`.
    pub fn is_positive_semidefinite(&self, tol: f64) -> bool {
        self.hermitian_eigenvalues()
            .first()
            .map(|&lo| lo >= -tol)
            .unwrap_or(true)
    }
}

impl Index<(usize, usize)> for ComplexMatrix {
    type Output = Complex64;

    fn index(&self, idx: (usize, usize)) -> &Complex64 {
        &self.data[idx]
    }
}

impl Add for &ComplexMatrix {
    type Output = ComplexMatrix;

    fn add(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        ComplexMatrix {
            data: &self.data + &rhs.data,
        }
    }
}

impl Sub for &ComplexMatrix {
    type Output = ComplexMatrix;

    fn sub(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        ComplexMatrix {
            data: &self.data - &rhs.data,
        }
    }
}

impl Mul for &ComplexMatrix {
    type Output = ComplexMatrix;

    fn mul(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        ComplexMatrix {
            data: &self.data * &rhs.data,
        }
    }
}
