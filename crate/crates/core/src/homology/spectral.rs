use nalgebra::{DMatrix, DVector, SymmetricEigen};
use serde::Serialize;

use crate::error::{Error, Result};

/// Default kernel tolerance, relative to the largest eigenvalue.
pub const DEFAULT_ZERO_TOL: f64 = 1e-8;

/// Absolute cutoff below which an eigenvalue counts as zero.
#[inline]
pub fn kernel_threshold(lambda_max: f64, zero_tol: f64) -> f64 {
    zero_tol * lambda_max.abs().max(1.0)
}

/// Eigen-decomposition of a real symmetric matrix, eigenvalues ascending.
#[derive(Clone, Debug)]
pub struct Eigensystem {
    pub values: Vec<f64>,
    /// Column j is the unit eigenvector for `values[j]`.
    pub vectors: DMatrix<f64>,
}

impl Eigensystem {
    pub fn new(matrix: &DMatrix<f64>) -> Result<Self> {
        if !matrix.is_square() {
            return Err(Error::DimensionMismatch { expected: matrix.nrows(), found: matrix.ncols() });
        }
        let dim = matrix.nrows();
        if dim == 0 {
            return Ok(Self { values: Vec::new(), vectors: DMatrix::zeros(0, 0) });
        }
        let sym = (matrix + matrix.transpose()) * 0.5;
        let eig = SymmetricEigen::try_new(sym, f64::EPSILON, 0)
            .ok_or_else(|| Error::Numerical("symmetric eigen-solver did not converge".into()))?;
        let mut order: Vec<usize> = (0..dim).collect();
        order.sort_by(|&a, &b| eig.eigenvalues[a].total_cmp(&eig.eigenvalues[b]));
        let values = order.iter().map(|&i| eig.eigenvalues[i]).collect();
        let vectors = DMatrix::from_columns(
            &order.iter().map(|&i| eig.eigenvectors.column(i).into_owned()).collect::<Vec<DVector<f64>>>(),
        );
        Ok(Self { values, vectors })
    }

    pub fn dim(&self) -> usize {
        self.values.len()
    }

    pub fn lambda_max(&self) -> f64 {
        self.values.last().copied().unwrap_or(0.0)
    }
}

/// Summary of a symmetric PSD spectrum.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SpectralSummary {
    pub eigenvalues: Vec<f64>,
    pub kernel_dim: usize,
    pub lambda_min_nonzero: Option<f64>,
    pub lambda_max: f64,
    /// `lambda_max / lambda_min_nonzero`; `None` when the spectrum is all zero.
    pub kappa: Option<f64>,
}

impl SpectralSummary {
    pub fn from_eigenvalues(mut eigenvalues: Vec<f64>, zero_tol: f64) -> Self {
        eigenvalues.sort_by(f64::total_cmp);
        let lambda_max = eigenvalues.last().copied().unwrap_or(0.0).max(0.0);
        let cut = kernel_threshold(lambda_max, zero_tol);
        let kernel_dim = eigenvalues.iter().filter(|&&l| l < cut).count();
        let lambda_min_nonzero = eigenvalues.iter().copied().find(|&l| l >= cut);
        let kappa = lambda_min_nonzero.map(|m| lambda_max / m);
        Self { eigenvalues, kernel_dim, lambda_min_nonzero, lambda_max, kappa }
    }

    pub fn from_symmetric(matrix: &DMatrix<f64>, zero_tol: f64) -> Result<Self> {
        Ok(Self::from_eigenvalues(Eigensystem::new(matrix)?.values, zero_tol))
    }

    pub fn nonzero_count(&self) -> usize {
        self.eigenvalues.len() - self.kernel_dim
    }

    /// κ or an error when no nonzero eigenvalue exists.
    pub fn kappa_or_err(&self) -> Result<f64> {
        self.kappa
            .ok_or_else(|| Error::Numerical("condition number undefined: spectrum is all zero".into()))
    }
}
