use nalgebra::DMatrix;

use crate::complex::CliqueComplex;
use crate::error::{Error, Result};

/// Signed incidence matrix of ∂_k: rows indexed by S_{k-1}, columns by S_k.
///
/// Stored column-sparse; the entry for the face obtained by deleting the i-th
/// smallest vertex is `(-1)^i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoundaryMatrix {
    k: usize,
    rows: usize,
    columns: Vec<Vec<(usize, i8)>>,
}

impl BoundaryMatrix {
    pub fn k(&self) -> usize {
        self.k
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.columns.len()
    }

    pub fn column(&self, j: usize) -> &[(usize, i8)] {
        &self.columns[j]
    }

    pub fn to_dense(&self) -> Vec<Vec<i64>> {
        let mut out = vec![vec![0i64; self.cols()]; self.rows];
        for (j, col) in self.columns.iter().enumerate() {
            for &(i, s) in col {
                out[i][j] = s as i64;
            }
        }
        out
    }

    pub fn to_matrix(&self) -> DMatrix<f64> {
        let mut out = DMatrix::zeros(self.rows, self.cols());
        for (j, col) in self.columns.iter().enumerate() {
            for &(i, s) in col {
                out[(i, j)] = s as f64;
            }
        }
        out
    }

    /// Exact integer product `self · other`, for checking ∂_k ∂_{k+1} = 0.
    pub fn compose(&self, other: &BoundaryMatrix) -> Result<Vec<Vec<i64>>> {
        if self.cols() != other.rows {
            return Err(Error::DimensionMismatch { expected: self.cols(), found: other.rows });
        }
        let mut out = vec![vec![0i64; other.cols()]; self.rows];
        for (j, col) in other.columns.iter().enumerate() {
            for &(mid, s2) in col {
                for &(i, s1) in &self.columns[mid] {
                    out[i][j] += (s1 as i64) * (s2 as i64);
                }
            }
        }
        Ok(out)
    }
}

/// ∂_k of the complex. For `k = 0` this is the zero map with no rows.
pub fn boundary_matrix(complex: &CliqueComplex, k: usize) -> Result<BoundaryMatrix> {
    let cols = complex.simplices(k)?;
    if k == 0 {
        return Ok(BoundaryMatrix { k, rows: 0, columns: vec![Vec::new(); cols.len()] });
    }
    let faces = complex.simplices(k - 1)?;
    let columns = cols
        .iter()
        .map(|s| {
            s.faces()
                .map(|(f, sign)| {
                    let row = faces.binary_search(&f).expect("clique complexes are downward closed");
                    (row, sign)
                })
                .collect()
        })
        .collect();
    Ok(BoundaryMatrix { k, rows: faces.len(), columns })
}
