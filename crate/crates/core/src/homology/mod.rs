//! Boundary operators, Hodge Laplacians and the exact Betti oracle.

mod boundary;
mod hodge;
mod rank;
mod spectral;

pub use boundary::{boundary_matrix, BoundaryMatrix};
pub use hodge::{complex_laplacian, BlockKind, Convention, HodgeOperator, SpectralBlock};
pub use rank::exact_rank;
pub use spectral::{kernel_threshold, Eigensystem, SpectralSummary, DEFAULT_ZERO_TOL};

use nalgebra::DMatrix;
use serde::Serialize;

use crate::complex::CliqueComplex;
use crate::error::{Error, Result};

/// β_k = |S_k| − rank ∂_k − rank ∂_{k+1}, with ranks computed exactly.
pub fn betti_exact(complex: &CliqueComplex, k: usize) -> Result<usize> {
    if !complex.is_built(k + 1) {
        return Err(Error::Unbuilt(k + 1));
    }
    let sk = complex.count(k)?;
    let down = exact_rank(&boundary_matrix(complex, k)?.to_dense());
    let up = exact_rank(&boundary_matrix(complex, k + 1)?.to_dense());
    Ok(sk - down - up)
}

/// Orthogonal projector onto ker Δ over the full slot space.
pub fn kernel_projector(op: &HodgeOperator, zero_tol: f64) -> DMatrix<f64> {
    op.kernel_projector(zero_tol)
}

/// Spectrum summary of the S_k block of Δ_k.
pub fn spectral_summary(op: &HodgeOperator, zero_tol: f64) -> SpectralSummary {
    op.spectral_summary(zero_tol)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EulerReport {
    pub counts: Vec<usize>,
    pub betti: Vec<usize>,
    pub chi_from_counts: i64,
    pub chi_from_betti: i64,
    /// True when the complex was built below `n - 1` and the check covers its skeleton.
    pub skeleton: bool,
    pub holds: bool,
}

/// Checks Σ(−1)^k |S_k| = Σ(−1)^k β_k over every built dimension. A
/// truncated complex is checked as the skeleton it is.
pub fn euler_check(complex: &CliqueComplex) -> Result<EulerReport> {
    let top = complex.max_dim();
    let counts = complex.counts();
    let ranks: Vec<usize> = (0..=top)
        .map(|k| boundary_matrix(complex, k).map(|b| exact_rank(&b.to_dense())))
        .collect::<Result<_>>()?;
    let betti: Vec<usize> = (0..=top)
        .map(|k| counts[k] - ranks[k] - ranks.get(k + 1).copied().unwrap_or(0))
        .collect();
    let alt = |xs: &[usize]| {
        xs.iter()
            .enumerate()
            .map(|(k, &x)| if k % 2 == 0 { x as i64 } else { -(x as i64) })
            .sum::<i64>()
    };
    let chi_from_counts = alt(&counts);
    let chi_from_betti = alt(&betti);
    Ok(EulerReport {
        skeleton: top + 1 < complex.n(),
        holds: chi_from_counts == chi_from_betti,
        counts,
        betti,
        chi_from_counts,
        chi_from_betti,
    })
}
