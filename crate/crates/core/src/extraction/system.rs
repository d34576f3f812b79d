//! The 2×2 extraction system `A·(β_k, p₁)ᵀ = (b₁, b₂)ᵀ` and its error budget.

use nalgebra::{Matrix2, Vector2};
use serde::Serialize;

use super::observable::{ObservablePair, SINGULAR_RATIO};
use crate::error::{Error, Result};

/// Condition number of `A` above which a solve logs a warning.
pub const CONDITION_WARN: f64 = 1e8;

/// `A = trace_matrix / C`.
pub fn assemble_system(pair: &ObservablePair, slots: usize) -> Result<Matrix2<f64>> {
    if slots == 0 {
        return Err(Error::InvalidInput("system needs at least one slot".into()));
    }
    let a = pair.trace_matrix() / slots as f64;
    check_nonsingular(&a)?;
    Ok(a)
}

fn check_nonsingular(a: &Matrix2<f64>) -> Result<Vector2<f64>> {
    let sv = a.singular_values();
    let (lo, hi) = (sv.min(), sv.max());
    if !(hi > 0.0) || lo / hi < SINGULAR_RATIO {
        return Err(Error::SingularSystem { det: a.determinant() });
    }
    Ok(Vector2::new(lo, hi))
}

/// Spectral norm of `A⁻¹`, i.e. `1/σ_min(A)`.
pub fn inv_norm(a: &Matrix2<f64>) -> Result<f64> {
    Ok(1.0 / check_nonsingular(a)?[0])
}

/// `σ_max(A)/σ_min(A)`.
pub fn condition_number(a: &Matrix2<f64>) -> Result<f64> {
    let sv = check_nonsingular(a)?;
    Ok(sv[1] / sv[0])
}

/// Solves `A x = y` exactly (Cramer's rule), warning on poor conditioning.
pub fn solve_system(a: &Matrix2<f64>, y: &Vector2<f64>) -> Result<Vector2<f64>> {
    let kappa = condition_number(a)?;
    if kappa > CONDITION_WARN {
        log::warn!("extraction system is ill-conditioned (κ_A = {kappa:.3e}); consider another observable pair");
    }
    let det = a.determinant();
    Ok(Vector2::new(
        (y[0] * a[(1, 1)] - a[(0, 1)] * y[1]) / det,
        (a[(0, 0)] * y[1] - a[(1, 0)] * y[0]) / det,
    ))
}

/// `‖A⁻¹‖ · ‖ΔY‖`, the bound on how far the solution moves when only the
/// right-hand side is perturbed.
pub fn perturbation_bound(a: &Matrix2<f64>, dy_norm: f64) -> Result<f64> {
    if !(dy_norm >= 0.0) {
        return Err(Error::InvalidInput(format!("perturbation norm must be non-negative, got {dy_norm}")));
    }
    Ok(inv_norm(a)? * dy_norm)
}

/// Per-measurement additive accuracy `δ = ε · β_lower / (√2 · ‖A⁻¹‖)`.
pub fn plan_delta(epsilon: f64, beta_lower: f64, a: &Matrix2<f64>) -> Result<f64> {
    if !(epsilon > 0.0 && epsilon.is_finite()) {
        return Err(Error::InvalidInput(format!("accuracy must be positive, got {epsilon}")));
    }
    if !(beta_lower > 0.0 && beta_lower.is_finite()) {
        return Err(Error::InvalidInput(format!("beta lower bound must be positive, got {beta_lower}")));
    }
    Ok(epsilon * beta_lower / (std::f64::consts::SQRT_2 * inv_norm(a)?))
}

/// An assembled and solved system.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct ExtractionSystem {
    pub a: [[f64; 2]; 2],
    pub y: [f64; 2],
    /// `(β_k, p₁)`.
    pub x: [f64; 2],
    pub inv_norm: f64,
    pub kappa_a: f64,
}

impl ExtractionSystem {
    pub fn solve(a: &Matrix2<f64>, y: Vector2<f64>) -> Result<Self> {
        let x = solve_system(a, &y)?;
        Ok(Self {
            a: [[a[(0, 0)], a[(0, 1)]], [a[(1, 0)], a[(1, 1)]]],
            y: [y[0], y[1]],
            x: [x[0], x[1]],
            inv_norm: inv_norm(a)?,
            kappa_a: condition_number(a)?,
        })
    }

    /// `‖A x − y‖∞`.
    pub fn residual(&self) -> f64 {
        let a = Matrix2::new(self.a[0][0], self.a[0][1], self.a[1][0], self.a[1][1]);
        (a * Vector2::new(self.x[0], self.x[1]) - Vector2::new(self.y[0], self.y[1])).amax()
    }
}
