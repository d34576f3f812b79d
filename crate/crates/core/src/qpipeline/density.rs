//! The reduced density operator after phase estimation, and the zero-phase
//! statistics read from it.

use nalgebra::{DMatrix, DVector, Matrix2};
use serde::Serialize;

use super::phase::{apply_phase_estimation, zero_phase_weights, PEConfig, C64};
use super::state::{copy_register, prepare_phi};
use crate::complex::CliqueComplex;
use crate::error::{Error, Result};
use crate::homology::HodgeOperator;

/// One term `weight · |ψ⟩⟨ψ| ⊗ |flag⟩⟨flag|` of the mixture.
#[derive(Clone, Debug)]
pub struct MixtureTerm {
    pub weight: f64,
    /// Slot whose copy register value selected this term.
    pub slot: usize,
    pub flag: bool,
    /// `U_PE |0⟩|slot⟩` over phase ⊗ slot, phase-major.
    pub psi: DVector<C64>,
}

/// Density operator over phase ⊗ slot ⊗ flag, kept as an explicit mixture of
/// `C` pure terms. Full-space index: `(m · C + r) · 2 + f`.
#[derive(Clone, Debug)]
pub struct DensityOperator {
    phase_dim: usize,
    slot_dim: usize,
    terms: Vec<MixtureTerm>,
}

impl DensityOperator {
    pub fn new(phase_dim: usize, slot_dim: usize, terms: Vec<MixtureTerm>) -> Result<Self> {
        let d = phase_dim * slot_dim;
        if let Some(t) = terms.iter().find(|t| t.psi.len() != d) {
            return Err(Error::DimensionMismatch { expected: d, found: t.psi.len() });
        }
        Ok(Self { phase_dim, slot_dim, terms })
    }

    pub fn phase_dim(&self) -> usize {
        self.phase_dim
    }

    pub fn slot_dim(&self) -> usize {
        self.slot_dim
    }

    /// Full dimension `phase · C · 2`.
    pub fn dim(&self) -> usize {
        self.phase_dim * self.slot_dim * 2
    }

    pub fn terms(&self) -> &[MixtureTerm] {
        &self.terms
    }

    pub fn trace(&self) -> f64 {
        self.terms.iter().map(|t| t.weight * t.psi.norm_squared()).sum()
    }

    fn lift(&self, term: &MixtureTerm) -> DVector<C64> {
        let mut v = DVector::from_element(self.dim(), C64::new(0.0, 0.0));
        for (i, z) in term.psi.iter().enumerate() {
            v[2 * i + term.flag as usize] = *z;
        }
        v
    }

    /// Dense matrix of the operator.
    pub fn to_matrix(&self) -> DMatrix<C64> {
        let d = self.dim();
        let mut rho = DMatrix::from_element(d, d, C64::new(0.0, 0.0));
        for t in &self.terms {
            let v = self.lift(t);
            rho += (&v * v.adjoint()) * C64::new(t.weight, 0.0);
        }
        rho
    }

    /// `‖(⟨0|_phase ⊗ I) ψ‖²` for one term.
    fn zero_phase_norm(&self, term: &MixtureTerm) -> f64 {
        term.psi.rows(0, self.slot_dim).norm_squared()
    }

    /// `Tr[(|0⟩⟨0|_phase ⊗ I_slot ⊗ M) ρ]`. Only the diagonal of `M` contributes
    /// because ρ is diagonal in the flag.
    pub fn flag_observable_expectation(&self, m: &Matrix2<C64>) -> f64 {
        self.terms
            .iter()
            .map(|t| {
                let f = t.flag as usize;
                t.weight * self.zero_phase_norm(t) * m[(f, f)].re
            })
            .sum()
    }

    /// `Tr(A ρ)` for an explicit Hermitian observable on the full space.
    pub fn expectation(&self, a: &DMatrix<C64>) -> Result<f64> {
        if a.nrows() != self.dim() || a.ncols() != self.dim() {
            return Err(Error::DimensionMismatch { expected: self.dim(), found: a.nrows() });
        }
        Ok(self
            .terms
            .iter()
            .map(|t| {
                let v = self.lift(t);
                t.weight * (v.adjoint() * a * &v)[(0, 0)].re
            })
            .sum())
    }

    /// Purification over `copy ⊗ (phase ⊗ slot ⊗ flag)`, copy-major. Tracing
    /// out the copy register recovers this operator.
    pub fn purification(&self) -> DVector<C64> {
        let d = self.dim();
        let mut phi = DVector::from_element(self.slot_dim * d, C64::new(0.0, 0.0));
        for t in &self.terms {
            let v = self.lift(t) * C64::new(t.weight.sqrt(), 0.0);
            phi.rows_mut(t.slot * d, d).copy_from(&v);
        }
        phi
    }
}

/// Runs prepare → copy → phase estimation on the slot register and traces out
/// the copy register.
pub fn reduced_density(
    complex: &CliqueComplex,
    k: usize,
    op: &HodgeOperator,
    cfg: &PEConfig,
) -> Result<DensityOperator> {
    check_consistent(complex, k, op)?;
    cfg.validate(op)?;
    let copied = copy_register(&prepare_phi(complex, k)?)?;
    let c = copied.slot_count();
    let mut terms = Vec::with_capacity(c);
    // The copy register is diagonal, so each value b contributes one pure term.
    for b in 0..c {
        for flag in [false, true] {
            let amp = copied.amplitude(b, flag, Some(b));
            if amp != 0.0 {
                terms.push(MixtureTerm { weight: amp * amp, slot: b, flag, psi: apply_phase_estimation(op, cfg, b) });
            }
        }
    }
    DensityOperator::new(cfg.phase_dim(), c, terms)
}

fn check_consistent(complex: &CliqueComplex, k: usize, op: &HodgeOperator) -> Result<()> {
    if op.n() != complex.n() {
        return Err(Error::DimensionMismatch { expected: complex.n(), found: op.n() });
    }
    if op.k() != k {
        return Err(Error::InvalidInput(format!("operator is Δ_{} but k = {k}", op.k())));
    }
    Ok(())
}

/// p₀ = (1/|S_k|) Σ_{s∈S_k} zero-phase weight of s.
pub fn p_zero(complex: &CliqueComplex, k: usize, op: &HodgeOperator, cfg: &PEConfig) -> Result<f64> {
    check_consistent(complex, k, op)?;
    let sk = complex.count(k)?;
    if sk == 0 {
        return Err(Error::EmptySimplexSet(k));
    }
    let w = zero_phase_weights(op, cfg)?;
    Ok((0..op.dim()).filter(|&i| op.is_member(i)).map(|i| w[i]).sum::<f64>() / sk as f64)
}

/// Σ_{s∈S_k} zero-phase weight: β_k itself in the ideal mode.
pub fn member_zero_weight(op: &HodgeOperator, cfg: &PEConfig) -> Result<f64> {
    let w = zero_phase_weights(op, cfg)?;
    Ok((0..op.dim()).filter(|&i| op.is_member(i)).map(|i| w[i]).sum())
}

/// Zero-phase mass on the slots outside S_k.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct POne {
    /// Σ_{s∉S_k} zero-phase weight, the convention of the extraction system.
    pub trace: f64,
    /// `trace / (C − |S_k|)`; `None` when every slot is a simplex.
    pub normalized: Option<f64>,
}

pub fn p_one(complex: &CliqueComplex, k: usize, op: &HodgeOperator, cfg: &PEConfig) -> Result<POne> {
    check_consistent(complex, k, op)?;
    let w = zero_phase_weights(op, cfg)?;
    let outside: Vec<usize> = (0..op.dim()).filter(|&i| !op.is_member(i)).collect();
    let trace = outside.iter().fold(0.0, |acc, &i| acc + w[i]);
    let normalized = (!outside.is_empty()).then(|| trace / outside.len() as f64);
    Ok(POne { trace, normalized })
}
