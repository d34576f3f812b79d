//! The oracle-tagged superposition over all k-slots and its copy register.

use nalgebra::DMatrix;

use crate::complex::{enumerate_slots, CliqueComplex, SimplexWord};
use crate::error::{Error, Result};

/// `(1/√C) Σ_s |s⟩|f(s)⟩`, optionally with a copy register `|s⟩_B` appended.
///
/// Amplitudes are real. Layout is slot-major: index `2·slot + flag` before
/// the copy, `(2·slot + flag)·C + copy` after.
#[derive(Clone, Debug, PartialEq)]
pub struct TaggedState {
    slots: Vec<SimplexWord>,
    flags: Vec<bool>,
    amplitudes: Vec<f64>,
    copied: bool,
}

/// Prepares the tagged state for dimension `k` of the complex.
pub fn prepare_phi(complex: &CliqueComplex, k: usize) -> Result<TaggedState> {
    let slots = enumerate_slots(complex.n(), k)?;
    let c = slots.len();
    if c == 0 {
        return Err(Error::InvalidInput(format!("no {k}-slots on {} vertices", complex.n())));
    }
    let flags: Vec<bool> = slots.iter().map(|&s| complex.contains(s)).collect::<Result<_>>()?;
    let amp = 1.0 / (c as f64).sqrt();
    let mut amplitudes = vec![0.0; 2 * c];
    for (i, &f) in flags.iter().enumerate() {
        amplitudes[2 * i + f as usize] = amp;
    }
    Ok(TaggedState { slots, flags, amplitudes, copied: false })
}

/// Copies the slot string into a fresh register: `|s, f⟩ → |s, f, s⟩`.
pub fn copy_register(state: &TaggedState) -> Result<TaggedState> {
    if state.copied {
        return Err(Error::InvalidInput("state already carries a copy register".into()));
    }
    let c = state.slot_count();
    let mut amplitudes = vec![0.0; 2 * c * c];
    for s in 0..c {
        for f in 0..2 {
            amplitudes[(2 * s + f) * c + s] = state.amplitudes[2 * s + f];
        }
    }
    Ok(TaggedState { amplitudes, copied: true, ..state.clone() })
}

impl TaggedState {
    /// C_{k,n}.
    pub fn slot_count(&self) -> usize {
        self.slots.len()
    }

    pub fn slots(&self) -> &[SimplexWord] {
        &self.slots
    }

    /// Membership flag of each slot.
    pub fn flags(&self) -> &[bool] {
        &self.flags
    }

    pub fn is_copied(&self) -> bool {
        self.copied
    }

    pub fn amplitudes(&self) -> &[f64] {
        &self.amplitudes
    }

    /// Amplitude of `|slot, flag⟩` (pre-copy) or `|slot, flag, copy⟩`.
    pub fn amplitude(&self, slot: usize, flag: bool, copy: Option<usize>) -> f64 {
        let base = 2 * slot + flag as usize;
        match (self.copied, copy) {
            (false, None) => self.amplitudes[base],
            (true, Some(b)) => self.amplitudes[base * self.slot_count() + b],
            _ => 0.0,
        }
    }

    pub fn norm(&self) -> f64 {
        self.amplitudes.iter().map(|a| a * a).sum::<f64>().sqrt()
    }

    /// Reduced density matrix on slot ⊗ flag (dimension `2C`), tracing out the
    /// copy register if present.
    pub fn reduced_slot_flag(&self) -> DMatrix<f64> {
        let d = 2 * self.slot_count();
        if !self.copied {
            let v = nalgebra::DVector::from_column_slice(&self.amplitudes);
            return &v * v.transpose();
        }
        let c = self.slot_count();
        let mut rho = DMatrix::zeros(d, d);
        for i in 0..d {
            for j in 0..d {
                rho[(i, j)] = (0..c).map(|b| self.amplitudes[i * c + b] * self.amplitudes[j * c + b]).sum();
            }
        }
        rho
    }

    /// Reduced density matrix on the slot register alone (`C × C`).
    pub fn reduced_slot(&self) -> DMatrix<f64> {
        let sf = self.reduced_slot_flag();
        let c = self.slot_count();
        DMatrix::from_fn(c, c, |a, b| sf[(2 * a, 2 * b)] + sf[(2 * a + 1, 2 * b + 1)])
    }
}
