//! Phase estimation over `exp(iτΔ_k)`, simulated spectrally.
//!
//! For an eigenvector with eigenvalue λ the eigenphase is `φ = τλ`. A
//! `t`-bit register then reads outcome `m` with amplitude
//! `a_m(φ) = 2^{-t} Σ_x e^{ix(φ − 2πm/2^t)}`, and outcome 0 with probability
//! `F_t(φ) = |sin(2^t φ/2) / (2^t sin(φ/2))|²`.
//!
//! The ideal-projector mode replaces the register by a single
//! zero/non-zero flag: `U_PE|0⟩|s⟩ = |0⟩P_ker|s⟩ + |1⟩(I − P_ker)|s⟩`.

use std::f64::consts::{PI, TAU};

use nalgebra::{Complex, DVector};
use serde::{Deserialize, Serialize};

use crate::complex::{slot_index, SimplexWord};
use crate::error::{Error, Result};
use crate::homology::{HodgeOperator, DEFAULT_ZERO_TOL};

pub type C64 = Complex<f64>;

/// Largest phase register simulated.
pub const MAX_PHASE_BITS: u32 = 16;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum PhaseMode {
    /// Exact kernel projector; no finite-register leakage.
    Ideal,
    /// A `t`-bit phase register.
    Bits(u32),
}

impl std::str::FromStr for PhaseMode {
    type Err = Error;

    /// Parses `ideal` or `bits:<t>`.
    fn from_str(s: &str) -> Result<Self> {
        if s == "ideal" {
            return Ok(PhaseMode::Ideal);
        }
        s.strip_prefix("bits:")
            .and_then(|t| t.parse().ok())
            .map(PhaseMode::Bits)
            .ok_or_else(|| Error::InvalidInput(format!("bad phase mode '{s}' (want ideal | bits:<t>)")))
    }
}

impl std::fmt::Display for PhaseMode {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            PhaseMode::Ideal => f.write_str("ideal"),
            PhaseMode::Bits(t) => write!(f, "bits:{t}"),
        }
    }
}

/// Phase-estimation settings.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct PEConfig {
    /// τ: eigenvalues of Δ are scaled to phases `τλ`.
    pub time_scale: f64,
    pub mode: PhaseMode,
    /// Relative kernel tolerance; eigenvalues under the cutoff get phase 0.
    pub zero_tol: f64,
}

impl PEConfig {
    /// `τ = π / λ_max`, so every eigenphase lies in `[0, π]`.
    pub fn default_time_scale(op: &HodgeOperator) -> f64 {
        let top = op.lambda_max();
        if top > 0.0 {
            PI / top
        } else {
            PI
        }
    }

    pub fn ideal(op: &HodgeOperator) -> Self {
        Self { time_scale: Self::default_time_scale(op), mode: PhaseMode::Ideal, zero_tol: DEFAULT_ZERO_TOL }
    }

    pub fn bits(op: &HodgeOperator, t: u32) -> Self {
        Self { mode: PhaseMode::Bits(t), ..Self::ideal(op) }
    }

    /// `t = ceil(log2(λ_max / λ_min_nonzero)) + 2` over the full slot space.
    pub fn default_bits(op: &HodgeOperator) -> u32 {
        let summary = op.full_spectral_summary(DEFAULT_ZERO_TOL);
        let ratio = summary.kappa.unwrap_or(1.0).max(1.0);
        ratio.log2().ceil() as u32 + 2
    }

    pub fn with_mode(op: &HodgeOperator, mode: PhaseMode) -> Self {
        Self { mode, ..Self::ideal(op) }
    }

    pub fn validate(&self, op: &HodgeOperator) -> Result<()> {
        let top = self.time_scale * op.lambda_max();
        if !(self.time_scale > 0.0) || top >= TAU {
            return Err(Error::PhaseScale(top));
        }
        if let PhaseMode::Bits(t) = self.mode {
            if t == 0 || t > MAX_PHASE_BITS {
                return Err(Error::InvalidInput(format!("phase bits {t} outside 1..={MAX_PHASE_BITS}")));
            }
        }
        Ok(())
    }

    /// Dimension of the phase register: 2 for the ideal flag, `2^t` otherwise.
    pub fn phase_dim(&self) -> usize {
        match self.mode {
            PhaseMode::Ideal => 2,
            PhaseMode::Bits(t) => 1 << t,
        }
    }
}

/// Probability that a `t`-bit register reads 0 for eigenphase `phi`.
pub fn zero_outcome_probability(t: u32, phi: f64) -> f64 {
    let half = (phi / 2.0).sin();
    if half.abs() < 1e-300 {
        return 1.0;
    }
    let scale = (1u64 << t) as f64;
    let r = (scale * phi / 2.0).sin() / (scale * half);
    r * r
}

/// Amplitudes `a_m(φ)` of every outcome `m` of a `t`-bit register.
pub fn outcome_amplitudes(t: u32, phi: f64) -> Vec<C64> {
    let size = 1usize << t;
    let mut out = vec![C64::new(0.0, 0.0); size];
    if phi == 0.0 {
        out[0] = C64::new(1.0, 0.0);
        return out;
    }
    let norm = 1.0 / size as f64;
    for (m, a) in out.iter_mut().enumerate() {
        let step = phi - TAU * m as f64 / size as f64;
        *a = (0..size).map(|x| C64::from_polar(norm, x as f64 * step)).sum();
    }
    out
}

fn check_word(op: &HodgeOperator, s: SimplexWord) -> Result<usize> {
    if s.n() != op.n() || s.dim() != op.k() {
        return Err(Error::MalformedSimplex { word: s.bits(), n: op.n(), k: op.k() });
    }
    Ok(slot_index(s))
}

/// Eigenphase of an eigenvalue, with sub-cutoff eigenvalues snapped to 0.
fn phase_of(lambda: f64, cut: f64, tau: f64) -> f64 {
    if lambda < cut {
        0.0
    } else {
        tau * lambda
    }
}

/// Probability that the phase register reads all zeros on input `|s⟩`.
pub fn zero_phase_weight(op: &HodgeOperator, cfg: &PEConfig, s: SimplexWord) -> Result<f64> {
    cfg.validate(op)?;
    let slot = check_word(op, s)?;
    Ok(slot_zero_weight(op, cfg, slot))
}

/// [`zero_phase_weight`] for every slot, indexed by slot.
pub fn zero_phase_weights(op: &HodgeOperator, cfg: &PEConfig) -> Result<Vec<f64>> {
    cfg.validate(op)?;
    Ok((0..op.dim()).map(|slot| slot_zero_weight(op, cfg, slot)).collect())
}

fn slot_zero_weight(op: &HodgeOperator, cfg: &PEConfig, slot: usize) -> f64 {
    let cut = op.kernel_cutoff(cfg.zero_tol);
    let (b, pos) = op.locate(slot);
    let eig = &op.blocks()[b].eigen;
    eig.values
        .iter()
        .enumerate()
        .map(|(j, &lambda)| {
            let overlap = eig.vectors[(pos, j)] * eig.vectors[(pos, j)];
            let f = match cfg.mode {
                PhaseMode::Ideal => (lambda < cut) as u8 as f64,
                PhaseMode::Bits(t) => zero_outcome_probability(t, phase_of(lambda, cut, cfg.time_scale)),
            };
            overlap * f
        })
        .sum::<f64>()
        .min(1.0)
}

/// `U_PE |0⟩|slot⟩` as a vector over phase ⊗ slot, phase-major
/// (index `m · C + r`).
pub fn apply_phase_estimation(op: &HodgeOperator, cfg: &PEConfig, slot: usize) -> DVector<C64> {
    let c = op.dim();
    let phase_dim = cfg.phase_dim();
    let mut out = DVector::from_element(phase_dim * c, C64::new(0.0, 0.0));
    let cut = op.kernel_cutoff(cfg.zero_tol);
    let (b, pos) = op.locate(slot);
    let block = &op.blocks()[b];
    let eig = &block.eigen;
    for (j, &lambda) in eig.values.iter().enumerate() {
        let weight_s = eig.vectors[(pos, j)];
        if weight_s == 0.0 {
            continue;
        }
        let amps: Vec<C64> = match cfg.mode {
            PhaseMode::Ideal => {
                if lambda < cut {
                    vec![C64::new(1.0, 0.0), C64::new(0.0, 0.0)]
                } else {
                    vec![C64::new(0.0, 0.0), C64::new(1.0, 0.0)]
                }
            }
            PhaseMode::Bits(t) => outcome_amplitudes(t, phase_of(lambda, cut, cfg.time_scale)),
        };
        for (m, a) in amps.iter().enumerate() {
            if a.norm_sqr() == 0.0 {
                continue;
            }
            for (q, &r) in block.slots.iter().enumerate() {
                out[m * c + r] += a * (eig.vectors[(q, j)] * weight_s);
            }
        }
    }
    out
}
