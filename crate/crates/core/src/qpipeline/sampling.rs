//! Additive-error trace estimation from Hadamard-test statistics.
//!
//! Each draw is a Bernoulli outcome with success probability
//! `(1 + Tr(Aρ))/2`; the estimate is `2·mean − 1`. Draws come from a
//! counter-based stream (one ChaCha stream per fixed-size chunk), so the
//! parallel sum is identical to a serial one for the same seed.

use nalgebra::{DMatrix, Matrix2};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use super::block::BlockEncoding;
use super::density::DensityOperator;
use super::phase::C64;
use crate::error::{Error, Result};

const CHUNK: u64 = 1 << 14;
const NORM_SLACK: f64 = 1e-12;

/// `ceil(ln(2/(1−confidence)) / (2δ²))`, the Hoeffding count for a mean of
/// outcomes in `[0, 1]` to land within δ.
pub fn hoeffding_samples(delta: f64, confidence: f64) -> Result<u64> {
    check_accuracy(delta, confidence)?;
    Ok(((2.0 / (1.0 - confidence)).ln() / (2.0 * delta * delta)).ceil() as u64)
}

/// Draws needed for the ±1 Hadamard statistic to land within δ: the
/// Bernoulli mean must land within δ/2.
pub fn hadamard_samples(delta: f64, confidence: f64) -> Result<u64> {
    hoeffding_samples(delta / 2.0, confidence)
}

fn check_accuracy(delta: f64, confidence: f64) -> Result<()> {
    if !(delta > 0.0 && delta.is_finite()) {
        return Err(Error::InvalidInput(format!("additive error must be positive, got {delta}")));
    }
    if !(confidence > 0.0 && confidence < 1.0) {
        return Err(Error::InvalidInput(format!("confidence must lie in (0, 1), got {confidence}")));
    }
    Ok(())
}

/// Number of successes among `samples` Bernoulli(p) draws.
pub fn bernoulli_count(p: f64, samples: u64, seed: u64) -> u64 {
    let chunks = samples.div_ceil(CHUNK);
    (0..chunks)
        .into_par_iter()
        .map(|c| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            rng.set_stream(c);
            let len = CHUNK.min(samples - c * CHUNK);
            (0..len).filter(|_| rng.random::<f64>() < p).count() as u64
        })
        .sum()
}

/// Hadamard-test estimate of a value in `[−1, 1]` from `samples` draws.
pub fn sample_hadamard(truth: f64, samples: u64, seed: u64) -> Result<f64> {
    if !(truth.abs() <= 1.0 + NORM_SLACK) {
        return Err(Error::NormViolation { norm: truth.abs() });
    }
    if samples == 0 {
        return Err(Error::InvalidInput("need at least one sample".into()));
    }
    let p = ((1.0 + truth) / 2.0).clamp(0.0, 1.0);
    Ok(2.0 * bernoulli_count(p, samples, seed) as f64 / samples as f64 - 1.0)
}

/// An observable that can be measured against the pipeline's ρ.
pub trait EncodedObservable {
    /// Upper bound on the operator norm.
    fn norm_bound(&self) -> f64;
    /// Exact `Tr(Aρ)`.
    fn expectation(&self, rho: &DensityOperator) -> Result<f64>;
}

impl EncodedObservable for BlockEncoding {
    fn norm_bound(&self) -> f64 {
        BlockEncoding::norm_bound(self)
    }

    fn expectation(&self, rho: &DensityOperator) -> Result<f64> {
        rho.expectation(self.target())
    }
}

/// `|0⟩⟨0|_phase ⊗ I_slot ⊗ M` evaluated through the mixture structure of ρ.
/// Same matrix as the tensor of the projector and `M` encodings.
#[derive(Clone, Debug, PartialEq)]
pub struct FlagObservable {
    pub m: Matrix2<C64>,
}

impl FlagObservable {
    pub fn new(m: Matrix2<C64>) -> Self {
        Self { m }
    }

    /// The full matrix over phase ⊗ slot ⊗ flag.
    pub fn to_matrix(&self, phase_dim: usize, slot_dim: usize) -> DMatrix<C64> {
        let d = phase_dim * slot_dim * 2;
        let mut out = DMatrix::from_element(d, d, C64::new(0.0, 0.0));
        for r in 0..slot_dim {
            for f in 0..2 {
                for g in 0..2 {
                    out[(2 * r + f, 2 * r + g)] = self.m[(f, g)];
                }
            }
        }
        out
    }
}

impl EncodedObservable for FlagObservable {
    fn norm_bound(&self) -> f64 {
        self.m.singular_values().max()
    }

    fn expectation(&self, rho: &DensityOperator) -> Result<f64> {
        Ok(rho.flag_observable_expectation(&self.m))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct TraceEstimate {
    pub value: f64,
    pub additive_err: f64,
    pub confidence: f64,
    pub samples_used: u64,
    pub seed: u64,
}

/// Estimates `Tr(Aρ)` to within δ with probability at least `confidence`.
pub fn trace_estimate<O: EncodedObservable + ?Sized>(
    observable: &O,
    rho: &DensityOperator,
    delta: f64,
    confidence: f64,
    seed: u64,
) -> Result<TraceEstimate> {
    let norm = observable.norm_bound();
    if norm > 1.0 + NORM_SLACK {
        return Err(Error::NormViolation { norm });
    }
    let samples = hadamard_samples(delta, confidence)?;
    let truth = observable.expectation(rho)?;
    Ok(TraceEstimate {
        value: sample_hadamard(truth, samples, seed)?,
        additive_err: delta,
        confidence,
        samples_used: samples,
        seed,
    })
}
