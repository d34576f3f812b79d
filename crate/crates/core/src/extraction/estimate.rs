//! End-to-end Betti estimation: measure `b₁, b₂`, solve, post-process.

use nalgebra::{Matrix2, Vector2};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::observable::{observable_b, BValue, Measurement, ObservablePair};
use super::pipeline::{PeSetting, Pipeline};
use super::system::{assemble_system, inv_norm, plan_delta, ExtractionSystem};
use crate::complex::{slot_count, Instance};
use crate::error::{Error, Result};
use crate::homology::{betti_exact, Convention, DEFAULT_ZERO_TOL};

/// Largest `C_{k+1,n}` for which the exact oracle is attached as a diagnostic.
pub const ORACLE_SLOT_LIMIT: usize = 2000;
/// Cap on pilot-and-halve rounds for the β lower bound.
pub const MAX_REFINEMENTS: u32 = 8;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Mode {
    #[default]
    Exact,
    Sampled,
}

impl std::str::FromStr for Mode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "exact" => Ok(Mode::Exact),
            "sampled" => Ok(Mode::Sampled),
            _ => Err(Error::InvalidInput(format!("unknown mode '{s}' (want exact | sampled)"))),
        }
    }
}

impl std::fmt::Display for Mode {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Mode::Exact => "exact",
            Mode::Sampled => "sampled",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct EstimateConfig {
    pub pair: ObservablePair,
    pub convention: Convention,
    pub pe: PeSetting,
    pub mode: Mode,
    /// Joint confidence for both trace estimates.
    pub confidence: f64,
    pub seed: u64,
    /// Assumed lower bound on β_k for the δ planner.
    pub beta_lower: f64,
    /// Halve `beta_lower` and re-plan while a pilot rounds below it.
    pub refine: bool,
    pub zero_tol: f64,
}

impl Default for EstimateConfig {
    fn default() -> Self {
        Self {
            pair: ObservablePair::default(),
            convention: Convention::Restricted,
            pe: PeSetting::Ideal,
            mode: Mode::Exact,
            confidence: 0.95,
            seed: 0,
            beta_lower: 1.0,
            refine: true,
            zero_tol: DEFAULT_ZERO_TOL,
        }
    }
}

impl EstimateConfig {
    pub fn validate(&self) -> Result<()> {
        if !(self.confidence > 0.0 && self.confidence < 1.0) {
            return Err(Error::InvalidInput(format!("confidence must lie in (0, 1), got {}", self.confidence)));
        }
        if !(self.beta_lower > 0.0 && self.beta_lower.is_finite()) {
            return Err(Error::InvalidInput(format!("beta lower bound must be positive, got {}", self.beta_lower)));
        }
        Ok(())
    }

    /// Confidence for each of the two estimates, so that both hold jointly.
    pub fn per_estimate_confidence(&self) -> f64 {
        1.0 - (1.0 - self.confidence) / 2.0
    }

    pub fn pipeline(&self, instance: &Instance, k: usize) -> Result<Pipeline> {
        Pipeline::with_zero_tol(instance.complex_for(k)?, k, self.convention, self.pe, self.zero_tol)
    }
}

/// Independent seed number `index` derived from a master seed.
pub fn derive_seed(master: u64, index: u64) -> u64 {
    let mut rng = ChaCha8Rng::seed_from_u64(master);
    rng.set_stream(index + 1);
    rng.random()
}

/// β_k from the exact-rank oracle when the complex is small enough.
pub fn oracle_betti(pipeline: &Pipeline) -> Option<usize> {
    let (n, k) = (pipeline.complex().n(), pipeline.k());
    (slot_count(n, k + 1) <= ORACLE_SLOT_LIMIT).then(|| betti_exact(pipeline.complex(), k).ok()).flatten()
}

fn measure_pair(
    pipeline: &Pipeline,
    pair: &ObservablePair,
    delta: Option<f64>,
    confidence: f64,
    seed: u64,
) -> Result<(BValue, BValue)> {
    let mode = |i: u64| match delta {
        None => Measurement::Exact,
        Some(delta) => Measurement::Sampled { delta, confidence, seed: derive_seed(seed, i) },
    };
    if delta.is_some() {
        pipeline.density()?;
    }
    let (b1, b2) = rayon::join(
        || observable_b(pair.m1(), pipeline, mode(0)),
        || observable_b(pair.m2(), pipeline, mode(1)),
    );
    Ok((b1?, b2?))
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BettiEstimate {
    pub n: usize,
    pub k: usize,
    pub slots: usize,
    pub simplices: usize,
    pub beta_estimate: f64,
    pub beta_rounded: u64,
    pub p1_estimate: f64,
    /// `p1_estimate / (C − |S_k|)`.
    pub p1_normalized: Option<f64>,
    /// Target multiplicative accuracy on β_k.
    pub epsilon: f64,
    /// Planned additive accuracy of each trace estimate.
    pub delta: Option<f64>,
    pub samples_per_observable: Option<u64>,
    pub per_estimate_confidence: Option<f64>,
    pub beta_lower: f64,
    pub refinements: u32,
    pub convention: Convention,
    pub mode: Mode,
    pub pe: PeSetting,
    pub system: ExtractionSystem,
    pub true_beta: Option<usize>,
    /// `|β̃ − β| ≤ εβ` against the oracle.
    pub within_bound: Option<bool>,
    pub seed: u64,
}

/// Nearest non-negative integer.
pub fn round_beta(beta: f64) -> u64 {
    beta.round().max(0.0) as u64
}

/// Estimates β_k to multiplicative accuracy ε.
pub fn estimate_betti(instance: &Instance, k: usize, epsilon: f64, cfg: &EstimateConfig) -> Result<BettiEstimate> {
    cfg.validate()?;
    estimate_betti_with(&cfg.pipeline(instance, k)?, epsilon, cfg)
}

/// [`estimate_betti`] on a prepared pipeline; `cfg.convention`, `cfg.pe`
/// and `cfg.zero_tol` are taken from the pipeline.
pub fn estimate_betti_with(pipeline: &Pipeline, epsilon: f64, cfg: &EstimateConfig) -> Result<BettiEstimate> {
    cfg.validate()?;
    if !(epsilon > 0.0 && epsilon.is_finite()) {
        return Err(Error::InvalidInput(format!("accuracy must be positive, got {epsilon}")));
    }
    let simplices = pipeline.simplex_count();
    if simplices == 0 {
        return Err(Error::EmptySimplexSet(pipeline.k()));
    }
    let slots = pipeline.slot_count();
    let a = assemble_system(&cfg.pair, slots)?;

    let mut beta_lower = cfg.beta_lower;
    let mut refinements = 0;
    let (system, delta, samples, confidence) = loop {
        let (delta, confidence) = match cfg.mode {
            Mode::Exact => (None, None),
            Mode::Sampled => (Some(plan_delta(epsilon, beta_lower, &a)?), Some(cfg.per_estimate_confidence())),
        };
        let round_seed = derive_seed(cfg.seed, 1000 + refinements as u64);
        let (b1, b2) = measure_pair(pipeline, &cfg.pair, delta, confidence.unwrap_or(0.5), round_seed)?;
        let system = ExtractionSystem::solve(&a, Vector2::new(b1.value(), b2.value()))?;
        let rounded = round_beta(system.x[0]) as f64;
        let retry = cfg.mode == Mode::Sampled
            && cfg.refine
            && rounded < beta_lower
            && beta_lower > 1.0
            && refinements < MAX_REFINEMENTS;
        if !retry {
            break (system, delta, b1.samples_used(), confidence);
        }
        beta_lower = (beta_lower / 2.0).max(1.0);
        refinements += 1;
        log::info!("pilot rounded below the β lower bound; re-planning with beta_lower = {beta_lower}");
    };

    let beta = system.x[0];
    let true_beta = oracle_betti(pipeline);
    let outside = slots - simplices;
    Ok(BettiEstimate {
        n: pipeline.complex().n(),
        k: pipeline.k(),
        slots,
        simplices,
        beta_estimate: beta,
        beta_rounded: round_beta(beta),
        p1_estimate: system.x[1],
        p1_normalized: (outside > 0).then(|| system.x[1] / outside as f64),
        epsilon,
        delta,
        samples_per_observable: samples,
        per_estimate_confidence: confidence,
        beta_lower,
        refinements,
        convention: pipeline.operator().convention(),
        mode: cfg.mode,
        pe: cfg.pe,
        system,
        true_beta,
        within_bound: true_beta.map(|b| (beta - b as f64).abs() <= epsilon * b as f64 + 1e-12),
        seed: cfg.seed,
    })
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct NormalizedBettiEstimate {
    pub n: usize,
    pub k: usize,
    pub slots: usize,
    pub simplices: usize,
    /// β_k/|S_k|, clamped to `[0, 1]`.
    pub value: f64,
    pub raw_value: f64,
    /// Target additive accuracy on β_k/|S_k|.
    pub delta: f64,
    /// Additive accuracy required on β_k/C_{k,n}: `δ·|S_k|/C_{k,n}`.
    pub epsilon: f64,
    /// Additive accuracy of each trace estimate.
    pub measurement_delta: Option<f64>,
    pub samples_per_observable: Option<u64>,
    pub per_estimate_confidence: Option<f64>,
    pub convention: Convention,
    pub mode: Mode,
    pub pe: PeSetting,
    /// The rescaled system in the variables `(β_k/C, p₁/C)`.
    pub system: ExtractionSystem,
    pub true_value: Option<f64>,
    pub within_bound: Option<bool>,
    pub seed: u64,
}

/// Estimates β_k/|S_k| to additive accuracy δ.
pub fn estimate_normalized_betti(
    instance: &Instance,
    k: usize,
    delta: f64,
    cfg: &EstimateConfig,
) -> Result<NormalizedBettiEstimate> {
    cfg.validate()?;
    estimate_normalized_betti_with(&cfg.pipeline(instance, k)?, delta, cfg)
}

pub fn estimate_normalized_betti_with(
    pipeline: &Pipeline,
    delta: f64,
    cfg: &EstimateConfig,
) -> Result<NormalizedBettiEstimate> {
    cfg.validate()?;
    if !(delta > 0.0 && delta.is_finite()) {
        return Err(Error::InvalidInput(format!("accuracy must be positive, got {delta}")));
    }
    let simplices = pipeline.simplex_count();
    if simplices == 0 {
        return Err(Error::EmptySimplexSet(pipeline.k()));
    }
    let slots = pipeline.slot_count();
    let scaled: Matrix2<f64> = assemble_system(&cfg.pair, slots)? * slots as f64;
    let epsilon = delta * (simplices as f64 / slots as f64);
    let (measurement_delta, confidence) = match cfg.mode {
        Mode::Exact => (None, None),
        Mode::Sampled => (
            Some(epsilon / (std::f64::consts::SQRT_2 * inv_norm(&scaled)?)),
            Some(cfg.per_estimate_confidence()),
        ),
    };
    let (b1, b2) = measure_pair(pipeline, &cfg.pair, measurement_delta, confidence.unwrap_or(0.5), cfg.seed)?;
    let system = ExtractionSystem::solve(&scaled, Vector2::new(b1.value(), b2.value()))?;
    let raw_value = system.x[0] * slots as f64 / simplices as f64;
    let value = raw_value.clamp(0.0, 1.0);
    let true_value = oracle_betti(pipeline).map(|b| b as f64 / simplices as f64);
    Ok(NormalizedBettiEstimate {
        n: pipeline.complex().n(),
        k: pipeline.k(),
        slots,
        simplices,
        value,
        raw_value,
        delta,
        epsilon,
        measurement_delta,
        samples_per_observable: b1.samples_used(),
        per_estimate_confidence: confidence,
        convention: pipeline.operator().convention(),
        mode: cfg.mode,
        pe: cfg.pe,
        system,
        true_value,
        within_bound: true_value.map(|t| (value - t).abs() <= delta + 1e-12),
        seed: cfg.seed,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::{octahedron, VertexGraph};
    use crate::qpipeline::hadamard_samples;

    fn c4() -> Instance {
        Instance::Graph(VertexGraph::from_edges(4, &[(0, 1), (1, 2), (2, 3), (3, 0)]).unwrap())
    }

    #[test]
    fn exact_cycle_and_octahedron() {
        let cfg = EstimateConfig::default();
        let e = estimate_betti(&c4(), 1, 0.25, &cfg).unwrap();
        assert!((e.beta_estimate - 1.0).abs() < 1e-12);
        assert_eq!(e.beta_rounded, 1);
        assert!((e.p1_estimate - 2.0).abs() < 1e-12);
        assert_eq!(e.true_beta, Some(1));
        assert_eq!(e.samples_per_observable, None);

        let oct = Instance::Graph(octahedron());
        let e = estimate_betti(&oct, 2, 0.25, &cfg).unwrap();
        assert_eq!(e.beta_rounded, 1);
        assert!((e.beta_estimate - 1.0).abs() < 1e-10);
    }

    #[test]
    fn invariant_across_pairs() {
        for (_, pair) in ObservablePair::presets() {
            let cfg = EstimateConfig { pair, ..Default::default() };
            let e = estimate_betti(&Instance::Graph(octahedron()), 1, 0.1, &cfg).unwrap();
            assert!(e.beta_estimate.abs() < 1e-8);
            assert!((e.p1_estimate - 3.0).abs() < 1e-8);
        }
    }

    #[test]
    fn sampled_cycle_plan() {
        let cfg = EstimateConfig { mode: Mode::Sampled, seed: 1, ..Default::default() };
        let e = estimate_betti(&c4(), 1, 0.25, &cfg).unwrap();
        let delta = 0.25 / (std::f64::consts::SQRT_2 * 6.0);
        assert!((e.delta.unwrap() - delta).abs() < 1e-15);
        assert_eq!(e.samples_per_observable, Some(hadamard_samples(delta, 0.975).unwrap()));
        assert_eq!(e.beta_rounded, 1);
        // Deterministic per seed.
        assert_eq!(e, estimate_betti(&c4(), 1, 0.25, &cfg).unwrap());
    }

    #[test]
    fn refinement_halves_lower_bound() {
        let cfg = EstimateConfig { mode: Mode::Sampled, beta_lower: 4.0, seed: 3, ..Default::default() };
        let e = estimate_betti(&c4(), 1, 0.25, &cfg).unwrap();
        assert_eq!(e.beta_lower, 1.0);
        assert_eq!(e.refinements, 2);
        let fixed = EstimateConfig { refine: false, ..cfg };
        assert_eq!(estimate_betti(&c4(), 1, 0.25, &fixed).unwrap().refinements, 0);
    }

    #[test]
    fn normalized_examples() {
        let cfg = EstimateConfig::default();
        let e = estimate_normalized_betti(&c4(), 1, 0.05, &cfg).unwrap();
        assert!((e.value - 0.25).abs() < 1e-12);
        let k4 = Instance::Graph(VertexGraph::from_pair_mask(4, 0b111111).unwrap());
        let e = estimate_normalized_betti(&k4, 1, 0.05, &cfg).unwrap();
        assert!(e.value.abs() < 1e-12);
        // Complete complex: |S_k| = C, so no inflation.
        assert_eq!(e.epsilon, 0.05);

        let sampled = EstimateConfig { mode: Mode::Sampled, seed: 4, ..Default::default() };
        let e = estimate_normalized_betti(&Instance::Graph(octahedron()), 2, 0.05, &sampled).unwrap();
        assert_eq!(e.epsilon, 0.05 * (8.0 / 20.0));
        assert!((e.value - 0.125).abs() <= 0.05);
    }

    #[test]
    fn rejects_empty_and_bad_config() {
        let empty = Instance::Graph(VertexGraph::empty(4).unwrap());
        let cfg = EstimateConfig::default();
        assert!(matches!(estimate_betti(&empty, 1, 0.25, &cfg), Err(Error::EmptySimplexSet(1))));
        let bad = EstimateConfig { confidence: 1.0, ..Default::default() };
        assert!(estimate_betti(&c4(), 1, 0.25, &bad).is_err());
        assert!(estimate_betti(&c4(), 1, 0.0, &cfg).is_err());
    }

    #[test]
    fn derived_seeds_differ() {
        assert_ne!(derive_seed(1, 0), derive_seed(1, 1));
        assert_ne!(derive_seed(1, 0), derive_seed(2, 0));
        assert_eq!(derive_seed(5, 3), derive_seed(5, 3));
    }
}
