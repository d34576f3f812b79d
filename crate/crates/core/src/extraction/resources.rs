//! Asymptotic cost model: every formula is evaluated verbatim with unit
//! constants, so the numbers compare methods rather than predict runtimes.

use serde::{Deserialize, Serialize};

use crate::complex::slot_count;
use crate::error::{Error, Result};
use crate::qpipeline::{grover_prep_cost, hadamard_samples};

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case", tag = "kind", content = "value")]
pub enum Accuracy {
    /// ε on β_k.
    Multiplicative(f64),
    /// δ on β_k/|S_k|.
    Additive(f64),
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ResourceInputs {
    pub n: usize,
    pub k: usize,
    /// Condition number of the Hodge Laplacian.
    pub kappa: f64,
    pub accuracy: Accuracy,
    pub beta: f64,
    pub simplices: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct ResourceReport {
    pub inputs: ResourceInputs,
    /// C_{k,n}.
    pub slots: usize,
    /// Multiplicative mode: `(nk + κn)·C/(εβ)`. Normalized mode: `(nk + κn)·C/(δ|S_k|)`.
    pub this_method_cost: f64,
    /// Multiplicative mode: `(1/ε)(n²√(C/β) + nκ√(|S_k|/β))`.
    /// Normalized mode: `(n²√(C/|S_k|) + nκ)/δ`.
    pub prior_cost: f64,
    /// `C_{k,n}`.
    pub classical_cost: f64,
    /// `nk + nκ`.
    pub depth_this: f64,
    /// `n²√(C/|S_k|) + nκ`.
    pub depth_prior: f64,
    /// `nk√(C/|S_k|)`.
    pub grover_prep_cost: f64,
    /// Trace-estimation query count `1/δ_b` at the planned per-measurement accuracy.
    pub queries_per_observable: f64,
    /// Hadamard-test draws the simulator uses at that accuracy.
    pub simulator_samples_per_observable: u64,
    /// Per-measurement additive accuracy `δ_b` behind the two counts above.
    pub measurement_delta: f64,
}

/// Evaluates the cost model. `confidence` only feeds the simulator sample
/// count.
pub fn resource_estimate(inputs: ResourceInputs, confidence: f64) -> Result<ResourceReport> {
    let ResourceInputs { n, k, kappa, accuracy, beta, simplices } = inputs;
    if n == 0 || k >= n {
        return Err(Error::DimensionOutOfRange { k, max: n.saturating_sub(1) });
    }
    if !(kappa > 0.0 && kappa.is_finite()) {
        return Err(Error::InvalidInput(format!("κ must be positive, got {kappa}")));
    }
    let c = slot_count(n, k) as f64;
    let s = simplices as f64;
    let (nf, kf) = (n as f64, k as f64);
    let grover = grover_prep_cost(n, k, simplices)?;
    let depth_this = nf * kf + nf * kappa;
    let depth_prior = nf * nf * (c / s).sqrt() + nf * kappa;

    let (this_method_cost, prior_cost, measurement_delta) = match accuracy {
        Accuracy::Multiplicative(eps) => {
            if !(eps > 0.0) {
                return Err(Error::InvalidInput(format!("ε must be positive, got {eps}")));
            }
            if !(beta > 0.0) {
                return Err(Error::InvalidInput("multiplicative accuracy is undefined for β = 0".into()));
            }
            let this = (nf * kf + kappa * nf) * c / (eps * beta);
            let prior = (nf * nf * (c / beta).sqrt() + nf * kappa * (s / beta).sqrt()) / eps;
            // Default pair: ‖A⁻¹‖ = C.
            (this, prior, eps * beta / (std::f64::consts::SQRT_2 * c))
        }
        Accuracy::Additive(delta) => {
            if !(delta > 0.0) {
                return Err(Error::InvalidInput(format!("δ must be positive, got {delta}")));
            }
            let this = (nf * kf + kappa * nf) * c / (delta * s);
            let prior = (nf * nf * (c / s).sqrt() + nf * kappa) / delta;
            (this, prior, delta * s / c / std::f64::consts::SQRT_2)
        }
    };
    Ok(ResourceReport {
        inputs,
        slots: c as usize,
        this_method_cost,
        prior_cost,
        classical_cost: c,
        depth_this,
        depth_prior,
        grover_prep_cost: grover,
        queries_per_observable: 1.0 / measurement_delta,
        simulator_samples_per_observable: hadamard_samples(measurement_delta, confidence)?,
        measurement_delta,
    })
}
