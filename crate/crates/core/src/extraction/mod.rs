//! Recovering β_k from two flag-observable measurements: the 2×2 system,
//! its error budget, the accuracy planner, the complement comparison and the
//! resource model.

mod complement;
mod estimate;
mod observable;
mod pipeline;
mod resources;
mod system;

pub use complement::{complement_report, ComplementReport};
pub use estimate::{
    derive_seed, estimate_betti, estimate_betti_with, estimate_normalized_betti, estimate_normalized_betti_with,
    oracle_betti, round_beta, BettiEstimate, EstimateConfig, Mode, NormalizedBettiEstimate, MAX_REFINEMENTS,
    ORACLE_SLOT_LIMIT,
};
pub use observable::{
    check_flag_observable, hadamard_observable, observable_b, pauli_z, projector_one, projector_zero, BValue,
    Measurement, ObservablePair, SINGULAR_RATIO,
};
pub use pipeline::{PeSetting, Pipeline};
pub use resources::{resource_estimate, Accuracy, ResourceInputs, ResourceReport};
pub use system::{
    assemble_system, condition_number, inv_norm, perturbation_bound, plan_delta, solve_system, ExtractionSystem,
    CONDITION_WARN,
};
