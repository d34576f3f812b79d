//! Simulated quantum pipeline: tagged state preparation, phase estimation,
//! the reduced density operator, block encodings and Hadamard-test trace
//! estimation.

mod block;
mod cost;
mod density;
mod phase;
mod sampling;
mod state;

pub use block::{
    block_encode_density, block_encode_hermitian, block_encode_projector, block_encode_purification,
    tensor_block_encoding, BlockEncoding, Verification, BLOCK_TOL, MAX_DENSE_DIM, UNITARITY_TOL,
};
pub use cost::grover_prep_cost;
pub use density::{member_zero_weight, p_one, p_zero, reduced_density, DensityOperator, MixtureTerm, POne};
pub use phase::{
    apply_phase_estimation, outcome_amplitudes, zero_outcome_probability, zero_phase_weight, zero_phase_weights,
    PEConfig, PhaseMode, C64, MAX_PHASE_BITS,
};
pub use sampling::{
    bernoulli_count, hadamard_samples, hoeffding_samples, sample_hadamard, trace_estimate, EncodedObservable,
    FlagObservable, TraceEstimate,
};
pub use state::{copy_register, prepare_phi, TaggedState};
