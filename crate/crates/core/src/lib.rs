//! Desk-scale simulation of a block-encoding pipeline that recovers Betti
//! numbers of clique complexes from two observable expectation values.
//!
//! The crate is split the way the computation flows:
//!
//! * [`complex`]: simplex words, clique complexes and instance generation.
//! * [`homology`]: boundary maps, Hodge Laplacians and the exact Betti oracle.
//! * [`qpipeline`]: the tagged state, phase estimation over `exp(iτΔ_k)`, the
//!   reduced density operator, block encodings and sampled trace estimation.
//! * [`extraction`]: the 2×2 linear system, its error budget, the
//!   accuracy planner and the resource model.

pub mod complex;
pub mod error;
pub mod extraction;
pub mod homology;
pub mod qpipeline;

pub use error::{Error, Result};

/// Crate version, recorded in reports.
pub const VERSION: &str = env!("CARGO_PKG_VERSION");
