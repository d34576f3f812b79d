//! Simplex encodings, clique complexes and instance plumbing.

mod clique;
mod graph;
mod instance;
mod simplex;

pub use clique::CliqueComplex;
pub use graph::{PointCloud, VertexGraph};
pub use instance::{octahedron, GeneratorParams, Instance, InstanceFile, InstanceSpec, Model};
pub use simplex::{binomial, enumerate_slots, slot_count, slot_index, SimplexWord, MAX_VERTICES};
