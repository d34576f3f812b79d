//! Does p₁ measure the Betti number of the complement graph? Records the
//! answer under both conventions without asserting either way.

use serde::Serialize;

use super::pipeline::{PeSetting, Pipeline};
use crate::complex::{slot_count, CliqueComplex, Instance};
use crate::error::Result;
use crate::homology::{betti_exact, BlockKind, Convention, DEFAULT_ZERO_TOL};
use crate::qpipeline::POne;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ComplementReport {
    pub n: usize,
    pub k: usize,
    pub edges: usize,
    pub complement_edges: usize,
    pub slots: usize,
    pub simplices: usize,
    pub complement_simplices: usize,
    /// Slots in neither complex.
    pub neither_slots: usize,
    pub restricted_p1: POne,
    pub dual_p1: POne,
    /// β_k of the complement graph's clique complex, from exact ranks.
    pub complement_betti: usize,
    /// Kernel dimension of the dual operator's complement block.
    pub dual_kernel_dim: usize,
    /// `|dual p₁ − dual_kernel_dim|`.
    pub dual_kernel_gap: f64,
    pub restricted_matches_complement: bool,
    pub dual_matches_complement: bool,
    pub pe: PeSetting,
}

/// Builds the comparison for one instance.
pub fn complement_report(instance: &Instance, k: usize, pe: PeSetting) -> Result<ComplementReport> {
    let complex = instance.complex_for(k)?;
    let graph = complex.graph().clone();
    let co = CliqueComplex::complement_of(&graph, complex.max_dim())?;

    let restricted = Pipeline::new(complex.clone(), k, Convention::Restricted, pe)?;
    let dual = Pipeline::new(complex, k, Convention::Dual, pe)?;
    let dual_kernel_dim = dual.operator().block_summary(BlockKind::Complement, DEFAULT_ZERO_TOL).kernel_dim;
    let complement_betti = betti_exact(&co, k)?;

    let slots = slot_count(graph.n(), k);
    let simplices = restricted.simplex_count();
    let complement_simplices = co.count(k)?;
    let neither_slots = dual.operator().block(BlockKind::Gapped).slots.len();
    let close = |p: &POne| (p.trace - complement_betti as f64).abs() < 1e-9;
    Ok(ComplementReport {
        n: graph.n(),
        k,
        edges: graph.edge_count(),
        complement_edges: co.graph().edge_count(),
        slots,
        simplices,
        complement_simplices,
        neither_slots,
        restricted_p1: restricted.p_one(),
        dual_p1: dual.p_one(),
        complement_betti,
        dual_kernel_dim,
        dual_kernel_gap: (dual.p_one().trace - dual_kernel_dim as f64).abs(),
        restricted_matches_complement: close(&restricted.p_one()),
        dual_matches_complement: close(&dual.p_one()),
        pe,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::VertexGraph;

    #[test]
    fn cycle_report() {
        let g = VertexGraph::from_edges(4, &[(0, 1), (1, 2), (2, 3), (3, 0)]).unwrap();
        let r = complement_report(&Instance::Graph(g), 1, PeSetting::Ideal).unwrap();
        assert_eq!(r.restricted_p1.trace, 2.0);
        assert_eq!(r.complement_betti, 0);
        assert_eq!(r.complement_simplices, 2);
        assert_eq!(r.dual_kernel_dim, 0);
        assert!(r.dual_kernel_gap < 1e-9);
        assert!(r.dual_matches_complement && !r.restricted_matches_complement);
    }

    #[test]
    fn self_complementary_path() {
        // P4 = 0-1-2-3; its complement 1-3, 3-0, 0-2 is again a path.
        let p4 = VertexGraph::from_edges(4, &[(0, 1), (1, 2), (2, 3)]).unwrap();
        let co = p4.complement();
        assert_eq!(co.edge_count(), 3);
        let a = complement_report(&Instance::Graph(p4), 1, PeSetting::Ideal).unwrap();
        let b = complement_report(&Instance::Graph(co), 1, PeSetting::Ideal).unwrap();
        assert_eq!(a.complement_betti, b.complement_betti);
        assert_eq!(a.restricted_p1, b.restricted_p1);
        assert_eq!(a.dual_kernel_dim, b.dual_kernel_dim);
        assert_eq!((a.simplices, a.complement_simplices), (b.complement_simplices, b.simplices));
    }

    #[test]
    fn complete_graph_has_empty_complement() {
        let k5 = VertexGraph::from_pair_mask(5, (1 << 10) - 1).unwrap();
        let r = complement_report(&Instance::Graph(k5), 1, PeSetting::Ideal).unwrap();
        assert_eq!(r.complement_edges, 0);
        assert_eq!((r.complement_betti, r.dual_kernel_dim, r.complement_simplices), (0, 0, 0));
        assert_eq!(r.dual_p1.trace, 0.0);
        assert_eq!(r.restricted_p1.trace, 0.0);
        assert_eq!(r.restricted_p1.normalized, None);
    }

    #[test]
    fn edgeless_graph_complement_is_complete() {
        let r = complement_report(&Instance::Graph(VertexGraph::empty(5).unwrap()), 1, PeSetting::Ideal).unwrap();
        assert_eq!(r.restricted_p1.trace, 10.0);
        assert_eq!((r.simplices, r.complement_betti, r.dual_kernel_dim), (0, 0, 0));
        assert_eq!(r.dual_p1.trace, 0.0);
    }
}
