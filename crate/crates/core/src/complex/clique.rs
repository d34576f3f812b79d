//! Clique (Vietoris–Rips) complexes and the membership query.

use super::graph::{PointCloud, VertexGraph};
use super::simplex::{slot_count, SimplexWord};
use crate::error::{Error, Result};

/// The clique complex of a graph, built up to `max_dim`.
///
/// `simplices[k]` is the sorted list of (k+1)-cliques. Dimensions above
/// `n - 1` are empty by construction and are treated as built.
#[derive(Clone, Debug)]
pub struct CliqueComplex {
    graph: VertexGraph,
    max_dim: usize,
    simplices: Vec<Vec<SimplexWord>>,
}

impl CliqueComplex {
    /// Builds every clique of size `<= max_dim + 1`.
    pub fn build(graph: &VertexGraph, max_dim: usize) -> Result<Self> {
        let n = graph.n();
        if max_dim > n - 1 {
            return Err(Error::DimensionOutOfRange { k: max_dim, max: n - 1 });
        }
        let mut simplices: Vec<Vec<SimplexWord>> = Vec::with_capacity(max_dim + 1);
        simplices.push((0..n).map(|v| SimplexWord::from_bits_unchecked(1 << v, n)).collect());
        for k in 1..=max_dim {
            let mut next = Vec::new();
            for s in &simplices[k - 1] {
                let bits = s.bits();
                let top = 63 - bits.leading_zeros() as usize;
                // Common neighbours strictly above the highest vertex keep each clique unique.
                let mut common = s.vertices().fold(u64::MAX, |m, v| m & graph.neighbours(v));
                common &= !((2u64 << top).wrapping_sub(1));
                while common != 0 {
                    let v = common.trailing_zeros();
                    common &= common - 1;
                    next.push(SimplexWord::from_bits_unchecked(bits | 1 << v, n));
                }
            }
            next.sort_unstable();
            simplices.push(next);
        }
        Ok(Self { graph: graph.clone(), max_dim, simplices })
    }

    pub fn from_point_cloud(cloud: &PointCloud, max_dim: usize) -> Result<Self> {
        Self::build(&cloud.neighbourhood_graph()?, max_dim)
    }

    /// Clique complex of the edge complement of `graph`.
    pub fn complement_of(graph: &VertexGraph, max_dim: usize) -> Result<Self> {
        Self::build(&graph.complement(), max_dim)
    }

    /// Clique complex of this complex's complement graph, at the same `max_dim`.
    pub fn complement(&self) -> Result<Self> {
        Self::complement_of(&self.graph, self.max_dim)
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.graph.n()
    }

    #[inline]
    pub fn max_dim(&self) -> usize {
        self.max_dim
    }

    pub fn graph(&self) -> &VertexGraph {
        &self.graph
    }

    /// Whether dimension `k` is available (built, or trivially empty).
    pub fn is_built(&self, k: usize) -> bool {
        k <= self.max_dim || k >= self.n()
    }

    /// The sorted k-simplices S_k. Dimensions `>= n` are empty.
    pub fn simplices(&self, k: usize) -> Result<&[SimplexWord]> {
        if k <= self.max_dim {
            Ok(&self.simplices[k])
        } else if k >= self.n() {
            Ok(&[])
        } else {
            Err(Error::Unbuilt(k))
        }
    }

    /// |S_k|.
    pub fn count(&self, k: usize) -> Result<usize> {
        self.simplices(k).map(<[_]>::len)
    }

    /// C_{k,n} = binom(n, k + 1).
    pub fn total_slots(&self, k: usize) -> usize {
        slot_count(self.n(), k)
    }

    /// Membership bit for a well-formed k-simplex word: the classical
    /// analogue of the tagging oracle.
    pub fn contains(&self, s: SimplexWord) -> Result<bool> {
        if s.n() != self.n() {
            return Err(Error::MalformedSimplex { word: s.bits(), n: self.n(), k: s.dim() });
        }
        Ok(self.simplices(s.dim())?.binary_search(&s).is_ok())
    }

    /// Membership with an explicit dimension check on the raw word.
    pub fn membership(&self, bits: u64, k: usize) -> Result<bool> {
        let s = SimplexWord::with_dim(bits, self.n(), k)?;
        self.contains(s)
    }

    /// Position of `s` within S_k.
    pub fn index_of(&self, s: SimplexWord) -> Option<usize> {
        self.simplices(s.dim()).ok()?.binary_search(&s).ok()
    }

    /// Counts |S_0|, |S_1|, ... up to `max_dim`.
    pub fn counts(&self) -> Vec<usize> {
        self.simplices.iter().map(Vec::len).collect()
    }
}
