//! Input forms for clique complexes: simple graphs and point clouds.

use serde::{Deserialize, Serialize};

use super::simplex::MAX_VERTICES;
use crate::error::{Error, Result};

/// Simple undirected graph on at most 64 vertices, stored as neighbour masks.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct VertexGraph {
    n: usize,
    adj: Vec<u64>,
}

impl VertexGraph {
    pub fn empty(n: usize) -> Result<Self> {
        if n == 0 || n > MAX_VERTICES {
            return Err(Error::InvalidInput(format!("vertex count {n} outside 1..=64")));
        }
        Ok(Self { n, adj: vec![0; n] })
    }

    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut g = Self::empty(n)?;
        for &(u, v) in edges {
            g.add_edge(u, v)?;
        }
        Ok(g)
    }

    /// Builds from a full boolean adjacency matrix; it must be symmetric with
    /// a false diagonal.
    pub fn from_adjacency(matrix: &[Vec<bool>]) -> Result<Self> {
        let n = matrix.len();
        let mut g = Self::empty(n)?;
        for (i, row) in matrix.iter().enumerate() {
            if row.len() != n {
                return Err(Error::DimensionMismatch { expected: n, found: row.len() });
            }
            if row[i] {
                return Err(Error::InvalidInput(format!("self-loop at vertex {i}")));
            }
            for (j, &a) in row.iter().enumerate() {
                if a != matrix[j][i] {
                    return Err(Error::InvalidInput(format!("asymmetric adjacency at ({i},{j})")));
                }
                if a {
                    g.adj[i] |= 1 << j;
                }
            }
        }
        Ok(g)
    }

    /// Graph whose edge set is given by the bits of `mask` over the pairs
    /// `(i, j), i < j` in lexicographic order. Used for exhaustive sweeps.
    pub fn from_pair_mask(n: usize, mask: u64) -> Result<Self> {
        let mut g = Self::empty(n)?;
        let mut bit = 0;
        for i in 0..n {
            for j in i + 1..n {
                if mask >> bit & 1 == 1 {
                    g.adj[i] |= 1 << j;
                    g.adj[j] |= 1 << i;
                }
                bit += 1;
            }
        }
        Ok(g)
    }

    pub fn add_edge(&mut self, u: usize, v: usize) -> Result<()> {
        if u >= self.n || v >= self.n {
            return Err(Error::InvalidInput(format!("edge ({u},{v}) out of range for n = {}", self.n)));
        }
        if u == v {
            return Err(Error::InvalidInput(format!("self-loop at vertex {u}")));
        }
        self.adj[u] |= 1 << v;
        self.adj[v] |= 1 << u;
        Ok(())
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adj[u] >> v & 1 == 1
    }

    /// Neighbour mask of `v`.
    #[inline]
    pub fn neighbours(&self, v: usize) -> u64 {
        self.adj[v]
    }

    /// Edges `(u, v)` with `u < v`, sorted.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for u in 0..self.n {
            for v in u + 1..self.n {
                if self.has_edge(u, v) {
                    out.push((u, v));
                }
            }
        }
        out
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(|m| m.count_ones() as usize).sum::<usize>() / 2
    }

    /// True iff the vertex set encoded in `word` is pairwise adjacent.
    pub fn is_clique(&self, word: u64) -> bool {
        let mut rest = word;
        while rest != 0 {
            let v = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            if rest & !self.adj[v] != 0 {
                return false;
            }
        }
        true
    }

    /// Edge complement: same vertices, an edge exactly where `self` has none.
    pub fn complement(&self) -> Self {
        let full = if self.n == 64 { u64::MAX } else { (1u64 << self.n) - 1 };
        let adj = (0..self.n).map(|v| !self.adj[v] & full & !(1u64 << v)).collect();
        Self { n: self.n, adj }
    }

    /// Disjoint union; vertices of `other` are shifted by `self.n()`.
    pub fn disjoint_union(&self, other: &Self) -> Result<Self> {
        let mut g = Self::empty(self.n + other.n)?;
        for (u, v) in self.edges() {
            g.add_edge(u, v)?;
        }
        for (u, v) in other.edges() {
            g.add_edge(u + self.n, v + self.n)?;
        }
        Ok(g)
    }
}

/// Euclidean point cloud together with the length scale that induces edges.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PointCloud {
    pub points: Vec<Vec<f64>>,
    pub length_scale: f64,
}

impl PointCloud {
    pub fn new(points: Vec<Vec<f64>>, length_scale: f64) -> Result<Self> {
        let cloud = Self { points, length_scale };
        cloud.validate()?;
        Ok(cloud)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.length_scale > 0.0) || !self.length_scale.is_finite() {
            return Err(Error::InvalidInput(format!(
                "length_scale must be positive, got {}",
                self.length_scale
            )));
        }
        if self.points.is_empty() || self.points.len() > MAX_VERTICES {
            return Err(Error::InvalidInput(format!(
                "point count {} outside 1..=64",
                self.points.len()
            )));
        }
        let dim = self.points[0].len();
        for p in &self.points {
            if p.len() != dim {
                return Err(Error::DimensionMismatch { expected: dim, found: p.len() });
            }
            if p.iter().any(|x| !x.is_finite()) {
                return Err(Error::InvalidInput("non-finite coordinate".into()));
            }
        }
        Ok(())
    }

    /// Neighbourhood graph: `u ~ v` iff `|p_u - p_v| <= length_scale`.
    /// Ties count as connected (closed balls).
    pub fn neighbourhood_graph(&self) -> Result<VertexGraph> {
        self.validate()?;
        let n = self.points.len();
        let mut g = VertexGraph::empty(n)?;
        let r2 = self.length_scale * self.length_scale;
        for u in 0..n {
            for v in u + 1..n {
                let d2: f64 = self.points[u]
                    .iter()
                    .zip(&self.points[v])
                    .map(|(a, b)| (a - b) * (a - b))
                    .sum();
                if d2 <= r2 {
                    g.add_edge(u, v)?;
                }
            }
        }
        Ok(g)
    }
}
