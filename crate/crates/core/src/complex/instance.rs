//! Seeded instance generators and the JSON instance file format.
//!
//! An instance file holds one of
//!
//! ```json
//! {"points": [[0.0, 1.0], ...], "length_scale": 1.2}
//! {"n": 4, "edges": [[0, 1], [1, 2]]}
//! {"model": "erdos-renyi", "params": {"n": 8, "p": 0.5}, "seed": 7}
//! ```
//!
//! A generator spec is resolved to a concrete graph or point cloud on load.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::clique::CliqueComplex;
use super::graph::{PointCloud, VertexGraph};
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Model {
    ErdosRenyi,
    Cycle,
    Complete,
    Octahedron,
    AnnulusCloud,
}

impl std::str::FromStr for Model {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        serde_json::from_value(serde_json::Value::String(s.to_string()))
            .map_err(|_| Error::InvalidInput(format!("unknown model '{s}'")))
    }
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GeneratorParams {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub n: Option<usize>,
    /// Edge probability (erdos-renyi).
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub p: Option<f64>,
    /// Length scale for point-cloud models.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub radius: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub inner: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub outer: Option<f64>,
}

/// A generator recipe. The seed fully determines the output.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InstanceSpec {
    pub model: Model,
    #[serde(default)]
    pub params: GeneratorParams,
    #[serde(default)]
    pub seed: u64,
}

/// A concrete instance.
#[derive(Clone, Debug, PartialEq)]
pub enum Instance {
    Graph(VertexGraph),
    Cloud(PointCloud),
}

impl Instance {
    pub fn graph(&self) -> Result<VertexGraph> {
        match self {
            Instance::Graph(g) => Ok(g.clone()),
            Instance::Cloud(c) => c.neighbourhood_graph(),
        }
    }

    pub fn n(&self) -> usize {
        match self {
            Instance::Graph(g) => g.n(),
            Instance::Cloud(c) => c.points.len(),
        }
    }

    /// Clique complex built far enough for Δ_k: up to `min(k + 1, n - 1)`.
    pub fn complex_for(&self, k: usize) -> Result<CliqueComplex> {
        let n = self.n();
        if k >= n {
            return Err(Error::DimensionOutOfRange { k, max: n - 1 });
        }
        CliqueComplex::build(&self.graph()?, (k + 1).min(n - 1))
    }
}

impl InstanceSpec {
    pub fn new(model: Model, params: GeneratorParams, seed: u64) -> Self {
        Self { model, params, seed }
    }

    pub fn generate(&self) -> Result<Instance> {
        let need_n = || {
            self.params
                .n
                .ok_or_else(|| Error::InvalidInput(format!("model {:?} needs params.n", self.model)))
        };
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
        match self.model {
            Model::Cycle => {
                let n = need_n()?;
                if n < 3 {
                    return Err(Error::InvalidInput("cycle needs n >= 3".into()));
                }
                let edges: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
                Ok(Instance::Graph(VertexGraph::from_edges(n, &edges)?))
            }
            Model::Complete => {
                let n = need_n()?;
                let mut g = VertexGraph::empty(n)?;
                for u in 0..n {
                    for v in u + 1..n {
                        g.add_edge(u, v)?;
                    }
                }
                Ok(Instance::Graph(g))
            }
            Model::Octahedron => Ok(Instance::Graph(octahedron())),
            Model::ErdosRenyi => {
                let n = need_n()?;
                let p = self
                    .params
                    .p
                    .ok_or_else(|| Error::InvalidInput("erdos-renyi needs params.p".into()))?;
                if !(0.0..=1.0).contains(&p) {
                    return Err(Error::InvalidInput(format!("edge probability {p} outside [0,1]")));
                }
                let mut g = VertexGraph::empty(n)?;
                for u in 0..n {
                    for v in u + 1..n {
                        if rng.random::<f64>() < p {
                            g.add_edge(u, v)?;
                        }
                    }
                }
                Ok(Instance::Graph(g))
            }
            Model::AnnulusCloud => {
                let n = need_n()?;
                let radius = self
                    .params
                    .radius
                    .ok_or_else(|| Error::InvalidInput("annulus-cloud needs params.radius".into()))?;
                let inner = self.params.inner.unwrap_or(1.0);
                let outer = self.params.outer.unwrap_or(1.25);
                if !(0.0 <= inner && inner <= outer) {
                    return Err(Error::InvalidInput(format!("bad annulus radii {inner}..{outer}")));
                }
                // Area-uniform radius in [inner, outer].
                let points = (0..n)
                    .map(|_| {
                        let theta = rng.random::<f64>() * std::f64::consts::TAU;
                        let u = rng.random::<f64>();
                        let r = (inner * inner + u * (outer * outer - inner * inner)).sqrt();
                        vec![r * theta.cos(), r * theta.sin()]
                    })
                    .collect();
                Ok(Instance::Cloud(PointCloud::new(points, radius)?))
            }
        }
    }
}

/// Regular octahedron: six vertices, every pair adjacent except the three
/// antipodal pairs (0,3), (1,4), (2,5). Its clique complex is a 2-sphere.
pub fn octahedron() -> VertexGraph {
    let mut g = VertexGraph::empty(6).expect("6 vertices");
    for u in 0..6 {
        for v in u + 1..6 {
            if v != u + 3 {
                g.add_edge(u, v).expect("in range");
            }
        }
    }
    g
}

/// Serialized form of an instance file.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum InstanceFile {
    Edges {
        n: usize,
        edges: Vec<[usize; 2]>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        generator: Option<InstanceSpec>,
    },
    Points {
        points: Vec<Vec<f64>>,
        length_scale: f64,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        generator: Option<InstanceSpec>,
    },
    Generator(InstanceSpec),
}

impl InstanceFile {
    pub fn resolve(&self) -> Result<Instance> {
        match self {
            InstanceFile::Edges { n, edges, .. } => {
                let pairs: Vec<_> = edges.iter().map(|e| (e[0], e[1])).collect();
                Ok(Instance::Graph(VertexGraph::from_edges(*n, &pairs)?))
            }
            InstanceFile::Points { points, length_scale, .. } => {
                Ok(Instance::Cloud(PointCloud::new(points.clone(), *length_scale)?))
            }
            InstanceFile::Generator(spec) => spec.generate(),
        }
    }

    /// Canonical concrete form of `instance`, optionally recording its recipe.
    pub fn canonical(instance: &Instance, generator: Option<InstanceSpec>) -> Self {
        match instance {
            Instance::Graph(g) => InstanceFile::Edges {
                n: g.n(),
                edges: g.edges().into_iter().map(|(u, v)| [u, v]).collect(),
                generator,
            },
            Instance::Cloud(c) => InstanceFile::Points {
                points: c.points.clone(),
                length_scale: c.length_scale,
                generator,
            },
        }
    }

    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::InvalidInput(format!("instance file: {e}")))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("instance serializes")
    }
}
