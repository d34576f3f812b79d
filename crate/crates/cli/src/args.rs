use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;

use qbetti::complex::{GeneratorParams, Model};
use qbetti::extraction::{Mode, PeSetting};
use qbetti::homology::{Convention, DEFAULT_ZERO_TOL};

#[derive(Parser, Debug)]
#[command(name = "qbetti", version, about = "Simulated quantum estimation of clique-complex Betti numbers")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Generate a seeded instance and write it as a canonical instance file.
    Generate(GenerateArgs),
    /// Exact Betti number, simplex counts, κ and the Euler check.
    Exact(ExactArgs),
    /// Run the extraction pipeline, exactly or with sampled trace estimates.
    Estimate(EstimateArgs),
    /// Tabulate the asymptotic cost model over a grid of (n, k).
    Resources(ResourcesArgs),
    /// Compare p₁ with the complement graph's Betti number under both conventions.
    Complement(ComplementArgs),
}

#[derive(Args, Debug, Clone, Default, Serialize)]
pub struct GeneratorFlags {
    /// Vertex or point count.
    #[arg(long)]
    pub n: Option<usize>,
    /// Edge probability (erdos-renyi).
    #[arg(long)]
    pub p: Option<f64>,
    /// Length scale (annulus-cloud).
    #[arg(long)]
    pub radius: Option<f64>,
    #[arg(long)]
    pub inner: Option<f64>,
    #[arg(long)]
    pub outer: Option<f64>,
}

impl GeneratorFlags {
    pub fn params(&self) -> GeneratorParams {
        GeneratorParams { n: self.n, p: self.p, radius: self.radius, inner: self.inner, outer: self.outer }
    }
}

#[derive(Args, Debug, Serialize)]
pub struct GenerateArgs {
    /// erdos-renyi, cycle, complete, octahedron or annulus-cloud.
    #[arg(long)]
    pub model: Model,
    #[command(flatten)]
    pub params: GeneratorFlags,
    /// Generator seed.
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Output path; stdout when absent.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

/// An instance file or an inline generator recipe.
#[derive(Args, Debug, Clone, Serialize)]
pub struct InstanceArgs {
    /// Instance JSON file.
    #[arg(long, conflicts_with = "model", required_unless_present = "model")]
    pub instance: Option<PathBuf>,
    /// Generate the instance instead of reading it.
    #[arg(long)]
    pub model: Option<Model>,
    #[command(flatten)]
    pub params: GeneratorFlags,
    #[arg(long, default_value_t = 0)]
    pub graph_seed: u64,
}

#[derive(Args, Debug, Serialize)]
pub struct ExactArgs {
    #[command(flatten)]
    pub instance: InstanceArgs,
    #[arg(long)]
    pub k: usize,
    /// Convention used for the exported spectrum.
    #[arg(long, default_value_t = Convention::Restricted)]
    pub convention: Convention,
    #[arg(long, default_value_t = DEFAULT_ZERO_TOL)]
    pub zero_tol: f64,
    /// JSON report path; stdout when absent.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Spectrum CSV path.
    #[arg(long)]
    pub csv: Option<PathBuf>,
}

#[derive(Args, Debug, Serialize)]
pub struct EstimateArgs {
    #[command(flatten)]
    pub instance: InstanceArgs,
    #[arg(long)]
    pub k: usize,
    /// Multiplicative accuracy on β_k (default 0.25).
    #[arg(long, conflicts_with = "delta")]
    pub eps: Option<f64>,
    /// Additive accuracy on β_k/|S_k|; requires --normalized.
    #[arg(long)]
    pub delta: Option<f64>,
    /// Estimate β_k/|S_k| instead of β_k.
    #[arg(long)]
    pub normalized: bool,
    #[arg(long, default_value_t = Mode::Exact)]
    pub mode: Mode,
    #[arg(long, default_value_t = Convention::Restricted)]
    pub convention: Convention,
    /// ideal, bits:<t> or bits:auto.
    #[arg(long, default_value_t = PeSetting::Ideal)]
    pub pe: PeSetting,
    /// `default`, a preset name, or `custom:<file>`.
    #[arg(long, default_value = "default")]
    pub pair: String,
    #[arg(long, default_value_t = 0.95)]
    pub confidence: f64,
    /// Master seed; trial t uses an independent seed derived from it.
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, default_value_t = 1)]
    pub trials: usize,
    #[arg(long, default_value_t = 1.0)]
    pub beta_lower: f64,
    /// Keep beta_lower fixed.
    #[arg(long)]
    pub no_refine: bool,
    #[arg(long, default_value_t = DEFAULT_ZERO_TOL)]
    pub zero_tol: f64,
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Per-trial CSV path.
    #[arg(long)]
    pub csv: Option<PathBuf>,
}

#[derive(Args, Debug, Serialize)]
pub struct ResourcesArgs {
    /// Vertex counts: `8`, `4,6,9` or an inclusive range `4..12`.
    #[arg(long)]
    pub n: String,
    /// Dimensions, same syntax as --n.
    #[arg(long)]
    pub k: String,
    #[arg(long, default_value_t = 1.0)]
    pub kappa: f64,
    #[arg(long, conflicts_with = "delta")]
    pub eps: Option<f64>,
    #[arg(long)]
    pub delta: Option<f64>,
    #[arg(long, default_value_t = 1.0)]
    pub beta: f64,
    /// |S_k|; defaults to C_{k,n}.
    #[arg(long)]
    pub simplices: Option<usize>,
    #[arg(long, default_value_t = 0.95)]
    pub confidence: f64,
    /// CSV path; stdout when absent.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Args, Debug, Serialize)]
pub struct ComplementArgs {
    #[command(flatten)]
    pub instance: InstanceArgs,
    /// Dimensions, same syntax as `resources --k`.
    #[arg(long, default_value = "1")]
    pub k: String,
    #[arg(long, default_value_t = PeSetting::Ideal)]
    pub pe: PeSetting,
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long)]
    pub csv: Option<PathBuf>,
}

/// Parses `3`, `1,2,5` or an inclusive range `a..b`.
pub fn parse_list(s: &str) -> Result<Vec<usize>, String> {
    let bad = |part: &str| format!("bad list entry '{part}' in '{s}'");
    let mut out = Vec::new();
    for part in s.split(',').map(str::trim).filter(|p| !p.is_empty()) {
        if let Some((a, b)) = part.split_once("..") {
            let a: usize = a.trim().parse().map_err(|_| bad(part))?;
            let b: usize = b.trim_start_matches('=').trim().parse().map_err(|_| bad(part))?;
            if a > b {
                return Err(bad(part));
            }
            out.extend(a..=b);
        } else {
            out.push(part.parse().map_err(|_| bad(part))?);
        }
    }
    if out.is_empty() {
        return Err(format!("empty list '{s}'"));
    }
    Ok(out)
}
