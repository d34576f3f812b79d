use std::path::Path;
use std::time::Instant;

use rayon::prelude::*;
use serde::Serialize;

use qbetti::complex::{slot_count, CliqueComplex, Instance, InstanceFile, InstanceSpec};
use qbetti::extraction::{
    complement_report, derive_seed, estimate_betti_with, estimate_normalized_betti_with, resource_estimate, Accuracy,
    BettiEstimate, ComplementReport, EstimateConfig, NormalizedBettiEstimate, ObservablePair, ResourceInputs,
    ResourceReport,
};
use qbetti::homology::{betti_exact, euler_check, EulerReport, HodgeOperator};

use crate::args::{
    parse_list, Cli, Command, ComplementArgs, EstimateArgs, ExactArgs, GenerateArgs, InstanceArgs, ResourcesArgs,
};
use crate::report::{io_err, write_csv, write_json, write_text, CliError, CliResult, Report, Versions};

/// Instances up to this size get the Euler check on the full complex
/// instead of the skeleton needed for Δ_k.
const FULL_EULER_N: usize = 10;

const DEFAULT_EPS: f64 = 0.25;

pub fn dispatch(cli: &Cli) -> CliResult<()> {
    match &cli.command {
        Command::Generate(a) => generate(a),
        Command::Exact(a) => exact(a),
        Command::Estimate(a) => estimate(a),
        Command::Resources(a) => resources(a),
        Command::Complement(a) => complement(a),
    }
}

fn load_instance(args: &InstanceArgs) -> CliResult<(Instance, InstanceFile)> {
    if let Some(path) = &args.instance {
        let text = std::fs::read_to_string(path).map_err(io_err(path))?;
        let file = InstanceFile::from_json(&text)?;
        let generator = match &file {
            InstanceFile::Generator(spec) => Some(spec.clone()),
            InstanceFile::Edges { generator, .. } | InstanceFile::Points { generator, .. } => generator.clone(),
        };
        let instance = file.resolve()?;
        let canonical = InstanceFile::canonical(&instance, generator);
        return Ok((instance, canonical));
    }
    let model = args.model.ok_or_else(|| CliError::Config("need --instance or --model".into()))?;
    let spec = InstanceSpec::new(model, args.params.params(), args.graph_seed);
    let instance = spec.generate()?;
    let canonical = InstanceFile::canonical(&instance, Some(spec));
    Ok((instance, canonical))
}

fn generate(a: &GenerateArgs) -> CliResult<()> {
    let spec = InstanceSpec::new(a.model, a.params.params(), a.seed);
    let instance = spec.generate()?;
    write_text(&InstanceFile::canonical(&instance, Some(spec)).to_json(), a.out.as_deref())
}

#[derive(Serialize)]
struct ExactResult {
    n: usize,
    k: usize,
    slots: usize,
    simplices: usize,
    betti: usize,
    kernel_dim: usize,
    /// κ of the S_k block of Δ_k; absent when Δ_k vanishes there.
    kappa: Option<f64>,
    lambda_max: f64,
    lambda_min_nonzero: Option<f64>,
    euler: EulerReport,
}

#[derive(Serialize)]
struct SpectrumRow {
    k: usize,
    convention: String,
    block: String,
    index: usize,
    eigenvalue: f64,
}

fn exact(a: &ExactArgs) -> CliResult<()> {
    let start = Instant::now();
    let (instance, file) = load_instance(&a.instance)?;
    let n = instance.n();
    let cx = if n <= FULL_EULER_N && a.k < n {
        CliqueComplex::build(&instance.graph()?, n - 1)?
    } else {
        instance.complex_for(a.k)?
    };
    let simplices = cx.count(a.k)?;
    if simplices == 0 {
        return Err(qbetti::Error::EmptySimplexSet(a.k).into());
    }
    let op = HodgeOperator::new(&cx, a.k, a.convention)?;
    let summary = op.spectral_summary(a.zero_tol);
    let result = ExactResult {
        n,
        k: a.k,
        slots: slot_count(n, a.k),
        simplices,
        betti: betti_exact(&cx, a.k)?,
        kernel_dim: summary.kernel_dim,
        kappa: summary.kappa,
        lambda_max: summary.lambda_max,
        lambda_min_nonzero: summary.lambda_min_nonzero,
        euler: euler_check(&cx)?,
    };
    if let Some(path) = &a.csv {
        let rows: Vec<SpectrumRow> = op
            .blocks()
            .iter()
            .flat_map(|b| {
                b.eigen.values.iter().enumerate().map(|(i, &l)| SpectrumRow {
                    k: a.k,
                    convention: a.convention.to_string(),
                    block: format!("{:?}", b.kind).to_lowercase(),
                    index: i,
                    eigenvalue: l,
                })
            })
            .collect();
        write_csv(&rows, Some(path))?;
    }
    let report = Report {
        command: "exact",
        config: a,
        instance: Some(&file),
        results: result,
        elapsed_seconds: start.elapsed().as_secs_f64(),
        versions: Versions::current(),
    };
    write_json(&report, a.out.as_deref())
}

/// `default`, a preset name, or `custom:<file>`.
pub fn resolve_pair(spec: &str) -> CliResult<ObservablePair> {
    if spec == "default" {
        return Ok(ObservablePair::default());
    }
    if let Some(path) = spec.strip_prefix("custom:") {
        let path = Path::new(path);
        let text = std::fs::read_to_string(path).map_err(io_err(path))?;
        return Ok(ObservablePair::from_json(&text)?);
    }
    ObservablePair::presets()
        .into_iter()
        .find(|(name, _)| *name == spec)
        .map(|(_, p)| p)
        .ok_or_else(|| {
            let names: Vec<_> = ObservablePair::presets().into_iter().map(|(n, _)| n).collect();
            CliError::Config(format!(
                "unknown pair '{spec}' (want default, custom:<file> or one of {})",
                names.join(", ")
            ))
        })
}

#[derive(Serialize)]
struct TrialSummary {
    trials: usize,
    mean: f64,
    std_dev: f64,
    within_bound: Option<usize>,
    /// Multiplicative mode: trials whose rounded estimate equals the oracle.
    #[serde(skip_serializing_if = "Option::is_none")]
    rounded_correct: Option<usize>,
}

impl TrialSummary {
    fn new(values: &[f64], within: &[Option<bool>], correct: Option<usize>) -> Self {
        let t = values.len() as f64;
        let mean = values.iter().sum::<f64>() / t;
        let var = values.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / (t - 1.0).max(1.0);
        let within_bound = within.iter().all(Option::is_some).then(|| within.iter().filter(|w| **w == Some(true)).count());
        Self { trials: values.len(), mean, std_dev: var.sqrt(), within_bound, rounded_correct: correct }
    }
}

#[derive(Serialize)]
struct EstimateResults<E: Serialize> {
    summary: TrialSummary,
    /// κ of the S_k block of Δ_k.
    kappa_laplacian: Option<f64>,
    resources: Option<ResourceReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    resources_note: Option<String>,
    estimates: Vec<E>,
}

#[derive(Serialize)]
struct BettiRow {
    trial: usize,
    seed: u64,
    beta_estimate: f64,
    beta_rounded: u64,
    p1_estimate: f64,
    epsilon: f64,
    delta: Option<f64>,
    samples_per_observable: Option<u64>,
    beta_lower: f64,
    refinements: u32,
    true_beta: Option<usize>,
    within_bound: Option<bool>,
}

#[derive(Serialize)]
struct NormalizedRow {
    trial: usize,
    seed: u64,
    value: f64,
    raw_value: f64,
    delta: f64,
    epsilon: f64,
    measurement_delta: Option<f64>,
    samples_per_observable: Option<u64>,
    true_value: Option<f64>,
    within_bound: Option<bool>,
}

fn estimate(a: &EstimateArgs) -> CliResult<()> {
    let start = Instant::now();
    if a.normalized && a.eps.is_some() {
        return Err(CliError::Config("--normalized takes --delta, not --eps".into()));
    }
    if !a.normalized && a.delta.is_some() {
        return Err(CliError::Config("--delta requires --normalized; use --eps for β_k".into()));
    }
    if a.trials == 0 {
        return Err(CliError::Config("--trials must be at least 1".into()));
    }
    let accuracy = if a.normalized {
        Accuracy::Additive(a.delta.ok_or_else(|| CliError::Config("--normalized needs --delta".into()))?)
    } else {
        Accuracy::Multiplicative(a.eps.unwrap_or(DEFAULT_EPS))
    };
    let (instance, file) = load_instance(&a.instance)?;
    let cfg = EstimateConfig {
        pair: resolve_pair(&a.pair)?,
        convention: a.convention,
        pe: a.pe,
        mode: a.mode,
        confidence: a.confidence,
        seed: a.seed,
        beta_lower: a.beta_lower,
        refine: !a.no_refine,
        zero_tol: a.zero_tol,
    };
    cfg.validate()?;
    let pipeline = cfg.pipeline(&instance, a.k)?;
    let simplices = pipeline.simplex_count();
    if simplices == 0 {
        return Err(qbetti::Error::EmptySimplexSet(a.k).into());
    }
    let kappa_laplacian = pipeline.operator().spectral_summary(a.zero_tol).kappa;
    let trial_cfg = |t: usize| EstimateConfig { seed: derive_seed(a.seed, t as u64), ..cfg.clone() };

    let resources_for = |beta: f64| {
        let inputs = ResourceInputs {
            n: instance.n(),
            k: a.k,
            kappa: kappa_laplacian.unwrap_or(1.0),
            accuracy,
            beta,
            simplices,
        };
        match resource_estimate(inputs, a.confidence) {
            Ok(r) => (Some(r), None),
            Err(e) => (None, Some(e.to_string())),
        }
    };

    let report_doc = match accuracy {
        Accuracy::Multiplicative(eps) => {
            let estimates: Vec<BettiEstimate> = (0..a.trials)
                .into_par_iter()
                .map(|t| estimate_betti_with(&pipeline, eps, &trial_cfg(t)))
                .collect::<Result<_, _>>()?;
            let values: Vec<f64> = estimates.iter().map(|e| e.beta_estimate).collect();
            let within: Vec<Option<bool>> = estimates.iter().map(|e| e.within_bound).collect();
            let correct = estimates
                .iter()
                .map(|e| e.true_beta.map(|b| e.beta_rounded == b as u64))
                .collect::<Option<Vec<bool>>>()
                .map(|v| v.into_iter().filter(|&c| c).count());
            let beta = estimates[0].true_beta.map(|b| b as f64).unwrap_or(estimates[0].beta_rounded as f64);
            if let Some(path) = &a.csv {
                let rows: Vec<BettiRow> = estimates
                    .iter()
                    .enumerate()
                    .map(|(t, e)| BettiRow {
                        trial: t,
                        seed: e.seed,
                        beta_estimate: e.beta_estimate,
                        beta_rounded: e.beta_rounded,
                        p1_estimate: e.p1_estimate,
                        epsilon: e.epsilon,
                        delta: e.delta,
                        samples_per_observable: e.samples_per_observable,
                        beta_lower: e.beta_lower,
                        refinements: e.refinements,
                        true_beta: e.true_beta,
                        within_bound: e.within_bound,
                    })
                    .collect();
                write_csv(&rows, Some(path))?;
            }
            let (resources, resources_note) = resources_for(beta);
            serde_json::to_value(EstimateResults {
                summary: TrialSummary::new(&values, &within, correct),
                kappa_laplacian,
                resources,
                resources_note,
                estimates,
            })
        }
        Accuracy::Additive(delta) => {
            let estimates: Vec<NormalizedBettiEstimate> = (0..a.trials)
                .into_par_iter()
                .map(|t| estimate_normalized_betti_with(&pipeline, delta, &trial_cfg(t)))
                .collect::<Result<_, _>>()?;
            let values: Vec<f64> = estimates.iter().map(|e| e.value).collect();
            let within: Vec<Option<bool>> = estimates.iter().map(|e| e.within_bound).collect();
            if let Some(path) = &a.csv {
                let rows: Vec<NormalizedRow> = estimates
                    .iter()
                    .enumerate()
                    .map(|(t, e)| NormalizedRow {
                        trial: t,
                        seed: e.seed,
                        value: e.value,
                        raw_value: e.raw_value,
                        delta: e.delta,
                        epsilon: e.epsilon,
                        measurement_delta: e.measurement_delta,
                        samples_per_observable: e.samples_per_observable,
                        true_value: e.true_value,
                        within_bound: e.within_bound,
                    })
                    .collect();
                write_csv(&rows, Some(path))?;
            }
            let (resources, resources_note) = resources_for(1.0);
            serde_json::to_value(EstimateResults {
                summary: TrialSummary::new(&values, &within, None),
                kappa_laplacian,
                resources,
                resources_note,
                estimates,
            })
        }
    }
    .map_err(|e| CliError::Config(format!("serialize: {e}")))?;

    let report = Report {
        command: "estimate",
        config: a,
        instance: Some(&file),
        results: report_doc,
        elapsed_seconds: start.elapsed().as_secs_f64(),
        versions: Versions::current(),
    };
    write_json(&report, a.out.as_deref())
}

/// One row of the resource table. Numeric columns are empty on invalid rows.
#[derive(Serialize)]
pub struct ResourceRow {
    pub n: usize,
    pub k: usize,
    pub slots: Option<usize>,
    pub simplices: Option<usize>,
    pub kappa: f64,
    pub accuracy_kind: &'static str,
    pub accuracy: f64,
    pub beta: f64,
    pub this_method_cost: Option<f64>,
    pub prior_cost: Option<f64>,
    pub classical_cost: Option<f64>,
    pub depth_this: Option<f64>,
    pub depth_prior: Option<f64>,
    pub grover_prep_cost: Option<f64>,
    pub queries_per_observable: Option<f64>,
    pub simulator_samples_per_observable: Option<u64>,
    pub measurement_delta: Option<f64>,
    pub valid: bool,
    pub error: String,
}

fn resource_row(n: usize, k: usize, a: &ResourcesArgs, accuracy: Accuracy) -> ResourceRow {
    let (accuracy_kind, value) = match accuracy {
        Accuracy::Multiplicative(e) => ("multiplicative", e),
        Accuracy::Additive(d) => ("additive", d),
    };
    let simplices = (k < n).then(|| a.simplices.unwrap_or_else(|| slot_count(n, k)));
    let report = match simplices {
        None => Err(qbetti::Error::DimensionOutOfRange { k, max: n.saturating_sub(1) }),
        Some(simplices) => resource_estimate(
            ResourceInputs { n, k, kappa: a.kappa, accuracy, beta: a.beta, simplices },
            a.confidence,
        ),
    };
    let r = report.as_ref().ok();
    ResourceRow {
        n,
        k,
        slots: r.map(|r| r.slots),
        simplices,
        kappa: a.kappa,
        accuracy_kind,
        accuracy: value,
        beta: a.beta,
        this_method_cost: r.map(|r| r.this_method_cost),
        prior_cost: r.map(|r| r.prior_cost),
        classical_cost: r.map(|r| r.classical_cost),
        depth_this: r.map(|r| r.depth_this),
        depth_prior: r.map(|r| r.depth_prior),
        grover_prep_cost: r.map(|r| r.grover_prep_cost),
        queries_per_observable: r.map(|r| r.queries_per_observable),
        simulator_samples_per_observable: r.map(|r| r.simulator_samples_per_observable),
        measurement_delta: r.map(|r| r.measurement_delta),
        valid: r.is_some(),
        error: report.err().map(|e| e.to_string()).unwrap_or_default(),
    }
}

fn resources(a: &ResourcesArgs) -> CliResult<()> {
    let ns = parse_list(&a.n).map_err(CliError::Config)?;
    let ks = parse_list(&a.k).map_err(CliError::Config)?;
    if !(a.confidence > 0.0 && a.confidence < 1.0) {
        return Err(CliError::Config(format!("confidence must lie in (0, 1), got {}", a.confidence)));
    }
    let accuracy = match a.delta {
        Some(d) => Accuracy::Additive(d),
        None => Accuracy::Multiplicative(a.eps.unwrap_or(DEFAULT_EPS)),
    };
    let rows: Vec<ResourceRow> =
        ns.iter().flat_map(|&n| ks.iter().map(move |&k| (n, k))).map(|(n, k)| resource_row(n, k, a, accuracy)).collect();
    let invalid = rows.iter().filter(|r| !r.valid).count();
    if invalid > 0 {
        log::warn!("{invalid} of {} resource rows are invalid; see the error column", rows.len());
    }
    write_csv(&rows, a.out.as_deref())
}

#[derive(Serialize)]
struct ComplementRow {
    n: usize,
    k: usize,
    edges: usize,
    complement_edges: usize,
    slots: usize,
    simplices: usize,
    complement_simplices: usize,
    neither_slots: usize,
    restricted_p1: f64,
    dual_p1: f64,
    complement_betti: usize,
    dual_kernel_dim: usize,
    dual_kernel_gap: f64,
    restricted_matches_complement: bool,
    dual_matches_complement: bool,
    pe: String,
}

impl From<&ComplementReport> for ComplementRow {
    fn from(r: &ComplementReport) -> Self {
        Self {
            n: r.n,
            k: r.k,
            edges: r.edges,
            complement_edges: r.complement_edges,
            slots: r.slots,
            simplices: r.simplices,
            complement_simplices: r.complement_simplices,
            neither_slots: r.neither_slots,
            restricted_p1: r.restricted_p1.trace,
            dual_p1: r.dual_p1.trace,
            complement_betti: r.complement_betti,
            dual_kernel_dim: r.dual_kernel_dim,
            dual_kernel_gap: r.dual_kernel_gap,
            restricted_matches_complement: r.restricted_matches_complement,
            dual_matches_complement: r.dual_matches_complement,
            pe: r.pe.to_string(),
        }
    }
}

fn complement(a: &ComplementArgs) -> CliResult<()> {
    let start = Instant::now();
    let ks = parse_list(&a.k).map_err(CliError::Config)?;
    let (instance, file) = load_instance(&a.instance)?;
    let reports: Vec<ComplementReport> =
        ks.iter().map(|&k| complement_report(&instance, k, a.pe)).collect::<Result<_, _>>()?;
    if let Some(path) = &a.csv {
        let rows: Vec<ComplementRow> = reports.iter().map(ComplementRow::from).collect();
        write_csv(&rows, Some(path))?;
    }
    let report = Report {
        command: "complement",
        config: a,
        instance: Some(&file),
        results: reports,
        elapsed_seconds: start.elapsed().as_secs_f64(),
        versions: Versions::current(),
    };
    write_json(&report, a.out.as_deref())
}
