//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits
//! nonzero if any criterion fails.
//!
//! Run with `cargo test -p qbetti-cli --test acceptance`.

use std::f64::consts::SQRT_2;
use std::process::Command;
use std::time::Instant;

use nalgebra::{Matrix2, Vector2};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use qbetti::complex::{
    octahedron, slot_count, CliqueComplex, GeneratorParams, Instance, InstanceSpec, Model, VertexGraph,
};
use qbetti::extraction::{
    assemble_system, complement_report, derive_seed, estimate_betti_with, estimate_normalized_betti_with, inv_norm,
    projector_one, resource_estimate, solve_system, Accuracy, EstimateConfig, Mode, ObservablePair, PeSetting,
    Pipeline, ResourceInputs,
};
use qbetti::homology::{betti_exact, euler_check, Convention};
use qbetti::qpipeline::{
    block_encode_density, block_encode_hermitian, block_encode_projector, p_zero, tensor_block_encoding,
    trace_estimate, EncodedObservable, FlagObservable, BLOCK_TOL, C64, UNITARITY_TOL,
};

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome { pass, detail: detail.into() }
}

fn c4() -> VertexGraph {
    VertexGraph::from_edges(4, &[(0, 1), (1, 2), (2, 3), (3, 0)]).unwrap()
}

fn er(n: usize, p: f64, seed: u64) -> VertexGraph {
    InstanceSpec::new(Model::ErdosRenyi, GeneratorParams { n: Some(n), p: Some(p), ..Default::default() }, seed)
        .generate()
        .unwrap()
        .graph()
        .unwrap()
}

fn full_complex(g: &VertexGraph) -> CliqueComplex {
    CliqueComplex::build(g, g.n() - 1).unwrap()
}

fn exact_cfg(pair: ObservablePair) -> EstimateConfig {
    EstimateConfig { pair, ..Default::default() }
}

/// Every labelled graph on 1..=6 vertices at k ∈ {0, 1}, then 50 seeded
/// ER(8) graphs at k ∈ {0, 1, 2}.
fn oracle_cases() -> Vec<(VertexGraph, Vec<usize>)> {
    let mut cases = Vec::new();
    for n in 1..=6usize {
        let pairs = n * (n - 1) / 2;
        for mask in 0..(1u64 << pairs) {
            cases.push((VertexGraph::from_pair_mask(n, mask).unwrap(), (0..2.min(n)).collect()));
        }
    }
    for i in 0..50u64 {
        let p = [0.3, 0.5, 0.7][(i % 3) as usize];
        cases.push((er(8, p, i), vec![0, 1, 2]));
    }
    cases
}

#[derive(Default)]
struct SweepStats {
    graphs: usize,
    pairs_checked: usize,
    empty: usize,
    c1_fail: usize,
    c1_max_dev: f64,
    c2_fail: usize,
    c2_max_dev: f64,
    euler_fail: usize,
    invariance_fail: usize,
    invariance_max_dev: f64,
    p1_fail: usize,
}

impl SweepStats {
    fn merge(mut self, o: Self) -> Self {
        self.graphs += o.graphs;
        self.pairs_checked += o.pairs_checked;
        self.empty += o.empty;
        self.c1_fail += o.c1_fail;
        self.c1_max_dev = self.c1_max_dev.max(o.c1_max_dev);
        self.c2_fail += o.c2_fail;
        self.c2_max_dev = self.c2_max_dev.max(o.c2_max_dev);
        self.euler_fail += o.euler_fail;
        self.invariance_fail += o.invariance_fail;
        self.invariance_max_dev = self.invariance_max_dev.max(o.invariance_max_dev);
        self.p1_fail += o.p1_fail;
        self
    }
}

fn sweep_case(g: &VertexGraph, ks: &[usize], pairs: &[ObservablePair]) -> SweepStats {
    let mut st = SweepStats { graphs: 1, ..Default::default() };
    let cx = full_complex(g);
    if !euler_check(&cx).unwrap().holds {
        st.euler_fail += 1;
    }
    for &k in ks {
        let beta = betti_exact(&cx, k).unwrap();
        let sk = cx.count(k).unwrap();
        if sk == 0 {
            st.empty += 1;
            if beta != 0 {
                st.c1_fail += 1;
            }
            continue;
        }
        st.pairs_checked += 1;
        let pipe = Pipeline::new(cx.clone(), k, Convention::Restricted, PeSetting::Ideal).unwrap();

        let estimates: Vec<f64> = pairs
            .iter()
            .map(|pair| estimate_betti_with(&pipe, 0.25, &exact_cfg(pair.clone())).unwrap())
            .map(|e| {
                if e.beta_rounded != beta as u64 {
                    st.c1_fail += 1;
                }
                e.beta_estimate
            })
            .collect();
        let dev = (estimates[0] - beta as f64).abs();
        st.c1_max_dev = st.c1_max_dev.max(dev);
        let spread = estimates.iter().map(|e| (e - estimates[0]).abs()).fold(0.0, f64::max);
        st.invariance_max_dev = st.invariance_max_dev.max(spread);
        if spread > 1e-9 {
            st.invariance_fail += 1;
        }

        let p0 = p_zero(&cx, k, pipe.operator(), pipe.pe_config()).unwrap();
        let d2 = (p0 * sk as f64 - beta as f64).abs();
        st.c2_max_dev = st.c2_max_dev.max(d2);
        if d2 > 1e-9 {
            st.c2_fail += 1;
        }

        let expect_p1 = (slot_count(g.n(), k) - sk) as f64;
        if (pipe.p_one().trace - expect_p1).abs() > 1e-9 {
            st.p1_fail += 1;
        }
    }
    st
}

/// Criteria 1, 2 and 9 share one sweep over the oracle instances.
fn oracle_sweep() -> SweepStats {
    let pairs: Vec<ObservablePair> = ObservablePair::presets().into_iter().map(|(_, p)| p).collect();
    oracle_cases()
        .par_iter()
        .map(|(g, ks)| sweep_case(g, ks, &pairs))
        .reduce(SweepStats::default, SweepStats::merge)
}

fn criterion_1(st: &SweepStats) -> Outcome {
    outcome(
        st.c1_fail == 0,
        format!(
            "{} graphs, {} (graph, k) cases with S_k nonempty, {} empty; rounded mismatches {}; max |β̃−β| = {:.1e}",
            st.graphs, st.pairs_checked, st.empty, st.c1_fail, st.c1_max_dev
        ),
    )
}

fn criterion_2(st: &SweepStats) -> Outcome {
    outcome(
        st.c2_fail == 0,
        format!("{} cases; max |p₀·|S_k| − β| = {:.1e} (tol 1e-9)", st.pairs_checked, st.c2_max_dev),
    )
}

fn criterion_3() -> Outcome {
    let mut notes = Vec::new();
    let mut ok = true;
    let mut check = |name: &str, g: &VertexGraph, k: usize, expect: usize| {
        let cx = full_complex(g);
        let oracle = betti_exact(&cx, k).unwrap();
        let pipe = Pipeline::new(cx, k, Convention::Restricted, PeSetting::Ideal).unwrap();
        let est = estimate_betti_with(&pipe, 0.25, &EstimateConfig::default()).unwrap();
        let good = oracle == expect && est.beta_rounded == expect as u64 && (est.beta_estimate - expect as f64).abs() < 1e-9;
        ok &= good;
        notes.push(format!("{name} β{k}={oracle}/{:.6}", est.beta_estimate));
        pipe
    };
    check("C4", &c4(), 1, 1);
    let oct = check("octahedron", &octahedron(), 2, 1);
    let two = c4().disjoint_union(&c4()).unwrap();
    check("2×C4", &two, 0, 2);
    check("2×C4", &two, 1, 2);

    let norm = estimate_normalized_betti_with(&oct, 0.05, &EstimateConfig::default()).unwrap();
    let good = (norm.value - 0.125).abs() < 1e-12;
    ok &= good;
    notes.push(format!("octahedron β2/|S2|={:.6}", norm.value));
    outcome(ok, notes.join(", "))
}

/// Representative pipeline ρ with C_{k,n} ≤ 32: every graph on 4 vertices,
/// seeded graphs on 5..=8 vertices, ideal and 2-bit phase registers.
fn encoding_cases() -> Vec<(VertexGraph, usize, PeSetting)> {
    let mut cases = Vec::new();
    for mask in 0..64u64 {
        let g = VertexGraph::from_pair_mask(4, mask).unwrap();
        for k in 0..4 {
            cases.push((g.clone(), k, PeSetting::Ideal));
        }
    }
    for seed in 0..12u64 {
        let p = [0.3, 0.5, 0.7][(seed % 3) as usize];
        for n in 5..=8usize {
            let g = er(n, p, 100 + seed);
            for k in 0..n {
                if slot_count(n, k) <= 32 {
                    cases.push((g.clone(), k, if seed % 4 == 0 { PeSetting::Bits(2) } else { PeSetting::Ideal }));
                }
            }
        }
    }
    cases.push((octahedron(), 2, PeSetting::Ideal));
    cases.push((octahedron(), 2, PeSetting::Bits(2)));
    cases
}

fn criterion_4() -> Outcome {
    let m_list: Vec<nalgebra::Matrix2<C64>> = ObservablePair::presets()
        .into_iter()
        .flat_map(|(_, p)| [*p.m1(), *p.m2()])
        .collect();
    let cases = encoding_cases();
    let results: Vec<Option<(f64, f64, usize)>> = cases
        .par_iter()
        .map(|(g, k, pe)| {
            let cx = CliqueComplex::build(g, (k + 1).min(g.n() - 1)).unwrap();
            if cx.count(*k).unwrap() == 0 {
                return None;
            }
            let pipe = Pipeline::new(cx, *k, Convention::Restricted, *pe).unwrap();
            let rho = pipe.density().unwrap();
            let mut worst = (0.0f64, 0.0f64, 0usize);
            let mut record = |u: f64, b: f64| {
                worst.0 = worst.0.max(u);
                worst.1 = worst.1.max(b);
                worst.2 += 1;
            };
            let enc = block_encode_density(rho).unwrap();
            record(enc.unitarity_deviation(), max_abs(&(enc.block() - rho.to_matrix())));

            let proj = block_encode_projector(rho.phase_dim(), rho.slot_dim()).unwrap();
            record(proj.unitarity_deviation(), max_abs(&(proj.block() - proj.target())));
            for m in &m_list {
                let dm = nalgebra::DMatrix::from_fn(2, 2, |i, j| m[(i, j)]);
                let h = block_encode_hermitian(&dm).unwrap();
                record(h.unitarity_deviation(), max_abs(&(h.block() - dm)));
                if rho.dim() <= 64 {
                    let t = tensor_block_encoding(&[proj.clone(), h]).unwrap();
                    let flag = FlagObservable::new(*m).to_matrix(rho.phase_dim(), rho.slot_dim());
                    record(t.unitarity_deviation(), max_abs(&(t.block() - flag)));
                }
            }
            Some(worst)
        })
        .collect();
    let done: Vec<_> = results.into_iter().flatten().collect();
    let unit = done.iter().map(|w| w.0).fold(0.0, f64::max);
    let block = done.iter().map(|w| w.1).fold(0.0, f64::max);
    let encodings: usize = done.iter().map(|w| w.2).sum();
    outcome(
        unit <= UNITARITY_TOL && block <= BLOCK_TOL,
        format!(
            "{} pipeline ρ, {} encodings; max unitarity deviation {:.1e} (tol {:.0e}), max block error {:.1e} (tol {:.0e})",
            done.len(),
            encodings,
            unit,
            UNITARITY_TOL,
            block,
            BLOCK_TOL
        ),
    )
}

fn max_abs(m: &nalgebra::DMatrix<C64>) -> f64 {
    m.iter().map(|z| z.norm()).fold(0.0, f64::max)
}

/// Least-squares slope of `ys` against `xs`.
fn slope(xs: &[f64], ys: &[f64]) -> f64 {
    let n = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / n;
    let my = ys.iter().sum::<f64>() / n;
    let sxy: f64 = xs.iter().zip(ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let sxx: f64 = xs.iter().map(|x| (x - mx).powi(2)).sum();
    sxy / sxx
}

fn criterion_5() -> Outcome {
    let pipe = Pipeline::new(CliqueComplex::build(&c4(), 2).unwrap(), 1, Convention::Restricted, PeSetting::Ideal).unwrap();
    let rho = pipe.density().unwrap();
    let obs = FlagObservable::new(projector_one());
    let truth = obs.expectation(rho).unwrap();
    let reps = 200u64;

    let errors = |delta: f64, stream: u64| -> (u64, Vec<f64>) {
        let est: Vec<_> = (0..reps)
            .into_par_iter()
            .map(|r| trace_estimate(&obs, rho, delta, 0.95, derive_seed(stream, r)).unwrap())
            .collect();
        (est[0].samples_used, est.iter().map(|e| e.value - truth).collect())
    };

    let (samples, errs) = errors(0.05, 5_000);
    let covered = errs.iter().filter(|e| e.abs() <= 0.05).count();
    let coverage = covered as f64 / reps as f64;

    let (mut xs, mut ys) = (Vec::new(), Vec::new());
    for (i, delta) in [0.4, 0.2, 0.1, 0.05, 0.025].into_iter().enumerate() {
        let (n, errs) = errors(delta, 5_100 + i as u64);
        let rms = (errs.iter().map(|e| e * e).sum::<f64>() / errs.len() as f64).sqrt();
        xs.push((n as f64).ln());
        ys.push(rms.ln());
    }
    let s = slope(&xs, &ys);
    outcome(
        coverage >= 0.90 && (s + 0.5).abs() <= 0.1,
        format!(
            "Tr(Mρ) = {truth:.6}, {samples} draws per estimate; coverage {covered}/{reps} = {coverage:.3} (need ≥ 0.90); \
             log-log slope {s:.3} (need −0.5 ± 0.1)"
        ),
    )
}

fn criterion_6() -> Outcome {
    let cfg = EstimateConfig { mode: Mode::Sampled, confidence: 0.95, beta_lower: 1.0, ..Default::default() };
    let mut ok = true;
    let mut notes = Vec::new();
    for (idx, (name, g, k)) in [("C4", c4(), 1usize), ("octahedron", octahedron(), 2)].into_iter().enumerate() {
        let pipe = Pipeline::new(CliqueComplex::build(&g, k + 1).unwrap(), k, Convention::Restricted, PeSetting::Ideal).unwrap();
        let beta = 1.0;
        let est: Vec<_> = (0..100u64)
            .into_par_iter()
            .map(|t| {
                let c = EstimateConfig { seed: derive_seed(6_000 + idx as u64, t), ..cfg.clone() };
                estimate_betti_with(&pipe, 0.25, &c).unwrap()
            })
            .collect();
        let within = est.iter().filter(|e| (e.beta_estimate - beta).abs() <= 0.25 * beta).count();
        let rounded = est.iter().filter(|e| e.beta_rounded == 1).count();
        ok &= within >= 90 && rounded >= 95;
        notes.push(format!("{name}: within εβ {within}/100, rounded correct {rounded}/100"));
    }
    outcome(ok, format!("{} (need ≥ 90 and ≥ 95)", notes.join("; ")))
}

fn criterion_7() -> Outcome {
    let delta = 0.05;
    let mut worst_ratio = 0.0f64;
    let mut worst_dy = 0.0f64;
    let mut violations = 0usize;
    let mut systems = 0usize;
    let instances = [(c4(), 1usize), (octahedron(), 2), (er(8, 0.5, 7), 1), (c4().disjoint_union(&c4()).unwrap(), 1)];
    for (i, (g, k)) in instances.iter().enumerate() {
        let pipe = Pipeline::new(CliqueComplex::build(g, k + 1).unwrap(), *k, Convention::Restricted, PeSetting::Ideal).unwrap();
        let c = pipe.slot_count();
        for (j, (_, pair)) in ObservablePair::presets().into_iter().enumerate() {
            systems += 1;
            let a: Matrix2<f64> = assemble_system(&pair, c).unwrap();
            let bound = inv_norm(&a).unwrap();
            let x_true = Vector2::new(betti_exact(pipe.complex(), *k).unwrap() as f64, pipe.p_one().trace);
            let y1 = a * x_true;
            let x1 = solve_system(&a, &y1).unwrap();
            let mut rng = ChaCha8Rng::seed_from_u64(7_000 + (i * 10 + j) as u64);
            for _ in 0..10_000 {
                let dy = Vector2::new(rng.random_range(-delta..=delta), rng.random_range(-delta..=delta));
                let x2 = solve_system(&a, &(y1 + dy)).unwrap();
                let moved = (x2 - x1).norm();
                let allowed = bound * dy.norm();
                worst_ratio = worst_ratio.max(moved / allowed);
                worst_dy = worst_dy.max(dy.norm() / (SQRT_2 * delta));
                if moved > allowed * (1.0 + 1e-12) || dy.norm() > SQRT_2 * delta {
                    violations += 1;
                }
            }
        }
    }
    outcome(
        violations == 0,
        format!(
            "{systems} systems × 10⁴ perturbations; violations {violations}; max ‖ΔX‖/(‖A⁻¹‖‖ΔY‖) = {worst_ratio:.6}, \
             max ‖ΔY‖/(√2δ) = {worst_dy:.6}"
        ),
    )
}

fn criterion_8() -> Outcome {
    let pipe =
        Pipeline::new(CliqueComplex::build(&octahedron(), 3).unwrap(), 2, Convention::Restricted, PeSetting::Ideal).unwrap();
    let delta = 0.05;
    let (s, c) = (pipe.simplex_count(), pipe.slot_count());
    let est: Vec<_> = (0..100u64)
        .into_par_iter()
        .map(|t| {
            let cfg = EstimateConfig { mode: Mode::Sampled, seed: derive_seed(8_000, t), ..Default::default() };
            estimate_normalized_betti_with(&pipe, delta, &cfg).unwrap()
        })
        .collect();
    let within = est.iter().filter(|e| (e.value - 0.125).abs() <= delta).count();
    let planned = delta * (s as f64 / c as f64);
    let planner_exact = est.iter().all(|e| e.epsilon == planned && e.delta == delta);
    outcome(
        within >= 90 && planner_exact && (s, c) == (8, 20),
        format!(
            "within δ {within}/100 (need ≥ 90); planner ε = {} for |S_k| = {s}, C = {c} (expected {planned}, exact match: {planner_exact})",
            est[0].epsilon
        ),
    )
}

fn criterion_9(st: &SweepStats) -> Outcome {
    let pairs = ObservablePair::presets().len();
    outcome(
        st.euler_fail == 0 && st.invariance_fail == 0 && st.p1_fail == 0 && pairs >= 3,
        format!(
            "Euler failures {}/{} graphs; invariance across {pairs} pairs: failures {}, max spread {:.1e}; \
             restricted p₁ = C − |S_k| failures {}/{}",
            st.euler_fail, st.graphs, st.invariance_fail, st.invariance_max_dev, st.p1_fail, st.pairs_checked
        ),
    )
}

fn criterion_10() -> Outcome {
    // (n, k, κ, accuracy, β, |S_k|) and hand-computed
    // [this, prior, classical, depth_this, depth_prior].
    let cases: [(usize, usize, f64, Accuracy, f64, usize, [f64; 5]); 6] = [
        (4, 1, 2.0, Accuracy::Multiplicative(0.25), 1.0, 4, [288.0, 4.0 * (16.0 * 6f64.sqrt() + 16.0), 6.0, 12.0, 16.0 * 1.5f64.sqrt() + 8.0]),
        (6, 2, 3.0, Accuracy::Additive(0.05), 1.0, 8, [1500.0, (36.0 * 2.5f64.sqrt() + 18.0) * 20.0, 20.0, 30.0, 36.0 * 2.5f64.sqrt() + 18.0]),
        (10, 3, 4.0, Accuracy::Multiplicative(0.1), 2.0, 50, [73_500.0, 10.0 * (100.0 * 105f64.sqrt() + 200.0), 210.0, 70.0, 100.0 * 4.2f64.sqrt() + 40.0]),
        (8, 0, 1.0, Accuracy::Multiplicative(0.5), 1.0, 8, [128.0, 2.0 * 72.0 * 8f64.sqrt(), 8.0, 8.0, 72.0]),
        (5, 1, 2.5, Accuracy::Additive(0.1), 1.0, 10, [175.0, 375.0, 10.0, 17.5, 37.5]),
        (12, 2, 6.0, Accuracy::Multiplicative(0.25), 4.0, 100, [21_120.0, 4.0 * (144.0 * 55f64.sqrt() + 360.0), 220.0, 96.0, 144.0 * 2.2f64.sqrt() + 72.0]),
    ];
    let mut worst = 0.0f64;
    for (n, k, kappa, accuracy, beta, simplices, want) in cases {
        let r = resource_estimate(ResourceInputs { n, k, kappa, accuracy, beta, simplices }, 0.95).unwrap();
        let got = [r.this_method_cost, r.prior_cost, r.classical_cost, r.depth_this, r.depth_prior];
        for (g, w) in got.iter().zip(want) {
            worst = worst.max((g - w).abs() / w.abs());
        }
    }
    let zero_beta = resource_estimate(
        ResourceInputs { n: 4, k: 1, kappa: 1.0, accuracy: Accuracy::Multiplicative(0.25), beta: 0.0, simplices: 4 },
        0.95,
    )
    .is_err();
    outcome(
        worst <= 1e-12 && zero_beta,
        format!("{} parameter points × 5 formulas; max relative error {worst:.1e}; β = 0 rejected: {zero_beta}", cases.len()),
    )
}

fn criterion_11() -> Outcome {
    let mut instances: Vec<(String, VertexGraph)> = vec![
        ("C4".into(), c4()),
        ("C5".into(), VertexGraph::from_edges(5, &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 0)]).unwrap()),
        ("P4".into(), VertexGraph::from_edges(4, &[(0, 1), (1, 2), (2, 3)]).unwrap()),
        ("octahedron".into(), octahedron()),
    ];
    for seed in 0..24u64 {
        let n = 5 + (seed % 4) as usize;
        let p = [0.3, 0.5, 0.7][(seed % 3) as usize];
        instances.push((format!("ER({n},{p},{seed})"), er(n, p, 11_000 + seed)));
    }
    let mut rows = Vec::new();
    let mut consistent = true;
    for (name, g) in &instances {
        for k in [1usize, 2] {
            if k + 1 >= g.n() {
                continue;
            }
            let r = complement_report(&Instance::Graph(g.clone()), k, PeSetting::Ideal).unwrap();
            let co_beta = betti_exact(&CliqueComplex::build(&g.complement(), k + 1).unwrap(), k).unwrap();
            let c = slot_count(g.n(), k);
            consistent &= r.dual_kernel_gap <= 1e-9
                && (r.restricted_p1.trace - (c - r.simplices) as f64).abs() <= 1e-9
                && r.complement_betti == co_beta
                && r.simplices + r.complement_simplices + r.neither_slots == c;
            rows.push((name.clone(), r));
        }
    }
    let restricted_match = rows.iter().filter(|(_, r)| r.restricted_matches_complement).count();
    let dual_match = rows.iter().filter(|(_, r)| r.dual_matches_complement).count();
    let graphs = instances.len();

    println!("      {:<18} {:>2} {:>4} {:>12} {:>10} {:>10}", "instance", "k", "C", "restricted p1", "dual p1", "β_k(co)");
    for (name, r) in &rows {
        println!(
            "      {:<18} {:>2} {:>4} {:>12.6} {:>10.6} {:>10}",
            name, r.k, r.slots, r.restricted_p1.trace, r.dual_p1.trace, r.complement_betti
        );
    }

    let dir = tempfile::tempdir().unwrap();
    let csv = dir.path().join("complement.csv");
    let status = Command::new(env!("CARGO_BIN_EXE_qbetti"))
        .args(["complement", "--model", "erdos-renyi", "--n", "7", "--p", "0.5", "--graph-seed", "3", "--k", "1,2"])
        .args(["--out", dir.path().join("complement.json").to_str().unwrap(), "--csv", csv.to_str().unwrap()])
        .status()
        .unwrap();
    let cli_rows = std::fs::read_to_string(&csv).map(|t| t.lines().count().saturating_sub(1)).unwrap_or(0);
    let cli_ok = status.success() && cli_rows == 2;

    outcome(
        consistent && graphs >= 20 && cli_ok,
        format!(
            "{graphs} instances, {} rows, internally consistent: {consistent}; restricted p₁ = β_k(co) in {restricted_match}, \
             dual p₁ = β_k(co) in {dual_match} (informational); CLI table rows {cli_rows}",
            rows.len()
        ),
    )
}

fn main() {
    // libtest passes flags such as --nocapture or a filter; none apply here.
    let start = Instant::now();
    let mut results: Vec<(u32, &str, Outcome, f64)> = Vec::new();
    let mut run = |id: u32, name: &'static str, f: &dyn Fn() -> Outcome| {
        let t = Instant::now();
        let o = f();
        let secs = t.elapsed().as_secs_f64();
        println!("{} {id:>2} {name}: {} [{secs:.1}s]", if o.pass { "PASS" } else { "FAIL" }, o.detail);
        results.push((id, name, o, secs));
    };

    let t = Instant::now();
    let sweep = oracle_sweep();
    println!("     oracle sweep shared by criteria 1, 2 and 9 took {:.1}s", t.elapsed().as_secs_f64());

    run(1, "oracle equivalence", &|| criterion_1(&sweep));
    run(2, "zero-outcome identity", &|| criterion_2(&sweep));
    run(3, "named spaces", &criterion_3);
    run(4, "block-encoding verification", &criterion_4);
    run(5, "trace-estimation contract", &criterion_5);
    run(6, "sampled multiplicative guarantee", &criterion_6);
    run(7, "perturbation bound", &criterion_7);
    run(8, "normalized guarantee", &criterion_8);
    run(9, "invariance and structure", &|| criterion_9(&sweep));
    run(10, "resource formulas", &criterion_10);
    run(11, "complement experiment", &criterion_11);

    let failed: Vec<u32> = results.iter().filter(|r| !r.2.pass).map(|r| r.0).collect();
    println!(
        "acceptance: {}/{} passed in {:.1}s",
        results.len() - failed.len(),
        results.len(),
        start.elapsed().as_secs_f64()
    );
    if !failed.is_empty() {
        println!("failed criteria: {failed:?}");
        std::process::exit(1);
    }
}
