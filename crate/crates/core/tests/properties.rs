use nalgebra::{Matrix2, Vector2};
use proptest::prelude::*;
use qbetti::complex::{binomial, enumerate_slots, slot_count, CliqueComplex, Instance, VertexGraph};
use qbetti::extraction::{
    assemble_system, estimate_betti, inv_norm, perturbation_bound, solve_system, EstimateConfig, ObservablePair,
};
use qbetti::homology::{betti_exact, boundary_matrix, euler_check, Convention, HodgeOperator, DEFAULT_ZERO_TOL};
use qbetti::qpipeline::{
    p_one, p_zero, reduced_density, zero_outcome_probability, zero_phase_weights, PEConfig, C64,
};

fn graph_strategy(max_n: usize) -> impl Strategy<Value = VertexGraph> {
    (3..=max_n).prop_flat_map(|n| {
        let pairs = n * (n - 1) / 2;
        (Just(n), 0u64..(1u64 << pairs))
    })
    .prop_map(|(n, mask)| VertexGraph::from_pair_mask(n, mask).unwrap())
}

fn full_complex(g: &VertexGraph) -> CliqueComplex {
    CliqueComplex::build(g, g.n() - 1).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn membership_matches_brute_force(g in graph_strategy(7)) {
        let cx = full_complex(&g);
        for k in 0..g.n() {
            let slots = enumerate_slots(g.n(), k).unwrap();
            prop_assert_eq!(slots.len() as u64, binomial(g.n(), k + 1));
            let mut members = 0;
            for s in slots {
                let verts: Vec<usize> = s.vertices().collect();
                let clique = verts.iter().enumerate().all(|(i, &u)| verts[i + 1..].iter().all(|&v| g.has_edge(u, v)));
                prop_assert_eq!(cx.contains(s).unwrap(), clique);
                members += clique as usize;
            }
            prop_assert_eq!(cx.count(k).unwrap(), members);
        }
    }

    #[test]
    fn boundary_of_boundary_vanishes(g in graph_strategy(7)) {
        let cx = full_complex(&g);
        for k in 1..g.n() - 1 {
            let lower = boundary_matrix(&cx, k).unwrap();
            let upper = boundary_matrix(&cx, k + 1).unwrap();
            let product = lower.compose(&upper).unwrap();
            prop_assert!(product.iter().all(|row| row.iter().all(|&x| x == 0)));
        }
    }

    #[test]
    fn laplacian_is_psd_and_kernel_is_betti(g in graph_strategy(7), convention in prop_oneof![Just(Convention::Restricted), Just(Convention::Dual)]) {
        let cx = full_complex(&g);
        for k in 0..(g.n() - 1).min(3) {
            let op = HodgeOperator::new(&cx, k, convention).unwrap();
            let m = op.matrix();
            prop_assert!((&m - m.transpose()).amax() < 1e-12);
            let eig = m.symmetric_eigenvalues();
            prop_assert!(eig.iter().all(|&l| l > -1e-9));
            let summary = op.spectral_summary(DEFAULT_ZERO_TOL);
            prop_assert_eq!(summary.kernel_dim, betti_exact(&cx, k).unwrap());
        }
    }

    #[test]
    fn euler_identity(g in graph_strategy(8)) {
        let report = euler_check(&full_complex(&g)).unwrap();
        prop_assert!(report.holds);
        prop_assert!(!report.skeleton);
    }

    #[test]
    fn ideal_p_zero_identity(g in graph_strategy(7), k in 0usize..3) {
        let cx = full_complex(&g);
        prop_assume!(k + 1 < g.n() && cx.count(k).unwrap() > 0);
        let op = HodgeOperator::new(&cx, k, Convention::Restricted).unwrap();
        let cfg = PEConfig::ideal(&op);
        let p0 = p_zero(&cx, k, &op, &cfg).unwrap();
        let beta = betti_exact(&cx, k).unwrap() as f64;
        prop_assert!((p0 * cx.count(k).unwrap() as f64 - beta).abs() < 1e-9);
        let p1 = p_one(&cx, k, &op, &cfg).unwrap();
        prop_assert_eq!(p1.trace, (slot_count(g.n(), k) - cx.count(k).unwrap()) as f64);
    }

    #[test]
    fn zero_phase_weights_are_probabilities(g in graph_strategy(6), t in 1u32..8) {
        let cx = full_complex(&g);
        let op = HodgeOperator::new(&cx, 1, Convention::Dual).unwrap();
        for w in zero_phase_weights(&op, &PEConfig::bits(&op, t)).unwrap() {
            prop_assert!((-1e-12..=1.0).contains(&w));
        }
    }

    #[test]
    fn density_is_a_state(g in graph_strategy(5), t in 1u32..4) {
        let cx = full_complex(&g);
        let op = HodgeOperator::new(&cx, 1, Convention::Restricted).unwrap();
        let rho = reduced_density(&cx, 1, &op, &PEConfig::bits(&op, t)).unwrap().to_matrix();
        let tr: C64 = rho.trace();
        prop_assert!((tr.re - 1.0).abs() < 1e-10 && tr.im.abs() < 1e-12);
        prop_assert!((&rho - rho.adjoint()).iter().all(|z| z.norm() < 1e-12));
        prop_assert!(rho.symmetric_eigenvalues().iter().all(|&l| l > -1e-10));
    }

    #[test]
    fn zero_outcome_probability_monotone(phi in 1e-6f64..std::f64::consts::PI, t in 1u32..14) {
        prop_assert!(zero_outcome_probability(t + 1, phi) <= zero_outcome_probability(t, phi) + 1e-15);
    }

    #[test]
    fn exact_pipeline_recovers_oracle(g in graph_strategy(8), k in 0usize..3, pair_ix in 0usize..4) {
        prop_assume!(k + 1 < g.n());
        let inst = Instance::Graph(g.clone());
        let cx = inst.complex_for(k).unwrap();
        prop_assume!(cx.count(k).unwrap() > 0);
        let pair = ObservablePair::presets()[pair_ix].1.clone();
        let est = estimate_betti(&inst, k, 0.1, &EstimateConfig { pair, ..Default::default() }).unwrap();
        let beta = betti_exact(&cx, k).unwrap();
        prop_assert!((est.beta_estimate - beta as f64).abs() < 1e-8);
        prop_assert!((est.p1_estimate - (slot_count(g.n(), k) - cx.count(k).unwrap()) as f64).abs() < 1e-8);
    }

    #[test]
    fn rhs_perturbation_bound(
        entries in proptest::array::uniform4(-1.0f64..1.0),
        y in proptest::array::uniform2(-1.0f64..1.0),
        dy in proptest::array::uniform2(-1.0f64..1.0),
        delta in 1e-4f64..0.5,
    ) {
        let a = Matrix2::new(entries[0], entries[1], entries[2], entries[3]);
        prop_assume!(a.determinant().abs() > 1e-3);
        let y1 = Vector2::new(y[0], y[1]);
        let shift = Vector2::new(dy[0], dy[1]) * delta;
        prop_assert!(shift.norm() <= std::f64::consts::SQRT_2 * delta + 1e-15);
        let x1 = solve_system(&a, &y1).unwrap();
        let x2 = solve_system(&a, &(y1 + shift)).unwrap();
        let bound = perturbation_bound(&a, shift.norm()).unwrap();
        prop_assert!((x2 - x1).norm() <= bound * (1.0 + 1e-9) + 1e-12);
    }

    #[test]
    fn default_pair_inverse_norm_is_slot_count(n in 3usize..12, k in 0usize..3) {
        prop_assume!(k < n);
        let c = slot_count(n, k);
        let a = assemble_system(&ObservablePair::default(), c).unwrap();
        prop_assert!((inv_norm(&a).unwrap() - c as f64).abs() < 1e-9 * c as f64);
    }
}
