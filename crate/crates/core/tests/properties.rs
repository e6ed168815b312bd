//! Randomized invariants across the core modules.

use num_complex::Complex64;
use pathinfo_core::coherence::{
    l1_coherence, normalized_coherence, rel_ent_coherence, shannon_entropy, von_neumann_entropy,
};
use pathinfo_core::discrimination::{
    helstrom_matrix, helstrom_povm_two, positive_part_chain_slack, povm_success_probability,
    pretty_good_measurement, pure_pair_trace_norm, success_upper_bound, Ensemble,
};
use pathinfo_core::duality::{entropic_duality_report, l1_duality_report, schwarz_chain_check};
use pathinfo_core::information::{
    accessible_info_lower_bound, holevo_quantity, joint_distribution, mutual_information,
};
use pathinfo_core::linalg::{eig_hermitian, positive_part_trace, trace_norm, ComplexMatrix};
use pathinfo_core::model::{
    build_config, detector_density, particle_density, validate_povm, InterferometerConfig,
};
use pathinfo_core::sampling::{
    random_povm, sample_config, sample_haar_unitary, sample_mixed_ensemble, stream_rng, PriorMode,
    StreamRng,
};
use proptest::prelude::*;
use rand::Rng;
use rand_distr::{Distribution, StandardNormal};

fn random_hermitian(dim: usize, rng: &mut StreamRng) -> ComplexMatrix {
    let g = ComplexMatrix::from_fn(dim, |_, _| {
        let re: f64 = StandardNormal.sample(rng);
        let im: f64 = StandardNormal.sample(rng);
        Complex64::new(re, im)
    });
    (&g + &g.adjoint()).scale(0.5)
}

fn config(seed: u64, n: usize, d: usize) -> InterferometerConfig {
    sample_config(
        n,
        d,
        PriorMode::Dirichlet(1.0),
        &mut stream_rng(seed, n as u64, d as u64),
    )
    .unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn eigendecomposition_reconstructs(seed in any::<u64>(), dim in 1usize..10) {
        let h = random_hermitian(dim, &mut stream_rng(seed, 0, 0));
        let eig = eig_hermitian(&h, 1e-9).unwrap();
        prop_assert!(eig.reconstruct().max_abs_diff(&h) <= 1e-10);
        let v = &eig.eigenvectors;
        prop_assert!((&v.adjoint() * v).max_abs_diff(&ComplexMatrix::identity(dim)) <= 1e-10);
        prop_assert!(eig.eigenvalues.windows(2).all(|w| w[0] <= w[1]));
    }

    #[test]
    fn spectrum_is_unitarily_invariant(seed in any::<u64>(), dim in 1usize..8) {
        let mut rng = stream_rng(seed, 1, 0);
        let h = random_hermitian(dim, &mut rng);
        let u = sample_haar_unitary(dim, &mut rng);
        let conjugated = &(&u * &h) * &u.adjoint();
        let a = eig_hermitian(&h, 1e-9).unwrap().eigenvalues;
        let b = eig_hermitian(&conjugated.hermitian_part(), 1e-9).unwrap().eigenvalues;
        for (x, y) in a.iter().zip(&b) {
            prop_assert!((x - y).abs() <= 1e-9);
        }
    }

    #[test]
    fn trace_norm_is_a_norm(seed in any::<u64>(), dim in 1usize..8, c in -3.0f64..3.0) {
        let mut rng = stream_rng(seed, 2, 0);
        let a = random_hermitian(dim, &mut rng);
        let b = random_hermitian(dim, &mut rng);
        let na = trace_norm(&a).unwrap();
        prop_assert!((trace_norm(&a.scale(c)).unwrap() - c.abs() * na).abs() <= 1e-9);
        prop_assert!(trace_norm(&(&a + &b)).unwrap() <= na + trace_norm(&b).unwrap() + 1e-9);
        prop_assert!(na >= a.trace().re.abs() - 1e-12);
    }

    #[test]
    fn positive_part_identities(seed in any::<u64>(), dim in 1usize..8) {
        let h = random_hermitian(dim, &mut stream_rng(seed, 3, 0));
        let tr = h.trace().re;
        let plus = positive_part_trace(&h).unwrap();
        prop_assert!((plus - 0.5 * (tr + trace_norm(&h).unwrap())).abs() <= 1e-10);
        prop_assert!((plus - positive_part_trace(&-&h).unwrap() - tr).abs() <= 1e-10);
    }

    #[test]
    fn purification_symmetry_and_density_invariants(seed in any::<u64>(), n in 2usize..7, d in 1usize..9) {
        let cfg = config(seed, n, d);
        let rho = particle_density(&cfg);
        let det = detector_density(&cfg);
        let s_rho = von_neumann_entropy(&rho).unwrap();
        let s_det = von_neumann_entropy(&det).unwrap();
        prop_assert!((s_rho - s_det).abs() <= 1e-8);
        // diagonal reproduces the priors bit for bit
        prop_assert_eq!(rho.diagonal(), cfg.priors().probs().to_vec());
        let min = rho.spectrum().unwrap()[0];
        prop_assert!(min >= -1e-9);
        prop_assert!((rho.matrix().trace().re - 1.0).abs() <= 1e-9);
        prop_assert!((det.matrix().trace().re - 1.0).abs() <= 1e-9);
    }

    #[test]
    fn coherence_bounds(seed in any::<u64>(), n in 2usize..7, d in 1usize..9) {
        let cfg = config(seed, n, d);
        let rho = particle_density(&cfg);
        let x = normalized_coherence(&rho);
        prop_assert!(x >= 0.0 && x <= (n as f64 - 1.0) / n as f64 + 1e-12);
        let c_rel = rel_ent_coherence(&rho).unwrap();
        prop_assert!(c_rel >= -1e-9 && c_rel <= (n as f64).log2() + 1e-9);
        // relative-entropy coherence of ρ matches H(p) − S(ρ)
        let direct = shannon_entropy(cfg.priors().probs()) - von_neumann_entropy(&rho).unwrap();
        prop_assert!((c_rel - direct).abs() <= 1e-12);
    }

    #[test]
    fn phases_leave_scalars_unchanged(seed in any::<u64>(), n in 2usize..6, d in 1usize..6) {
        let mut rng = stream_rng(seed, 4, 0);
        let cfg = config(seed, n, d);
        let rotated: Vec<Vec<Complex64>> = cfg
            .detectors()
            .states()
            .iter()
            .map(|s| {
                let phase = Complex64::from_polar(1.0, rng.random_range(0.0..std::f64::consts::TAU));
                s.iter().map(|z| z * phase).collect()
            })
            .collect();
        let other = build_config(cfg.priors().probs(), &rotated).unwrap();
        let a = l1_duality_report(&cfg).unwrap();
        let b = l1_duality_report(&other).unwrap();
        prop_assert!((a.x - b.x).abs() <= 1e-10);
        prop_assert!((a.ps_bound - b.ps_bound).abs() <= 1e-10);
        let ra = rel_ent_coherence(&particle_density(&cfg)).unwrap();
        let rb = rel_ent_coherence(&particle_density(&other)).unwrap();
        prop_assert!((ra - rb).abs() <= 1e-10);
        let ha = holevo_quantity(&cfg).unwrap();
        let hb = holevo_quantity(&other).unwrap();
        prop_assert!((ha - hb).abs() <= 1e-10);
    }

    #[test]
    fn coherence_invariant_under_diagonal_unitaries(seed in any::<u64>(), n in 2usize..6, d in 1usize..6) {
        let mut rng = stream_rng(seed, 5, 0);
        let rho = particle_density(&config(seed, n, d));
        let phases: Vec<Complex64> =
            (0..n).map(|_| Complex64::from_polar(1.0, rng.random_range(0.0..std::f64::consts::TAU))).collect();
        let m = rho.matrix();
        let conj = ComplexMatrix::from_fn(n, |i, j| phases[i] * m[(i, j)] * phases[j].conj());
        let conj = pathinfo_core::model::DensityMatrix::new(conj).unwrap();
        prop_assert!((l1_coherence(&rho) - l1_coherence(&conj)).abs() <= 1e-10);
        prop_assert!((rel_ent_coherence(&rho).unwrap() - rel_ent_coherence(&conj).unwrap()).abs() <= 1e-10);
    }

    #[test]
    fn closed_form_matches_spectral(seed in any::<u64>(), d in 1usize..8) {
        let cfg = config(seed, 2, d);
        let ens = Ensemble::from_config(&cfg);
        let spectral = trace_norm(&helstrom_matrix(&ens, 0, 1).unwrap()).unwrap();
        prop_assert!((pure_pair_trace_norm(&cfg, 0, 1).unwrap() - spectral).abs() <= 1e-10);
        prop_assert!((helstrom_matrix(&ens, 0, 1).unwrap().trace().re
            - (cfg.priors().probs()[0] - cfg.priors().probs()[1])).abs() <= 1e-12);
    }

    #[test]
    fn two_state_bound_is_attained(seed in any::<u64>(), d in 1usize..8) {
        let cfg = config(seed, 2, d);
        let ens = Ensemble::from_config(&cfg);
        let bound = success_upper_bound(&ens).unwrap();
        let achieved = povm_success_probability(&helstrom_povm_two(&ens).unwrap(), &ens).unwrap();
        prop_assert!((bound - achieved).abs() <= 1e-10);
    }

    #[test]
    fn bound_dominates_every_measurement(seed in any::<u64>(), n in 2usize..7, d in 1usize..9) {
        let mut rng = stream_rng(seed, 6, 0);
        let ens = sample_mixed_ensemble(n, d, PriorMode::Dirichlet(1.0), &mut rng).unwrap();
        let bound = success_upper_bound(&ens).unwrap();
        prop_assert!(bound >= 1.0 / n as f64 - 1e-12 && bound <= 1.0 + 1e-12);
        let pgm = pretty_good_measurement(&ens).unwrap();
        prop_assert!(validate_povm(&pgm, d).is_valid());
        let mut povms = vec![pgm];
        for _ in 0..3 {
            povms.push(random_povm(n, d, &mut rng).unwrap());
        }
        for povm in &povms {
            let ps = povm_success_probability(povm, &ens).unwrap();
            prop_assert!((0.0..=1.0 + 1e-12).contains(&ps));
            prop_assert!(ps <= bound + 1e-9);
            prop_assert!(positive_part_chain_slack(povm, &ens).unwrap() >= -1e-9);
        }
    }

    #[test]
    fn information_is_capped_by_holevo(seed in any::<u64>(), n in 2usize..6, d in 1usize..7) {
        let mut rng = stream_rng(seed, 7, 0);
        let cfg = config(seed, n, d);
        let chi = holevo_quantity(&cfg).unwrap();
        let ens = Ensemble::from_config(&cfg);
        let povms = [pretty_good_measurement(&ens).unwrap(), random_povm(n + 1, d, &mut rng).unwrap()];
        for povm in &povms {
            let joint = joint_distribution(povm, &cfg).unwrap();
            let mi = mutual_information(&joint);
            prop_assert!(mi >= -1e-9 && mi <= chi + 1e-9);
            prop_assert!(mi <= shannon_entropy(cfg.priors().probs()) + 1e-9);
            for (m, p) in joint.label_marginal().iter().zip(cfg.priors().probs()) {
                prop_assert!((m - p).abs() <= 1e-9);
            }
            // coarse-graining outcomes cannot create information
            let merged = povm.merge_outcomes(0, 1).unwrap();
            let mi_merged = mutual_information(&joint_distribution(&merged, &cfg).unwrap());
            prop_assert!(mi_merged <= mi + 1e-9);
        }
    }

    #[test]
    fn both_relations_hold(seed in any::<u64>(), n in 2usize..7, d in 1usize..13) {
        let mut rng = stream_rng(seed, 8, 0);
        let cfg = config(seed, n, d);
        let l1 = l1_duality_report(&cfg).unwrap();
        prop_assert!(l1.gap_l1 >= -1e-9);
        let chain = schwarz_chain_check(&cfg).unwrap();
        prop_assert!(chain.min_slack() >= -1e-9);
        let povm = random_povm(n, d, &mut rng).unwrap();
        prop_assert!(entropic_duality_report(&cfg, &povm).unwrap().gap_entropic >= -1e-9);
    }

    #[test]
    fn search_is_monotone_in_restarts(seed in any::<u64>(), n in 2usize..5, d in 2usize..5) {
        let cfg = config(seed, n, d);
        let mut last = f64::NEG_INFINITY;
        for restarts in 0..4 {
            let bits = accessible_info_lower_bound(&cfg, restarts, seed).unwrap();
            prop_assert!(bits >= last);
            last = bits;
        }
        prop_assert!(last <= holevo_quantity(&cfg).unwrap() + 1e-9);
    }
}

#[test]
fn two_path_uniform_configs_saturate_the_l1_relation() {
    // For two pure states the bound is the Helstrom value and the relation is an
    // equality, whatever the priors.
    for seed in 0..200 {
        let cfg = config(seed, 2, 3);
        assert!(l1_duality_report(&cfg).unwrap().gap_l1.abs() <= 1e-12);
    }
}

/// Brute-force search over projective measurements `{|u⟩⟨u|, |u⊥⟩⟨u⊥|}` with
/// `|u⟩ = (cos θ, e^{iφ} sin θ)` on a fine grid.
fn projective_grid_oracle(cfg: &InterferometerConfig) -> f64 {
    let steps = 400;
    let mut best = 0.0_f64;
    for a in 0..=steps {
        let theta = std::f64::consts::FRAC_PI_2 * a as f64 / steps as f64;
        for b in 0..8 {
            let phi = std::f64::consts::TAU * b as f64 / 8.0;
            let u = [
                Complex64::new(theta.cos(), 0.0),
                Complex64::from_polar(theta.sin(), phi),
            ];
            let first = ComplexMatrix::outer(&u);
            let second = &ComplexMatrix::identity(2) - &first;
            let povm = pathinfo_core::discrimination::Povm::new(vec![first, second]).unwrap();
            best = best.max(mutual_information(&joint_distribution(&povm, cfg).unwrap()));
        }
    }
    best
}

#[test]
fn accessible_info_matches_projective_oracle() {
    let cfg = build_config(
        &[0.5, 0.5],
        &[
            vec![Complex64::new(1.0, 0.0), Complex64::new(0.0, 0.0)],
            vec![Complex64::new(0.6, 0.0), Complex64::new(0.8, 0.0)],
        ],
    )
    .unwrap();
    let oracle = projective_grid_oracle(&cfg);
    assert!(
        (oracle - 0.531_004_406_410_719_5).abs() < 1e-6,
        "oracle {oracle}"
    );
    let found = accessible_info_lower_bound(&cfg, 8, 42).unwrap();
    assert!(
        (found - 0.531_004_406_410_719_5).abs() < 1e-9,
        "found {found}"
    );
    assert!(found >= oracle - 1e-9);
}

#[test]
fn povm_validation_catches_random_corruption() {
    let mut rng = stream_rng(77, 0, 0);
    let povm = random_povm(3, 3, &mut rng).unwrap();
    let mut elements = povm.elements().to_vec();
    elements[1] = elements[1].scale(1.01);
    let corrupted = pathinfo_core::discrimination::Povm::from_elements_unchecked(elements);
    assert!(!validate_povm(&corrupted, 3).is_valid());
}
