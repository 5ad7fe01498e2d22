use ncg_core::calculus::OneForm;
use ncg_core::koszul::{
    antisymmetrized_pairing_gap, bimodule_defect, compat_defect_center, full_compat_defect, g_pair,
    half_epsilon, koszul_rank, levi_civita, max_one_form_grid, max_two_form, nabla0_connection,
    perturbed, solve_dual, torsion_defect, Connection, Metric,
};
use ncg_core::linalg::{c, C64, ONE, ZERO};
use ncg_core::{build_triple, NcgError, SpectralTriple};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn random_one_form(t: &SpectralTriple, rng: &mut ChaCha8Rng) -> OneForm {
    OneForm::new(std::array::from_fn(|_| t.random_element(rng)))
}

fn worst_defects(t: &SpectralTriple, g: &Metric, lc: &Connection, rng: &mut ChaCha8Rng) -> f64 {
    let mut worst = max_two_form(&torsion_defect(t, lc));
    worst = worst.max(max_one_form_grid(&compat_defect_center(t, g, lc)));
    for _ in 0..5 {
        let x = random_one_form(t, rng);
        let y = random_one_form(t, rng);
        worst = worst.max(full_compat_defect(t, g, lc, &x, &y).max_abs());
        let a = t.random_element(rng);
        worst = worst.max(bimodule_defect(t, lc, &a, &x).max_abs());
    }
    worst
}

fn gamma_gap(lhs: &Connection, rhs: &Connection) -> f64 {
    let (a, _) = lhs.christoffel();
    let (b, _) = rhs.christoffel();
    a.iter()
        .flatten()
        .flatten()
        .zip(b.iter().flatten().flatten())
        .map(|(x, y)| (x - y).norm())
        .fold(0.0, f64::max)
}

#[test]
fn random_metrics_give_defect_free_connections() {
    let t = build_triple(1);
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    for _ in 0..5 {
        let g = Metric::random(&mut rng);
        assert_eq!(koszul_rank(&g), 9);
        let lc = levi_civita(&t, &g).unwrap();
        let (_, dev) = lc.christoffel();
        assert!(dev < 1e-12);
        assert!(worst_defects(&t, &g, &lc, &mut rng) < 1e-10);
    }
}

#[test]
fn canonical_at_cutoff_two() {
    let t = build_triple(2);
    let lc = levi_civita(&t, &Metric::canonical()).unwrap();
    let expected = Connection::from_christoffel(9, &half_epsilon());
    assert!(gamma_gap(&lc, &expected) < 1e-12);
}

#[test]
fn scaled_identity_keeps_christoffel_symbols() {
    let t = build_triple(1);
    let base = levi_civita(&t, &Metric::canonical()).unwrap();
    for lambda in [c(2.0, 0.0), c(-0.5, 0.0), c(1.0, 3.0)] {
        let g = Metric::canonical().scaled(lambda).unwrap();
        assert!(gamma_gap(&base, &levi_civita(&t, &g).unwrap()) < 1e-12);
    }
}

#[test]
fn scaling_invariance_for_random_metric() {
    let t = build_triple(1);
    let g = Metric::random(&mut ChaCha8Rng::seed_from_u64(8));
    let a = levi_civita(&t, &g).unwrap();
    let b = levi_civita(&t, &g.scaled(c(7.0, 0.0)).unwrap()).unwrap();
    assert!(gamma_gap(&a, &b) < 1e-10);
}

#[test]
fn diagonal_metric_passes_defect_oracles() {
    let t = build_triple(1);
    let g = Metric::diagonal([ONE, ONE, c(2.0, 0.0)]).unwrap();
    let lc = levi_civita(&t, &g).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    assert!(worst_defects(&t, &g, &lc, &mut rng) < 1e-10);
}

#[test]
fn antisymmetric_parts_agree_with_nabla0() {
    let t = build_triple(1);
    let mut rng = ChaCha8Rng::seed_from_u64(13);
    for _ in 0..3 {
        let g = Metric::random(&mut rng);
        let lc = levi_civita(&t, &g).unwrap();
        assert!(antisymmetrized_pairing_gap(&g, &lc, &nabla0_connection(&t)) < 1e-10);
    }
}

#[test]
fn metric_pairing_is_nondegenerate() {
    let mut rng = ChaCha8Rng::seed_from_u64(14);
    let g = Metric::random(&mut rng);
    // g(e_θ ⊗ ξ) = 0 for all θ forces ξ = 0.
    let xi = solve_dual(&g, [ZERO; 3]).unwrap();
    assert!(xi.iter().all(|z| z.norm() < 1e-15));
    let target: [C64; 3] = [c(1.0, 0.0), c(0.0, 2.0), c(-1.0, 1.0)];
    let xi = solve_dual(&g, target).unwrap();
    let form = OneForm::from_scalars(1, xi);
    for (theta, want) in target.iter().enumerate() {
        let got = g_pair(&g, &OneForm::basis(1, theta), &form)[(0, 0)];
        assert!((got - want).norm() < 1e-12);
    }
}

#[test]
fn algebra_valued_perturbation_breaks_bimodule_property() {
    let t = build_triple(1);
    let mut rng = ChaCha8Rng::seed_from_u64(15);
    let y = t.random_element(&mut rng);
    let bent = perturbed(&nabla0_connection(&t), 0, 0, 0, &y);
    let a = t.random_element(&mut rng);
    assert!(bimodule_defect(&t, &bent, &a, &OneForm::basis(4, 0)).max_abs() > 1e-3);
}

#[test]
fn degenerate_metrics_are_rejected() {
    let mut g = *Metric::canonical().entries();
    g[1][1] = c(1e-14, 0.0);
    assert!(matches!(
        Metric::new(g, 1e-10),
        Err(NcgError::SingularSystem { .. })
    ));
    let rank_one = [[ONE; 3]; 3];
    assert_eq!(
        Metric::new(rank_one, 1e-10).unwrap_err(),
        NcgError::SingularSystem { rank: 1, dim: 3 }
    );
}

#[test]
fn christoffel_symbols_are_scalar_even_for_large_cutoff() {
    let t = build_triple(3);
    let g = Metric::random(&mut ChaCha8Rng::seed_from_u64(16));
    let lc = levi_civita(&t, &g).unwrap();
    let (_, dev) = lc.christoffel();
    assert!(dev < 1e-12);
    assert!(max_two_form(&torsion_defect(&t, &lc)) < 1e-10);
}
