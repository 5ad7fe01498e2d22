use ncg_core::calculus::{OneForm, TwoForm};
use ncg_core::curvature::{curvature, curvature_terms, nabla_squared, ricci, scalar_curvature};
use ncg_core::koszul::{levi_civita, Metric};
use ncg_core::linalg::{c, epsilon};
use ncg_core::{build_triple, NcgError};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

#[test]
fn curvature_is_right_linear() {
    let t = build_triple(1);
    let mut rng = ChaCha8Rng::seed_from_u64(31);
    let g = Metric::random(&mut rng);
    let lc = levi_civita(&t, &g).unwrap();
    let rt = curvature(&t, &lc);
    for j in 0..3 {
        let a = t.random_element(&mut rng);
        let x = OneForm::basis(4, j).right_mul(&a);
        let direct = nabla_squared(&t, &lc, &x);
        let linear = rt.apply(&x);
        for p in 0..3 {
            assert!(
                direct[p].max_abs_diff(&linear[p]) < 1e-10,
                "j = {j}, p = {p}"
            );
        }
    }
}

#[test]
fn nabla_squared_on_basis_matches_curvature() {
    let t = build_triple(2);
    let lc = levi_civita(&t, &Metric::canonical()).unwrap();
    let rt = curvature(&t, &lc);
    for j in 0..3 {
        let direct = nabla_squared(&t, &lc, &OneForm::basis(9, j));
        let stored = rt.on_basis(j);
        for p in 0..3 {
            assert!(direct[p].max_abs_diff(&stored[p]) < 1e-12);
        }
    }
}

#[test]
fn canonical_intermediate_terms() {
    let t = build_triple(1);
    let lc = levi_civita(&t, &Metric::canonical()).unwrap();
    let terms = curvature_terms(&t, &lc);
    for p in 0..3 {
        for j in 0..3 {
            let ww =
                TwoForm::from_scalars(4, std::array::from_fn(|q| c(0.25 * epsilon(j, p, q), 0.0)));
            let dw =
                TwoForm::from_scalars(4, std::array::from_fn(|q| c(-0.5 * epsilon(j, p, q), 0.0)));
            assert!(terms.omega_wedge_omega[p][j].max_abs_diff(&ww) < 1e-12);
            assert!(terms.d_omega[p][j].max_abs_diff(&dw) < 1e-12);
        }
    }
}

#[test]
fn scaled_metric_scalar_curvature_scales_linearly() {
    let t = build_triple(1);
    for lambda in [1.0, 2.0, -3.0] {
        let g = Metric::canonical().scaled(c(lambda, 0.0)).unwrap();
        let lc = levi_civita(&t, &g).unwrap();
        let ric = ricci(&curvature(&t, &lc));
        let scal = scalar_curvature(&ric, &g, 1e-10).unwrap();
        assert!(
            (scal - c(1.5 * lambda, 0.0)).norm() < 1e-12,
            "λ = {lambda}: {scal}"
        );
    }
}

#[test]
fn random_metric_either_has_scal_or_reports_non_central_ricci() {
    let t = build_triple(1);
    let mut rng = ChaCha8Rng::seed_from_u64(32);
    for _ in 0..3 {
        let g = Metric::random(&mut rng);
        let lc = levi_civita(&t, &g).unwrap();
        let ric = ricci(&curvature(&t, &lc));
        match scalar_curvature(&ric, &g, 1e-10) {
            Ok(s) => assert!(s.re.is_finite() && s.im.is_finite()),
            Err(e) => assert!(matches!(e, NcgError::NonCentralRicci { .. })),
        }
    }
}
