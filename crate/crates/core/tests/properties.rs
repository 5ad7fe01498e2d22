use ncg_core::calculus::{d0, d1, wedge1, wedge_tensor, OneForm, TensorSquare};
use ncg_core::koszul::{g_pair, p_sym, Metric};
use ncg_core::linalg::{kron, span_dimension, ComplexMatrix, DEFAULT_TOL};
use ncg_core::{build_triple, SpectralTriple};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn seeded(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn one_form(t: &SpectralTriple, rng: &mut ChaCha8Rng) -> OneForm {
    OneForm::new(std::array::from_fn(|_| t.random_element(rng)))
}

fn int_matrix(rows: usize, cols: usize) -> impl Strategy<Value = ComplexMatrix> {
    prop::collection::vec(-5i32..=5, rows * cols).prop_map(move |v| {
        ComplexMatrix::from_real(
            rows,
            cols,
            &v.iter().map(|&x| f64::from(x)).collect::<Vec<_>>(),
        )
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn kron_is_associative_on_integers(a in int_matrix(2, 2), b in int_matrix(2, 1), c in int_matrix(1, 3)) {
        prop_assert_eq!(kron(&kron(&a, &b), &c), kron(&a, &kron(&b, &c)));
    }

    #[test]
    fn single_matrix_span_is_zero_or_one(seed in any::<u64>(), zero in any::<bool>()) {
        let m = if zero {
            ComplexMatrix::zeros(3, 2)
        } else {
            ComplexMatrix::random(3, 2, &mut seeded(seed))
        };
        let dim = span_dimension(&[m], DEFAULT_TOL);
        prop_assert_eq!(dim, usize::from(!zero));
    }

    #[test]
    fn d_squared_is_zero(seed in any::<u64>(), n in 1usize..=3) {
        let t = build_triple(n);
        let a = t.random_element(&mut seeded(seed));
        prop_assert!(d1(&t, &d0(&t, &a)).max_abs() < 1e-10);
    }

    #[test]
    fn graded_leibniz_rule(seed in any::<u64>()) {
        let t = build_triple(2);
        let mut rng = seeded(seed);
        let x = one_form(&t, &mut rng);
        let a = t.random_element(&mut rng);
        let lhs = d1(&t, &x.right_mul(&a));
        let rhs = &d1(&t, &x).right_mul(&a) - &wedge1(&x, &d0(&t, &a));
        prop_assert!(lhs.max_abs_diff(&rhs) < 1e-10);
    }

    #[test]
    fn delta_commutator_relation(seed in any::<u64>(), n in 0usize..=3) {
        let t = build_triple(n);
        let a = t.random_element(&mut seeded(seed));
        for (k, l, m) in [(0, 1, 2), (1, 2, 0), (2, 0, 1)] {
            let lhs = &t.delta(k, &t.delta(l, &a)) - &t.delta(l, &t.delta(k, &a));
            prop_assert!(lhs.max_abs_diff(&t.delta(m, &a)) < 1e-10);
        }
    }

    #[test]
    fn sigma_involution_and_p_sym_idempotent(seed in any::<u64>()) {
        let mut rng = seeded(seed);
        let t = TensorSquare::from_fn(|_, _| ComplexMatrix::random(3, 3, &mut rng));
        prop_assert_eq!(t.flip().flip(), t.clone());
        let p = p_sym(&t);
        prop_assert!(p_sym(&p).max_abs_diff(&p) < 1e-12);
        prop_assert!(wedge_tensor(&p).max_abs() < 1e-12);
    }

    #[test]
    fn wedge_tensor_injective_on_antisymmetric(seed in any::<u64>()) {
        let mut rng = seeded(seed);
        let t = TensorSquare::from_fn(|_, _| ComplexMatrix::random(2, 2, &mut rng));
        let anti = &t - &t.flip();
        let back = ncg_core::calculus::antisymmetric_lift(&wedge_tensor(&anti));
        prop_assert!(back.max_abs_diff(&anti) < 1e-12);
    }

    #[test]
    fn metric_is_symmetric_on_basis(seed in any::<u64>()) {
        let g = Metric::random(&mut seeded(seed));
        for j in 0..3 {
            for k in 0..3 {
                let lhs = g_pair(&g, &OneForm::basis(1, j), &OneForm::basis(1, k));
                let rhs = g_pair(&g, &OneForm::basis(1, k), &OneForm::basis(1, j));
                prop_assert_eq!(lhs, rhs);
            }
        }
    }
}
