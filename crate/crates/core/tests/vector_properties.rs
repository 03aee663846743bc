use l1l2_core::tightness::tightness_constant_by_deviation;
use l1l2_core::{
    analyze, nearest_constant_modulus, satisfies_sqrt_s_bound, tightness_constant, Field, Vector,
};
use num_complex::Complex64;
use proptest::prelude::*;

fn real_vector() -> impl Strategy<Value = Vector> {
    prop::collection::vec(-100.0f64..100.0, 1..64)
        .prop_filter("nonzero", |v| v.iter().any(|&a| a != 0.0))
        .prop_map(|v| Vector::real(v).unwrap())
}

fn complex_vector() -> impl Strategy<Value = Vector> {
    prop::collection::vec((-100.0f64..100.0, -100.0f64..100.0), 1..64)
        .prop_filter("nonzero", |v| v.iter().any(|&(a, b)| a != 0.0 || b != 0.0))
        .prop_map(|v| {
            Vector::complex(
                v.into_iter()
                    .map(|(a, b)| Complex64::new(a, b))
                    .collect::<Vec<_>>(),
            )
            .unwrap()
        })
}

fn any_vector() -> impl Strategy<Value = Vector> {
    prop_oneof![real_vector(), complex_vector()]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(512))]

    #[test]
    fn basic_norm_inequalities(x in any_vector()) {
        let (l1, l2) = (x.norm1(), x.norm2());
        let n = x.len() as f64;
        prop_assert!(l2 <= l1 * (1.0 + 1e-12));
        prop_assert!(l1 <= n.sqrt() * l2 * (1.0 + 1e-12));
    }

    #[test]
    fn cauchy_schwarz(pair in (1usize..40).prop_flat_map(|n| (
        prop::collection::vec(-10.0f64..10.0, n),
        prop::collection::vec(-10.0f64..10.0, n),
    ))) {
        let x = Vector::real(pair.0).unwrap();
        let y = Vector::real(pair.1).unwrap();
        let ip = x.inner(&y).unwrap().norm();
        prop_assert!(ip <= x.norm2() * y.norm2() * (1.0 + 1e-12) + 1e-300);
        let xx = x.inner(&x).unwrap();
        prop_assert!((xx.re - x.norm2_sq()).abs() <= 1e-12 * x.norm2_sq().max(1.0));
    }

    #[test]
    fn the_three_characterizations_agree(x in any_vector()) {
        let by_norms = tightness_constant(&x).unwrap();
        let by_deviation = tightness_constant_by_deviation(&x).unwrap();
        let (_, distance) = nearest_constant_modulus(&x).unwrap();
        prop_assert!((by_norms - by_deviation).abs() <= 1e-10);
        prop_assert!((distance * distance - by_norms).abs() <= 1e-10);
    }

    #[test]
    fn report_invariants(x in any_vector()) {
        let r = analyze(&x).unwrap();
        let n = r.n as f64;
        prop_assert!((r.l1 - r.ratio() * n.sqrt() * r.l2).abs() <= 1e-10 * r.l1.max(1.0));
        prop_assert!(r.c_x >= 0.0 && r.c_x <= 2.0 - 2.0 / n.sqrt() + 1e-12);
        for p in r.nearest.phases() {
            prop_assert!((p.norm() - 1.0).abs() <= 1e-12);
        }
        prop_assert!((r.nearest.to_vector().norm2() - 1.0).abs() <= 1e-12);
    }

    #[test]
    fn scale_invariance(x in any_vector(), re in 0.01f64..50.0, im in -50.0f64..50.0, neg in any::<bool>()) {
        let scaled = match x.field() {
            Field::Real => x.scale(if neg { -re } else { re }),
            Field::Complex => {
                let a = Complex64::new(re, im);
                Vector::complex(x.entries().iter().map(|z| z * a).collect::<Vec<_>>()).unwrap()
            }
        };
        let a = tightness_constant(&x).unwrap();
        let b = tightness_constant(&scaled).unwrap();
        prop_assert!((a - b).abs() <= 1e-12);
    }

    #[test]
    fn permutation_invariance(
        (v, shuffled) in prop::collection::vec(-100.0f64..100.0, 1..64)
            .prop_filter("nonzero", |v| v.iter().any(|&a| a != 0.0))
            .prop_flat_map(|v| (Just(v.clone()), Just(v).prop_shuffle()))
    ) {
        let a = tightness_constant(&Vector::real(v).unwrap()).unwrap();
        let b = tightness_constant(&Vector::real(shuffled).unwrap()).unwrap();
        // Same summands; only the summation order differs.
        prop_assert!((a - b).abs() <= 1e-14);
    }

    #[test]
    fn sqrt_s_test_matches_direct_comparison(x in any_vector(), frac in 0.0f64..1.0) {
        let n = x.len() as f64;
        let s = (frac * n).max(1e-3).min(n);
        let direct = x.norm1() <= s.sqrt() * x.norm2();
        let via_constant = satisfies_sqrt_s_bound(&x, s).unwrap();
        let gap = x.norm1() / x.norm2() - s.sqrt();
        // Only the 1e-9 boundary band may disagree, and then in favour of `true`.
        if gap.abs() > 1e-8 * n.sqrt() {
            prop_assert_eq!(direct, via_constant);
        } else {
            prop_assert!(via_constant || !direct);
        }
    }
}

#[test]
fn nearest_vector_beats_every_sign_pattern_for_small_real_vectors() {
    use rand::{Rng, SeedableRng};
    let mut rng = rand::rngs::StdRng::seed_from_u64(11);
    for _ in 0..300 {
        let n = rng.random_range(1..=10);
        let x = Vector::real(
            (0..n)
                .map(|_| rng.random_range(-3.0..3.0))
                .collect::<Vec<f64>>(),
        )
        .unwrap();
        let (_, d) = nearest_constant_modulus(&x).unwrap();
        let u = x.normalized().unwrap().real_parts();
        let scale = 1.0 / (n as f64).sqrt();
        for mask in 0u32..1 << n {
            let dist = (0..n)
                .map(|i| {
                    let s = if mask >> i & 1 == 1 { -scale } else { scale };
                    (u[i] - s).powi(2)
                })
                .sum::<f64>()
                .sqrt();
            assert!(dist - d >= -1e-12, "pattern {mask:b} closer: {dist} < {d}");
        }
    }
}
