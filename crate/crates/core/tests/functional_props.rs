use std::sync::Arc;

use mvfunc_core::functional::{bridge_lhs_directional, bridge_lhs_star, catalog, classical_partials, lifted_eval};
use mvfunc_core::{
    random, DerivMethod, Extensor, Frame, InducedFunctional, Metric, Multivector, MvFunction, ProductKind, ScalarMap,
};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn metric_from(dim: usize, signs: u8) -> Arc<Metric> {
    let diag = (0..dim).map(|k| if signs >> k & 1 == 1 { -1.0 } else { 1.0 }).collect();
    Arc::new(Metric::new(diag).unwrap())
}

fn functional(m: &Arc<Metric>, p: usize, q: usize, k: usize, rng: &mut ChaCha8Rng) -> InducedFunctional {
    let expr = random::polynomial_using_all(m, k, 2, rng);
    let f = MvFunction::new(k, q, expr).unwrap();
    let anchors = (0..k).map(|_| Multivector::random(m, p, rng).unwrap()).collect();
    InducedFunctional::new(f, anchors, p).unwrap()
}

fn close(a: &Multivector, b: &Multivector, tol: f64) -> bool {
    a.max_abs_diff(b) <= tol * a.norm_inf().max(b.norm_inf()).max(1.0)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn direction_linearity(dim in 2usize..=4, signs in any::<u8>(), p in 1usize..=2, seed in any::<u64>(), a in -2.0f64..2.0, b in -2.0f64..2.0) {
        let m = metric_from(dim, signs);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let phi = functional(&m, p, 1, 2, &mut rng);
        let t = random::extensor(&m, p, 1, &mut rng).unwrap();
        let u = Multivector::random(&m, p, &mut rng).unwrap();
        let v = Multivector::random(&m, p, &mut rng).unwrap();
        let lhs = phi.a_dot_dt(&t, &(&u.scale(a) + &v.scale(b))).unwrap();
        let rhs = &phi.a_dot_dt(&t, &u).unwrap().scale(a) + &phi.a_dot_dt(&t, &v).unwrap().scale(b);
        prop_assert!(close(&lhs, &rhs, 1e-12));
    }

    #[test]
    fn scaling_product_and_sum_rules(dim in 2usize..=4, signs in any::<u8>(), seed in any::<u64>(), lambda in -3.0f64..3.0) {
        let m = metric_from(dim, signs);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let f = functional(&m, 1, 1, 2, &mut rng);
        let g = functional(&m, 1, 1, 3, &mut rng);
        let t = random::extensor(&m, 1, 1, &mut rng).unwrap();
        let a = Multivector::random(&m, 1, &mut rng).unwrap();
        let mm = Multivector::random_mixed(&m, &mut rng);
        let df = f.a_dot_dt(&t, &a).unwrap();
        let dg = g.a_dot_dt(&t, &a).unwrap();

        prop_assert!(close(&f.scaled(lambda).a_dot_dt(&t, &a).unwrap(), &df.scale(lambda), 1e-10));
        prop_assert!(close(&f.times_right(&mm).unwrap().a_dot_dt(&t, &a).unwrap(), &df.gp(&mm), 1e-10));
        prop_assert!(close(&f.plus(&g).unwrap().a_dot_dt(&t, &a).unwrap(), &(&df + &dg), 1e-10));
    }

    #[test]
    fn leibniz_rule(dim in 2usize..=4, signs in any::<u8>(), seed in any::<u64>()) {
        let m = metric_from(dim, signs);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let base = functional(&m, 1, 1, 2, &mut rng);
        let scalar = InducedFunctional::new(
            MvFunction::new(2, 1, base.function().expr().clone().grade(0)).unwrap(),
            base.anchors().to_vec(),
            1,
        ).unwrap();
        let g = functional(&m, 1, 1, 2, &mut rng);
        let t = random::extensor(&m, 1, 1, &mut rng).unwrap();
        let a = Multivector::random(&m, 1, &mut rng).unwrap();
        let lhs = scalar.times(&g).unwrap().a_dot_dt(&t, &a).unwrap();
        let rhs = &scalar.a_dot_dt(&t, &a).unwrap().gp(&g.evaluate(&t).unwrap())
            + &scalar.evaluate(&t).unwrap().gp(&g.a_dot_dt(&t, &a).unwrap());
        prop_assert!(close(&lhs, &rhs, 1e-9));
    }

    #[test]
    fn chain_rule(dim in 2usize..=4, signs in any::<u8>(), seed in any::<u64>(), which in 0usize..3) {
        let map = [ScalarMap::Square, ScalarMap::Exp, ScalarMap::Sin][which];
        let m = metric_from(dim, signs);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let b = Multivector::random(&m, 1, &mut rng).unwrap();
        let c = Multivector::random(&m, 1, &mut rng).unwrap();
        let psi = catalog::dot_of_images(&b, &c);
        let t = random::extensor(&m, 1, 1, &mut rng).unwrap();
        let a = Multivector::random(&m, 1, &mut rng).unwrap();
        let value = psi.evaluate(&t).unwrap().scalar_part();
        let lhs = psi.mapped(map).a_dot_dt(&t, &a).unwrap();
        let rhs = psi.a_dot_dt(&t, &a).unwrap().scale(map.derivative(value));
        prop_assert!(close(&lhs, &rhs, 1e-9));
    }

    #[test]
    fn frame_sum_matches_intrinsic_form(dim in 2usize..=4, signs in any::<u8>(), p in 1usize..=2, q in 1usize..=2, seed in any::<u64>()) {
        let m = metric_from(dim, signs);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let phi = functional(&m, p, q, 2, &mut rng);
        let t = random::extensor(&m, p, q, &mut rng).unwrap();
        let std = Frame::standard(&m);
        let other = random::frame(&m, &mut rng);
        for kind in ProductKind::ALL {
            let intrinsic = phi.dt_star(&t, kind).unwrap();
            let a = phi.dt_star_via_frame(&t, kind, &std).unwrap();
            let b = phi.dt_star_via_frame(&t, kind, &other).unwrap();
            prop_assert!(close(&a, &b, 1e-8), "{kind}");
            prop_assert!(close(&intrinsic, &a, 1e-9), "{kind}");
        }
    }

    #[test]
    fn exact_path_matches_central_difference(dim in 2usize..=4, signs in any::<u8>(), seed in any::<u64>()) {
        let m = metric_from(dim, signs);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let phi = functional(&m, 1, 1, 2, &mut rng);
        let t = random::extensor(&m, 1, 1, &mut rng).unwrap();
        let a = Multivector::random(&m, 1, &mut rng).unwrap();
        let fd = DerivMethod::CentralDifference { step: 1e-5 };
        prop_assert!(phi.a_dot_dt(&t, &a).unwrap().max_abs_diff(&phi.a_dot_dt_with(&t, &a, fd).unwrap()) <= 1e-5);
        for kind in ProductKind::ALL {
            prop_assert!(phi.dt_star(&t, kind).unwrap().max_abs_diff(&phi.dt_star_with(&t, kind, fd).unwrap()) <= 1e-5);
        }
    }

    #[test]
    fn bridge_identities(dim in 2usize..=4, signs in any::<u8>(), seed in any::<u64>(), which in 0usize..3) {
        let m = metric_from(dim, signs);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let a1 = Multivector::random(&m, 1, &mut rng).unwrap();
        let c = Multivector::random(&m, 1, &mut rng).unwrap();
        let base = catalog::image_dot(&a1, &c);
        let phi = match which {
            0 => base,
            1 => base.mapped(ScalarMap::Square),
            _ => base.mapped(ScalarMap::Exp),
        };
        let t = random::extensor(&m, 1, 1, &mut rng).unwrap();
        let frame = random::frame(&m, &mut rng);
        let partials = classical_partials(&phi, &t, &frame).unwrap();

        // Finite differences of the lifted real function in the t_pq coordinates.
        let comps = t.to_components(&frame).unwrap();
        let h = 1e-5;
        for p in 0..dim {
            for q in 0..dim {
                let (mut up, mut down) = (comps.clone(), comps.clone());
                up[(p, q)] += h;
                down[(p, q)] -= h;
                let fd = (lifted_eval(&phi, &up, &frame).unwrap() - lifted_eval(&phi, &down, &frame).unwrap()) / (2.0 * h);
                prop_assert!((fd - partials[(p, q)]).abs() <= 1e-5 * partials[(p, q)].abs().max(1.0));
            }
        }

        let a = Multivector::random(&m, 1, &mut rng).unwrap();
        let lhs = bridge_lhs_directional(&partials, &a, &frame).unwrap();
        prop_assert!(close(&lhs, &phi.a_dot_dt(&t, &a).unwrap(), 1e-8));
        for kind in ProductKind::ALL {
            let lhs = bridge_lhs_star(&partials, kind, &frame).unwrap();
            prop_assert!(close(&lhs, &phi.dt_star(&t, kind).unwrap(), 1e-8), "{kind}");
        }
    }
}

#[test]
fn zero_direction_short_circuits() {
    let m = Arc::new(Metric::euclidean(3).unwrap());
    let phi = catalog::trace(&Frame::standard(&m));
    let t = Extensor::identity(&m, 1).unwrap();
    assert!(phi.a_dot_dt(&t, &Multivector::zero(&m)).unwrap().is_zero());
}

#[test]
fn repeated_anchors_occupy_separate_slots() {
    let m = Arc::new(Metric::euclidean(3).unwrap());
    let b = Multivector::vector(&m, &[1.0, 2.0, 0.5]).unwrap();
    let phi = catalog::dot_of_images(&b, &b);
    let h = Extensor::identity(&m, 1).unwrap();
    let a = Multivector::basis_vector(&m, 1);
    // a·∂_h (h(b)·h(b)) = 2 (a·b) h(b) at h = 1.
    let want = b.scale(2.0 * a.scalar_product(&b));
    assert!(phi.a_dot_dt(&h, &a).unwrap().max_abs_diff(&want) < 1e-12);
}

#[test]
fn signature_mismatch_is_rejected() {
    let m = Arc::new(Metric::euclidean(3).unwrap());
    let phi = catalog::image(&Multivector::basis_vector(&m, 0));
    let t = Extensor::identity(&m, 2).unwrap();
    assert!(matches!(
        phi.evaluate(&t),
        Err(mvfunc_core::Error::SignatureMismatch { .. })
    ));
}

#[test]
fn gradient_of_determinant_for_a_diagonal_extensor() {
    let m = Arc::new(Metric::euclidean(3).unwrap());
    let h = Extensor::diagonal(&m, &[2.0, 3.0, 5.0]).unwrap();
    let det = catalog::determinant(&Frame::standard(&m));
    let grad = det.dt_star(&h, ProductKind::Geometric).unwrap();
    assert!(grad.is_grade(0));
    assert!((grad.scalar_part() - 30.0 * (0.5 + 1.0 / 3.0 + 0.2)).abs() < 1e-12);
}
