//! Fixed inputs shared by the benchmarks.

use std::sync::Arc;

use mvfunc_core::functional::catalog;
use mvfunc_core::{random, Extensor, Frame, InducedFunctional, Metric, Multivector};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub struct Fixture {
    pub metric: Arc<Metric>,
    pub a: Multivector,
    pub b: Multivector,
    pub direction: Multivector,
    pub h: Extensor,
    pub det: InducedFunctional,
    pub dot: InducedFunctional,
}

impl Fixture {
    /// Deterministic inputs in dimension `n` with a Euclidean metric.
    pub fn new(n: usize) -> Self {
        let metric = Arc::new(Metric::euclidean(n).expect("2 ≤ n ≤ 8"));
        let mut rng = ChaCha8Rng::seed_from_u64(n as u64);
        let a = Multivector::random_mixed(&metric, &mut rng);
        let b = Multivector::random_mixed(&metric, &mut rng);
        let direction = Multivector::random(&metric, 1, &mut rng).expect("grade 1");
        let h = random::invertible_extensor(&metric, &mut rng);
        let frame = Frame::standard(&metric);
        let det = catalog::determinant(&frame);
        let u = Multivector::random(&metric, 1, &mut rng).expect("grade 1");
        let v = Multivector::random(&metric, 1, &mut rng).expect("grade 1");
        let dot = catalog::dot_of_images(&u, &v);
        Fixture {
            metric,
            a,
            b,
            direction,
            h,
            det,
            dot,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fixtures_evaluate() {
        for n in 2..=6 {
            let f = Fixture::new(n);
            let d = f.det.evaluate(&f.h).unwrap().scalar_part();
            assert!((d - f.h.det().unwrap()).abs() < 1e-12);
            assert!(f.dot.a_dot_dt(&f.h, &f.direction).unwrap().is_grade(1));
        }
    }
}
