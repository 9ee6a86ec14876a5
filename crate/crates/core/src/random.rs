//! Random inputs for property checks: extensors, frames and expressions.

use std::sync::Arc;

use nalgebra::DMatrix;
use rand::Rng;

use crate::error::Result;
use crate::expr::Expr;
use crate::extensor::Extensor;
use crate::ga::{binomial, Frame, Metric, Multivector, ProductKind};

/// Lower bound on `|det|` for [`invertible_extensor`] and [`frame`].
pub const MIN_ABS_DET: f64 = 0.1;

/// Entries uniform in `[-1, 1]`.
pub fn extensor<R: Rng + ?Sized>(metric: &Arc<Metric>, p: usize, q: usize, rng: &mut R) -> Result<Extensor> {
    let n = metric.dim();
    let m = DMatrix::from_fn(binomial(n, q), binomial(n, p), |_, _| rng.random_range(-1.0..=1.0));
    Extensor::new(metric, p, q, m)
}

/// `h = 1 + R/2` with `R` uniform in `[-1, 1]`, resampled until `|det h| ≥ 0.1`.
pub fn invertible_extensor<R: Rng + ?Sized>(metric: &Arc<Metric>, rng: &mut R) -> Extensor {
    let n = metric.dim();
    loop {
        let m = DMatrix::from_fn(n, n, |i, j| {
            let r: f64 = rng.random_range(-1.0..=1.0);
            if i == j {
                1.0 + 0.5 * r
            } else {
                0.5 * r
            }
        });
        let h = Extensor::new(metric, 1, 1, m).expect("square matrix of size n");
        if h.det().map(|d| d.abs() >= MIN_ABS_DET).unwrap_or(false) {
            return h;
        }
    }
}

/// Frame `f_k = e_k + r_k/2`, resampled until the component matrix has `|det| ≥ 0.1`.
pub fn frame<R: Rng + ?Sized>(metric: &Arc<Metric>, rng: &mut R) -> Frame {
    loop {
        let h = invertible_extensor(metric, rng);
        let vectors = (0..metric.dim())
            .map(|k| h.apply(&Multivector::basis_vector(metric, k)).expect("grade 1"))
            .collect();
        if let Ok(f) = Frame::new(metric, vectors) {
            return f;
        }
    }
}

/// Nonzero pseudoscalar with coefficient magnitude in `[0.5, 2]` and random sign.
pub fn pseudoscalar<R: Rng + ?Sized>(metric: &Arc<Metric>, rng: &mut R) -> Multivector {
    let mag: f64 = rng.random_range(0.5..=2.0);
    let sign = if rng.random_bool(0.5) { 1.0 } else { -1.0 };
    Multivector::pseudoscalar(metric).scale(sign * mag)
}

/// Random polynomial expression in `arity` variables built from the four
/// products, sums, scalings and mixed-grade constants.
pub fn polynomial<R: Rng + ?Sized>(metric: &Arc<Metric>, arity: usize, depth: usize, rng: &mut R) -> Expr {
    if depth == 0 || rng.random_bool(0.2) {
        return if arity > 0 && rng.random_bool(0.7) {
            Expr::var(rng.random_range(0..arity))
        } else {
            Expr::constant(Multivector::random_mixed(metric, rng).scale(0.5))
        };
    }
    match rng.random_range(0..6) {
        0 => polynomial(metric, arity, depth - 1, rng) + polynomial(metric, arity, depth - 1, rng),
        1 => polynomial(metric, arity, depth - 1, rng).scaled(rng.random_range(-2.0..=2.0)),
        k => {
            let kind = ProductKind::ALL[k - 2];
            polynomial(metric, arity, depth - 1, rng).product(kind, polynomial(metric, arity, depth - 1, rng))
        }
    }
}

/// Like [`polynomial`] but guaranteed to reference every variable at least once.
pub fn polynomial_using_all<R: Rng + ?Sized>(metric: &Arc<Metric>, arity: usize, depth: usize, rng: &mut R) -> Expr {
    let mut e = polynomial(metric, arity, depth, rng);
    for i in 0..arity {
        let c = Expr::constant(Multivector::random_mixed(metric, rng).scale(0.5));
        let kind = ProductKind::ALL[rng.random_range(0..4)];
        e = e + Expr::var(i).product(kind, c);
    }
    e
}
