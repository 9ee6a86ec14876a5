//! Derivatives of multivector functions `F: (Λ^q V)^k → Λ V`.
//!
//! `dir_deriv` computes `B·∂_{X^i} F`, the derivative of `F` when the `i`-th
//! argument moves along the `q`-vector `B`. It seeds the coefficients of `B`
//! as tangents of a [`DiffScalar`] evaluation, so the result is exact for any
//! function built from [`Expr`] nodes. `grad_star` assembles the
//! `∂_{X^i} *` family from these directional derivatives over a frame.
//! `fd_dir_deriv` is a central-difference oracle that shares nothing with the
//! tangent path beyond the function evaluation itself.

use crate::error::{Error, Result};
use crate::expr::Expr;
use crate::ga::{blades_of_grade, Frame, Multivector, ProductKind};
use crate::scalar::DiffScalar;

/// Default central-difference step.
pub const DEFAULT_FD_STEP: f64 = 1e-5;

/// A function of `arity` homogeneous `input_grade`-vector arguments.
#[derive(Debug, Clone, PartialEq)]
pub struct MvFunction {
    arity: usize,
    input_grade: usize,
    expr: Expr,
}

impl MvFunction {
    pub fn new(arity: usize, input_grade: usize, expr: Expr) -> Result<Self> {
        if let Some(i) = expr.max_var() {
            if i >= arity {
                return Err(Error::VariableIndex { index: i, arity });
            }
        }
        Ok(Self {
            arity,
            input_grade,
            expr,
        })
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn input_grade(&self) -> usize {
        self.input_grade
    }

    pub fn expr(&self) -> &Expr {
        &self.expr
    }

    fn check_args(&self, args: &[Multivector]) -> Result<()> {
        if args.len() != self.arity {
            return Err(Error::ArityMismatch {
                expected: self.arity,
                found: args.len(),
            });
        }
        if let Some(first) = args.first() {
            if self.input_grade > first.dim() {
                return Err(Error::GradeOutOfRange {
                    grade: self.input_grade,
                    dim: first.dim(),
                });
            }
        }
        for a in args {
            if !a.same_metric(&args[0]) {
                return Err(Error::MetricMismatch);
            }
            if !a.is_grade(self.input_grade) {
                return Err(Error::NotHomogeneous {
                    expected: self.input_grade,
                });
            }
        }
        Ok(())
    }

    fn check_slot(&self, args: &[Multivector], i: usize, dir: &Multivector) -> Result<()> {
        self.check_args(args)?;
        if i >= self.arity {
            return Err(Error::VariableIndex {
                index: i,
                arity: self.arity,
            });
        }
        if !dir.same_metric(&args[i]) {
            return Err(Error::MetricMismatch);
        }
        if !dir.is_grade(self.input_grade) {
            return Err(Error::NotHomogeneous {
                expected: self.input_grade,
            });
        }
        Ok(())
    }

    pub fn eval(&self, args: &[Multivector]) -> Result<Multivector> {
        self.check_args(args)?;
        Ok(self.expr.eval(args))
    }
}

/// How the partial derivatives `∂_{X^i} F` are obtained.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub enum DerivMethod {
    /// Tangent propagation; exact up to rounding.
    #[default]
    Exact,
    /// Central differences with the given step.
    CentralDifference { step: f64 },
}

/// `B·∂_{X^i} F` at `args`, i.e. `d/dε F(…, X^i + εB, …)` at `ε = 0`.
pub fn dir_deriv(f: &MvFunction, args: &[Multivector], i: usize, dir: &Multivector) -> Result<Multivector> {
    f.check_slot(args, i, dir)?;
    Ok(dir_deriv_unchecked(f, args, i, dir))
}

fn dir_deriv_unchecked(f: &MvFunction, args: &[Multivector], i: usize, dir: &Multivector) -> Multivector {
    if dir.is_zero() {
        return Multivector::zero(dir.metric());
    }
    let seeded: Vec<Multivector<DiffScalar>> = args
        .iter()
        .enumerate()
        .map(|(j, a)| {
            if j == i {
                let coeffs = a
                    .coeffs()
                    .iter()
                    .zip(dir.coeffs())
                    .map(|(x, t)| DiffScalar::new(*x, *t))
                    .collect();
                Multivector::from_coeffs(a.metric(), coeffs).expect("same size")
            } else {
                a.lift()
            }
        })
        .collect();
    f.expr.eval(&seeded).map(|c| c.tangent)
}

/// Central-difference estimate `(F(X^i + hB) − F(X^i − hB)) / 2h`.
pub fn fd_dir_deriv(
    f: &MvFunction,
    args: &[Multivector],
    i: usize,
    dir: &Multivector,
    step: f64,
) -> Result<Multivector> {
    if !(step > 0.0 && step.is_finite()) {
        return Err(Error::InvalidArgument(format!(
            "finite-difference step must be positive, got {step}"
        )));
    }
    f.check_slot(args, i, dir)?;
    Ok(fd_dir_deriv_unchecked(f, args, i, dir, step))
}

fn fd_dir_deriv_unchecked(f: &MvFunction, args: &[Multivector], i: usize, dir: &Multivector, step: f64) -> Multivector {
    if dir.is_zero() {
        return Multivector::zero(dir.metric());
    }
    let mut plus = args.to_vec();
    let mut minus = args.to_vec();
    plus[i] = &args[i] + &dir.scale(step);
    minus[i] = &args[i] - &dir.scale(step);
    (f.expr.eval(&plus) - f.expr.eval(&minus)).scale(0.5 / step)
}

/// Directional derivative by the chosen method.
pub fn derivative(
    f: &MvFunction,
    args: &[Multivector],
    i: usize,
    dir: &Multivector,
    method: DerivMethod,
) -> Result<Multivector> {
    match method {
        DerivMethod::Exact => dir_deriv(f, args, i, dir),
        DerivMethod::CentralDifference { step } => fd_dir_deriv(f, args, i, dir, step),
    }
}

/// `∂_{X^i} * F` in the standard frame, exact.
pub fn grad_star(f: &MvFunction, args: &[Multivector], i: usize, kind: ProductKind) -> Result<Multivector> {
    let frame = match args.first() {
        Some(a) => Frame::standard(a.metric()),
        None => {
            return Err(Error::ArityMismatch {
                expected: f.arity,
                found: 0,
            })
        }
    };
    grad_star_in(f, args, i, kind, &frame, DerivMethod::Exact)
}

/// `Σ_J f^J * (f_J·∂_{X^i}) F` over the increasing grade-`q` blades of `frame`.
///
/// For `kind = Geometric` this is the vector derivative `∂_{X^i} F`.
pub fn grad_star_in(
    f: &MvFunction,
    args: &[Multivector],
    i: usize,
    kind: ProductKind,
    frame: &Frame,
    method: DerivMethod,
) -> Result<Multivector> {
    f.check_args(args)?;
    if i >= f.arity {
        return Err(Error::VariableIndex {
            index: i,
            arity: f.arity,
        });
    }
    if **frame.metric() != **args[i].metric() {
        return Err(Error::MetricMismatch);
    }
    if let DerivMethod::CentralDifference { step } = method {
        if !(step > 0.0 && step.is_finite()) {
            return Err(Error::InvalidArgument(format!(
                "finite-difference step must be positive, got {step}"
            )));
        }
    }
    let mut acc = Multivector::zero(frame.metric());
    for blade in blades_of_grade(frame.dim(), f.input_grade) {
        let dir = frame.blade(blade);
        let d = match method {
            DerivMethod::Exact => dir_deriv_unchecked(f, args, i, &dir),
            DerivMethod::CentralDifference { step } => fd_dir_deriv_unchecked(f, args, i, &dir, step),
        };
        acc += &frame.reciprocal_blade(blade).product(kind, &d)?;
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ga::{Metric, Multivector};
    use std::sync::Arc;

    fn setup(n: usize) -> Arc<Metric> {
        Arc::new(Metric::euclidean(n).unwrap())
    }

    fn e(m: &Arc<Metric>, k: usize) -> Multivector {
        Multivector::basis_vector(m, k)
    }

    fn dot_with(y: &Multivector) -> MvFunction {
        MvFunction::new(1, 1, Expr::var(0).dot(Expr::constant(y.clone()))).unwrap()
    }

    #[test]
    fn dir_deriv_of_dot_is_projection() {
        let m = setup(3);
        let f = dot_with(&e(&m, 0));
        let d = dir_deriv(&f, &[e(&m, 1)], 0, &e(&m, 0)).unwrap();
        assert_eq!(d, Multivector::from_scalar(&m, 1.0));
    }

    #[test]
    fn dir_deriv_of_square() {
        let m = setup(3);
        let f = MvFunction::new(1, 1, Expr::var(0).dot(Expr::var(0))).unwrap();
        let d = dir_deriv(&f, &[e(&m, 0)], 0, &e(&m, 0)).unwrap();
        assert_eq!(d, Multivector::from_scalar(&m, 2.0));
    }

    #[test]
    fn zero_direction_gives_zero() {
        let m = setup(3);
        let f = MvFunction::new(1, 1, Expr::var(0).gp(Expr::var(0)).map(crate::ScalarMap::Exp)).unwrap();
        let x = Multivector::vector(&m, &[0.3, 0.1, -0.2]).unwrap();
        let z = Multivector::zero(&m);
        assert!(dir_deriv(&f, std::slice::from_ref(&x), 0, &z).unwrap().is_zero());
        assert_eq!(fd_dir_deriv(&f, &[x], 0, &z, 1e-5).unwrap(), z);
    }

    #[test]
    fn argument_errors() {
        let m = setup(3);
        let f = dot_with(&e(&m, 0));
        let x = e(&m, 1);
        assert_eq!(
            dir_deriv(&f, &[x.clone(), x.clone()], 0, &x),
            Err(Error::ArityMismatch { expected: 1, found: 2 })
        );
        assert_eq!(
            dir_deriv(&f, std::slice::from_ref(&x), 1, &x),
            Err(Error::VariableIndex { index: 1, arity: 1 })
        );
        assert_eq!(
            dir_deriv(&f, std::slice::from_ref(&x), 0, &Multivector::pseudoscalar(&m)),
            Err(Error::NotHomogeneous { expected: 1 })
        );
        assert!(fd_dir_deriv(&f, std::slice::from_ref(&x), 0, &x, 0.0).is_err());
        assert!(MvFunction::new(1, 1, Expr::var(1)).is_err());
    }

    #[test]
    fn gradient_of_identity_is_dimension() {
        let m = setup(3);
        let f = MvFunction::new(1, 1, Expr::var(0)).unwrap();
        let x = Multivector::vector(&m, &[0.4, -1.0, 2.0]).unwrap();
        let g = grad_star(&f, &[x], 0, ProductKind::Geometric).unwrap();
        assert!(g.max_abs_diff(&Multivector::from_scalar(&m, 3.0)) < 1e-15);
    }

    #[test]
    fn gradient_of_dot_and_wedge() {
        let m = setup(3);
        let y = e(&m, 0);
        let x = Multivector::vector(&m, &[0.4, -1.0, 2.0]).unwrap();
        let g = grad_star(&dot_with(&y), std::slice::from_ref(&x), 0, ProductKind::Geometric).unwrap();
        assert!(g.max_abs_diff(&y) < 1e-15);
        let b = Multivector::vector(&m, &[1.0, 2.0, -0.5]).unwrap();
        let f = MvFunction::new(1, 1, Expr::constant(b.clone()).dot(Expr::var(0))).unwrap();
        let g = grad_star(&f, std::slice::from_ref(&x), 0, ProductKind::Geometric).unwrap();
        assert!(g.max_abs_diff(&b) < 1e-15);
        let w = MvFunction::new(1, 1, Expr::var(0).wedge(Expr::constant(y.clone()))).unwrap();
        let g = grad_star(&w, &[x], 0, ProductKind::Geometric).unwrap();
        assert!(g.max_abs_diff(&y.scale(2.0)) < 1e-15);
    }

    #[test]
    fn fd_examples() {
        let m = setup(3);
        let d = fd_dir_deriv(&dot_with(&e(&m, 0)), &[e(&m, 1)], 0, &e(&m, 0), 1e-5).unwrap();
        assert!((d.scalar_part() - 1.0).abs() < 1e-9);
        let sq = MvFunction::new(1, 1, Expr::var(0).dot(Expr::var(0))).unwrap();
        let d = fd_dir_deriv(&sq, &[e(&m, 0)], 0, &e(&m, 0), 1e-5).unwrap();
        assert!((d.scalar_part() - 2.0).abs() < 1e-8);
    }

    #[test]
    fn gradient_frame_independence_bivector_variable() {
        let m = Arc::new(Metric::new(vec![1.0, 1.0, -1.0]).unwrap());
        let c = Multivector::from_coeffs(&m, (0..8).map(|k| 0.1 * k as f64 - 0.3).collect()).unwrap();
        let f = MvFunction::new(1, 2, Expr::var(0).gp(Expr::constant(c)).gp(Expr::var(0)).grade(2)).unwrap();
        let x = Multivector::from_coeffs(&m, vec![0.0, 0.0, 0.0, 0.5, 0.0, -1.0, 0.25, 0.0]).unwrap();
        let skew =
            Frame::from_components(&m, &[vec![1.0, 0.2, 0.1], vec![-0.3, 0.9, 0.0], vec![0.4, 0.0, 1.3]]).unwrap();
        for kind in ProductKind::ALL {
            let a = grad_star_in(
                &f,
                std::slice::from_ref(&x),
                0,
                kind,
                &Frame::standard(&m),
                DerivMethod::Exact,
            )
            .unwrap();
            let b = grad_star_in(&f, std::slice::from_ref(&x), 0, kind, &skew, DerivMethod::Exact).unwrap();
            assert!(a.max_abs_diff(&b) < 1e-12, "{kind}");
        }
    }
}
