//! Multivector-valued expressions in `k` variables.
//!
//! Expressions are evaluated over any [`Scalar`] field, which is what lets the
//! calculus layer differentiate them exactly by evaluating over
//! [`DiffScalar`](crate::DiffScalar).

use std::fmt;
use std::ops::{Add, Neg, Sub};

use crate::ga::{Multivector, ProductKind};
use crate::scalar::Scalar;

/// Smooth real function applied to the scalar part of an expression.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ScalarMap {
    Square,
    Exp,
    Sin,
    Cos,
}

impl ScalarMap {
    pub fn apply<S: Scalar>(self, x: S) -> S {
        match self {
            ScalarMap::Square => x * x,
            ScalarMap::Exp => x.exp(),
            ScalarMap::Sin => x.sin(),
            ScalarMap::Cos => x.cos(),
        }
    }

    /// `φ'(x)`.
    pub fn derivative(self, x: f64) -> f64 {
        match self {
            ScalarMap::Square => 2.0 * x,
            ScalarMap::Exp => x.exp(),
            ScalarMap::Sin => x.cos(),
            ScalarMap::Cos => -x.sin(),
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            ScalarMap::Square => "square",
            ScalarMap::Exp => "exp",
            ScalarMap::Sin => "sin",
            ScalarMap::Cos => "cos",
        }
    }
}

#[derive(Clone, PartialEq)]
pub enum Expr {
    /// The `i`-th argument.
    Var(usize),
    Const(Multivector),
    Sum(Box<Expr>, Box<Expr>),
    Scale(f64, Box<Expr>),
    Product(ProductKind, Box<Expr>, Box<Expr>),
    Grade(usize, Box<Expr>),
    Reverse(Box<Expr>),
    /// `φ(<x>_0)`; non-scalar parts of the operand are discarded.
    Map(ScalarMap, Box<Expr>),
}

impl Expr {
    pub fn var(i: usize) -> Self {
        Expr::Var(i)
    }

    pub fn constant(value: Multivector) -> Self {
        Expr::Const(value)
    }

    pub fn product(self, kind: ProductKind, rhs: Expr) -> Self {
        Expr::Product(kind, Box::new(self), Box::new(rhs))
    }

    pub fn gp(self, rhs: Expr) -> Self {
        self.product(ProductKind::Geometric, rhs)
    }

    pub fn wedge(self, rhs: Expr) -> Self {
        self.product(ProductKind::Wedge, rhs)
    }

    pub fn dot(self, rhs: Expr) -> Self {
        self.product(ProductKind::Scalar, rhs)
    }

    pub fn lc(self, rhs: Expr) -> Self {
        self.product(ProductKind::Lcontract, rhs)
    }

    pub fn scaled(self, k: f64) -> Self {
        Expr::Scale(k, Box::new(self))
    }

    pub fn grade(self, r: usize) -> Self {
        Expr::Grade(r, Box::new(self))
    }

    pub fn reversed(self) -> Self {
        Expr::Reverse(Box::new(self))
    }

    pub fn map(self, f: ScalarMap) -> Self {
        Expr::Map(f, Box::new(self))
    }

    /// Largest variable index referenced, if any.
    pub fn max_var(&self) -> Option<usize> {
        match self {
            Expr::Var(i) => Some(*i),
            Expr::Const(_) => None,
            Expr::Sum(a, b) | Expr::Product(_, a, b) => match (a.max_var(), b.max_var()) {
                (Some(x), Some(y)) => Some(x.max(y)),
                (x, y) => x.or(y),
            },
            Expr::Scale(_, a) | Expr::Grade(_, a) | Expr::Reverse(a) | Expr::Map(_, a) => a.max_var(),
        }
    }

    /// Renumbers every variable `i` to `i + offset`.
    pub fn shift_vars(&self, offset: usize) -> Expr {
        let s = |e: &Expr| Box::new(e.shift_vars(offset));
        match self {
            Expr::Var(i) => Expr::Var(i + offset),
            Expr::Const(c) => Expr::Const(c.clone()),
            Expr::Sum(a, b) => Expr::Sum(s(a), s(b)),
            Expr::Product(k, a, b) => Expr::Product(*k, s(a), s(b)),
            Expr::Scale(k, a) => Expr::Scale(*k, s(a)),
            Expr::Grade(r, a) => Expr::Grade(*r, s(a)),
            Expr::Reverse(a) => Expr::Reverse(s(a)),
            Expr::Map(f, a) => Expr::Map(*f, s(a)),
        }
    }

    /// Evaluates with `args[i]` bound to `Var(i)`. Callers guarantee that every
    /// referenced variable exists and that all operands share one metric.
    pub fn eval<S: Scalar>(&self, args: &[Multivector<S>]) -> Multivector<S> {
        match self {
            Expr::Var(i) => args[*i].clone(),
            Expr::Const(c) => c.lift(),
            Expr::Sum(a, b) => a.eval(args) + b.eval(args),
            Expr::Scale(k, a) => a.eval(args).scale(*k),
            Expr::Product(kind, a, b) => {
                let (x, y) = (a.eval(args), b.eval(args));
                x.product(*kind, &y).expect("expression operands share a metric")
            }
            Expr::Grade(r, a) => a.eval(args).grade_part(*r),
            Expr::Reverse(a) => a.eval(args).reverse(),
            Expr::Map(f, a) => {
                let x = a.eval(args);
                Multivector::from_scalar(x.metric(), f.apply(x.scalar_part()))
            }
        }
    }
}

impl Add for Expr {
    type Output = Expr;
    fn add(self, rhs: Expr) -> Expr {
        Expr::Sum(Box::new(self), Box::new(rhs))
    }
}

impl Sub for Expr {
    type Output = Expr;
    fn sub(self, rhs: Expr) -> Expr {
        self + rhs.scaled(-1.0)
    }
}

impl Neg for Expr {
    type Output = Expr;
    fn neg(self) -> Expr {
        self.scaled(-1.0)
    }
}

impl fmt::Debug for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Expr::Var(i) => write!(f, "X{}", i + 1),
            Expr::Const(c) => write!(f, "{c:?}"),
            Expr::Sum(a, b) => write!(f, "({a:?} + {b:?})"),
            Expr::Scale(k, a) => write!(f, "{k}*{a:?}"),
            Expr::Product(kind, a, b) => {
                let op = match kind {
                    ProductKind::Geometric => " ",
                    ProductKind::Wedge => "∧",
                    ProductKind::Scalar => "·",
                    ProductKind::Lcontract => "⌟",
                };
                write!(f, "({a:?}{op}{b:?})")
            }
            Expr::Grade(r, a) => write!(f, "<{a:?}>_{r}"),
            Expr::Reverse(a) => write!(f, "rev({a:?})"),
            Expr::Map(m, a) => write!(f, "{}({a:?})", m.name()),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ga::Metric;
    use crate::scalar::DiffScalar;
    use std::sync::Arc;

    #[test]
    fn shift_and_max_var() {
        let e = Expr::var(0).wedge(Expr::var(2)) + Expr::var(1).map(ScalarMap::Exp);
        assert_eq!(e.max_var(), Some(2));
        assert_eq!(e.shift_vars(3).max_var(), Some(5));
        let m = Arc::new(Metric::euclidean(2).unwrap());
        assert_eq!(Expr::constant(Multivector::pseudoscalar(&m)).max_var(), None);
    }

    #[test]
    fn real_and_dual_evaluation_agree_in_value() {
        let m = Arc::new(Metric::euclidean(3).unwrap());
        let c = Multivector::vector(&m, &[0.2, -0.4, 1.0]).unwrap();
        let e = (Expr::var(0).gp(Expr::var(1)).gp(Expr::constant(c.clone())) - Expr::var(0)).grade(1)
            + Expr::var(0).dot(Expr::var(1)).map(ScalarMap::Sin).scaled(2.0);
        let x = Multivector::vector(&m, &[1.0, 2.0, 3.0]).unwrap();
        let y = Multivector::vector(&m, &[-1.0, 0.5, 0.25]).unwrap();
        let real = e.eval(&[x.clone(), y.clone()]);
        let dual = e.eval::<DiffScalar>(&[x.lift(), y.lift()]);
        assert_eq!(dual.values(), real);
        assert!(dual.coeffs().iter().all(|d| d.tangent == 0.0));
    }

    #[test]
    fn map_uses_scalar_part() {
        let m = Arc::new(Metric::euclidean(2).unwrap());
        let x = &Multivector::from_scalar(&m, 0.5) + &Multivector::basis_vector(&m, 0);
        let out = Expr::var(0).map(ScalarMap::Square).eval(&[x]);
        assert_eq!(out, Multivector::from_scalar(&m, 0.25));
    }
}
