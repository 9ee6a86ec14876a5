//! Induced multivector functionals of extensors and their derivatives.
//!
//! Given a multivector function `F` of `k` `q`-vector variables and anchors
//! `A¹,…,A^k ∈ Λ^p V`, the induced functional sends a `(p,q)`-extensor `t` to
//! `F[t(A¹),…,t(A^k)]`. Its `A`-directional derivative is
//!
//! ```text
//! A·∂_t F[…] = Σ_i (A·A^i) ∂_{X^i} F[t(A¹),…,t(A^k)]
//! ```
//!
//! and the four derivative operators (curl, scalar divergence, left-contracted
//! divergence, gradient) are
//!
//! ```text
//! ∂_t * F[…] = Σ_i A^i * ∂_{X^i} F[…] = Σ_J e^J * (e_J·∂_t F[…])
//! ```
//!
//! where `*` is one of `∧ · ⌟` or the geometric product and `J` runs over the
//! increasing grade-`p` blades of any frame. Both forms are implemented
//! ([`InducedFunctional::dt_star`] and [`InducedFunctional::dt_star_via_frame`])
//! so their agreement can be checked.

mod bridge;
pub mod catalog;

use crate::calculus::{grad_star_in, DerivMethod, MvFunction};
use crate::error::{Error, Result};
use crate::expr::{Expr, ScalarMap};
use crate::extensor::Extensor;
use crate::ga::{blades_of_grade, Frame, Multivector, ProductKind};

pub use bridge::{bridge_lhs_directional, bridge_lhs_star, classical_partials, classical_partials_with, lifted_eval};

/// `t ↦ F[t(A¹),…,t(A^k)]` for `t ∈ ext_p^q(V)`.
#[derive(Debug, Clone, PartialEq)]
pub struct InducedFunctional {
    f: MvFunction,
    anchors: Vec<Multivector>,
    p: usize,
}

impl InducedFunctional {
    /// Anchors must all be homogeneous of grade `p` and match `f`'s arity.
    /// Repeated anchors are allowed; each occupies its own variable slot.
    pub fn new(f: MvFunction, anchors: Vec<Multivector>, p: usize) -> Result<Self> {
        if anchors.is_empty() {
            return Err(Error::InvalidArgument(
                "an induced functional needs at least one anchor".into(),
            ));
        }
        if anchors.len() != f.arity() {
            return Err(Error::ArityMismatch {
                expected: f.arity(),
                found: anchors.len(),
            });
        }
        let dim = anchors[0].dim();
        for g in [p, f.input_grade()] {
            if g > dim {
                return Err(Error::GradeOutOfRange { grade: g, dim });
            }
        }
        for a in &anchors {
            if !a.same_metric(&anchors[0]) {
                return Err(Error::MetricMismatch);
            }
            if !a.is_grade(p) {
                return Err(Error::NotHomogeneous { expected: p });
            }
        }
        Ok(Self { f, anchors, p })
    }

    pub fn function(&self) -> &MvFunction {
        &self.f
    }

    pub fn anchors(&self) -> &[Multivector] {
        &self.anchors
    }

    /// `(p, q)`: the extensor signature this functional accepts.
    pub fn signature(&self) -> (usize, usize) {
        (self.p, self.f.input_grade())
    }

    fn metric_matches(&self, m: &Multivector) -> bool {
        m.same_metric(&self.anchors[0])
    }

    /// `(t(A¹),…,t(A^k))`.
    pub fn arguments(&self, t: &Extensor) -> Result<Vec<Multivector>> {
        let (p, q) = self.signature();
        if t.p() != p || t.q() != q {
            return Err(Error::SignatureMismatch {
                expected_p: p,
                expected_q: q,
                found_p: t.p(),
                found_q: t.q(),
            });
        }
        self.anchors.iter().map(|a| t.apply(a)).collect()
    }

    pub fn evaluate(&self, t: &Extensor) -> Result<Multivector> {
        let args = self.arguments(t)?;
        self.f.eval(&args)
    }

    /// `∂_{X^i} F` at `(t(A¹),…,t(A^k))` for the slots with `weights[i] != 0`.
    fn partials(
        &self,
        args: &[Multivector],
        frame: &Frame,
        method: DerivMethod,
        wanted: impl Fn(usize) -> bool,
    ) -> Result<Vec<Option<Multivector>>> {
        (0..self.anchors.len())
            .map(|i| {
                if wanted(i) {
                    grad_star_in(&self.f, args, i, ProductKind::Geometric, frame, method).map(Some)
                } else {
                    Ok(None)
                }
            })
            .collect()
    }

    /// `A·∂_t F[…]`, exact.
    pub fn a_dot_dt(&self, t: &Extensor, direction: &Multivector) -> Result<Multivector> {
        self.a_dot_dt_with(t, direction, DerivMethod::Exact)
    }

    pub fn a_dot_dt_with(&self, t: &Extensor, direction: &Multivector, method: DerivMethod) -> Result<Multivector> {
        let frame = Frame::standard(self.anchors[0].metric());
        self.a_dot_dt_in(t, direction, &frame, method)
    }

    /// `A·∂_t F[…]` with the partials `∂_{X^i} F` assembled over `frame`.
    pub fn a_dot_dt_in(
        &self,
        t: &Extensor,
        direction: &Multivector,
        frame: &Frame,
        method: DerivMethod,
    ) -> Result<Multivector> {
        if !self.metric_matches(direction) {
            return Err(Error::MetricMismatch);
        }
        if !direction.is_grade(self.p) {
            return Err(Error::NotHomogeneous { expected: self.p });
        }
        let args = self.arguments(t)?;
        if direction.is_zero() {
            return Ok(Multivector::zero(direction.metric()));
        }
        let weights: Vec<f64> = self.anchors.iter().map(|a| direction.scalar_product(a)).collect();
        let partials = self.partials(&args, frame, method, |i| weights[i] != 0.0)?;
        let mut acc = Multivector::zero(direction.metric());
        for (w, d) in weights.iter().zip(partials) {
            if let Some(d) = d {
                acc += &d.scale(*w);
            }
        }
        Ok(acc)
    }

    /// `∂_t * F[…] = Σ_i A^i * ∂_{X^i} F[…]`, exact.
    pub fn dt_star(&self, t: &Extensor, kind: ProductKind) -> Result<Multivector> {
        self.dt_star_with(t, kind, DerivMethod::Exact)
    }

    pub fn dt_star_with(&self, t: &Extensor, kind: ProductKind, method: DerivMethod) -> Result<Multivector> {
        let args = self.arguments(t)?;
        let frame = Frame::standard(self.anchors[0].metric());
        let partials = self.partials(&args, &frame, method, |i| !self.anchors[i].is_zero())?;
        let mut acc = Multivector::zero(self.anchors[0].metric());
        for (a, d) in self.anchors.iter().zip(partials) {
            if let Some(d) = d {
                acc += &a.product(kind, &d)?;
            }
        }
        Ok(acc)
    }

    /// `∂_t * F[…] = Σ_J f^J * (f_J·∂_t F[…])` over the grade-`p` blades of `frame`.
    pub fn dt_star_via_frame(&self, t: &Extensor, kind: ProductKind, frame: &Frame) -> Result<Multivector> {
        self.dt_star_via_frame_with(t, kind, frame, DerivMethod::Exact)
    }

    pub fn dt_star_via_frame_with(
        &self,
        t: &Extensor,
        kind: ProductKind,
        frame: &Frame,
        method: DerivMethod,
    ) -> Result<Multivector> {
        if **frame.metric() != **self.anchors[0].metric() {
            return Err(Error::MetricMismatch);
        }
        if frame.duality_defect() > 1e-8 {
            return Err(Error::DegenerateFrame);
        }
        let mut acc = Multivector::zero(frame.metric());
        for blade in blades_of_grade(frame.dim(), self.p) {
            let d = self.a_dot_dt_in(t, &frame.blade(blade), frame, method)?;
            acc += &frame.reciprocal_blade(blade).product(kind, &d)?;
        }
        Ok(acc)
    }

    /// `t ↦ λ F[…]`.
    pub fn scaled(&self, lambda: f64) -> Self {
        self.with_expr(self.f.expr().clone().scaled(lambda))
    }

    /// `t ↦ F[…] M`.
    pub fn times_right(&self, m: &Multivector) -> Result<Self> {
        if !self.metric_matches(m) {
            return Err(Error::MetricMismatch);
        }
        Ok(self.with_expr(self.f.expr().clone().gp(Expr::constant(m.clone()))))
    }

    /// `t ↦ φ(F[…])`, with `φ` applied to the scalar part.
    pub fn mapped(&self, phi: ScalarMap) -> Self {
        self.with_expr(self.f.expr().clone().map(phi))
    }

    /// `t ↦ F[…] + G[…]`. The anchor lists are concatenated.
    pub fn plus(&self, other: &Self) -> Result<Self> {
        self.combine(other, |a, b| a + b)
    }

    /// `t ↦ F[…] G[…]` (geometric product; the scalar-times-r-vector case of
    /// the Leibniz rule when `F` is scalar-valued).
    pub fn times(&self, other: &Self) -> Result<Self> {
        self.combine(other, Expr::gp)
    }

    fn combine(&self, other: &Self, op: impl FnOnce(Expr, Expr) -> Expr) -> Result<Self> {
        if self.signature() != other.signature() {
            let (p, q) = self.signature();
            let (op_, oq) = other.signature();
            return Err(Error::SignatureMismatch {
                expected_p: p,
                expected_q: q,
                found_p: op_,
                found_q: oq,
            });
        }
        if !self.metric_matches(&other.anchors[0]) {
            return Err(Error::MetricMismatch);
        }
        let k = self.anchors.len();
        let expr = op(self.f.expr().clone(), other.f.expr().shift_vars(k));
        let mut anchors = self.anchors.clone();
        anchors.extend(other.anchors.iter().cloned());
        let f = MvFunction::new(anchors.len(), self.f.input_grade(), expr)?;
        InducedFunctional::new(f, anchors, self.p)
    }

    fn with_expr(&self, expr: Expr) -> Self {
        Self {
            f: MvFunction::new(self.f.arity(), self.f.input_grade(), expr).expect("same variables"),
            anchors: self.anchors.clone(),
            p: self.p,
        }
    }
}
