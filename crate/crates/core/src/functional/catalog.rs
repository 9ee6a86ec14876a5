//! Ready-made induced functionals of (1,1)-extensors.
//!
//! Functionals that are defined through a frame sum (`h†(b)`, `tr`, `biv`,
//! `h̲(I)`, `det`) take the frame explicitly and use its reciprocal vectors as
//! anchors; their values do not depend on the frame chosen.

use crate::calculus::MvFunction;
use crate::error::Result;
use crate::expr::Expr;
use crate::ga::{BasisBlade, Frame, Multivector};

use super::InducedFunctional;

fn induced(arity: usize, expr: Expr, anchors: Vec<Multivector>) -> InducedFunctional {
    let f = MvFunction::new(arity, 1, expr).expect("catalog expressions use declared variables");
    InducedFunctional::new(f, anchors, 1).expect("catalog anchors are vectors")
}

fn wedge_of_vars(k: usize) -> Expr {
    (1..k).fold(Expr::var(0), |acc, i| acc.wedge(Expr::var(i)))
}

/// `h ↦ h(b)`.
pub fn image(b: &Multivector) -> InducedFunctional {
    induced(1, Expr::var(0), vec![b.clone()])
}

/// `h ↦ h(b)·h(c)`.
pub fn dot_of_images(b: &Multivector, c: &Multivector) -> InducedFunctional {
    induced(2, Expr::var(0).dot(Expr::var(1)), vec![b.clone(), c.clone()])
}

/// `h ↦ h(b)∧h(c)`.
pub fn wedge_of_images(b: &Multivector, c: &Multivector) -> InducedFunctional {
    induced(2, Expr::var(0).wedge(Expr::var(1)), vec![b.clone(), c.clone()])
}

/// `h ↦ h̲(a¹∧…∧a^k) = h(a¹)∧…∧h(a^k)`.
pub fn outer_image(factors: &[Multivector]) -> InducedFunctional {
    induced(factors.len(), wedge_of_vars(factors.len()), factors.to_vec())
}

/// `t ↦ t(a)·c`.
pub fn image_dot(a: &Multivector, c: &Multivector) -> InducedFunctional {
    induced(1, Expr::var(0).dot(Expr::constant(c.clone())), vec![a.clone()])
}

/// `h ↦ h†(b) = Σ_j (b·h(e^j)) e_j`.
pub fn adjoint_image(b: &Multivector, frame: &Frame) -> InducedFunctional {
    let expr = frame
        .vectors()
        .iter()
        .enumerate()
        .map(|(j, ej)| {
            Expr::constant(b.clone())
                .dot(Expr::var(j))
                .gp(Expr::constant(ej.clone()))
        })
        .reduce(|a, b| a + b)
        .expect("frame is nonempty");
    induced(frame.dim(), expr, frame.reciprocal().to_vec())
}

/// `t ↦ tr[t] = Σ_j t(e^j)·e_j`.
pub fn trace(frame: &Frame) -> InducedFunctional {
    let expr = frame
        .vectors()
        .iter()
        .enumerate()
        .map(|(j, ej)| Expr::var(j).dot(Expr::constant(ej.clone())))
        .reduce(|a, b| a + b)
        .expect("frame is nonempty");
    induced(frame.dim(), expr, frame.reciprocal().to_vec())
}

/// `t ↦ biv[t] = Σ_j t(e^j)∧e_j`.
pub fn bivector(frame: &Frame) -> InducedFunctional {
    let expr = frame
        .vectors()
        .iter()
        .enumerate()
        .map(|(j, ej)| Expr::var(j).wedge(Expr::constant(ej.clone())))
        .reduce(|a, b| a + b)
        .expect("frame is nonempty");
    induced(frame.dim(), expr, frame.reciprocal().to_vec())
}

/// `h ↦ h̲(I)` through the expansion `I = (I·(e_1∧…∧e_n)) e^1∧…∧e^n`.
pub fn pseudoscalar_image(pseudo: &Multivector, frame: &Frame) -> InducedFunctional {
    let n = frame.dim();
    let top = frame.blade(BasisBlade((1 << n) - 1));
    let weight = pseudo.scalar_product(&top);
    induced(n, wedge_of_vars(n).scaled(weight), frame.reciprocal().to_vec())
}

/// `h ↦ det[h] = <h̲(I) I⁻¹>_0` for a nonzero pseudoscalar `I`.
pub fn determinant_with(pseudo: &Multivector, frame: &Frame) -> Result<InducedFunctional> {
    let inv = pseudo.versor_inverse()?;
    let base = pseudoscalar_image(pseudo, frame);
    let expr = base.function().expr().clone().gp(Expr::constant(inv)).grade(0);
    Ok(induced(frame.dim(), expr, frame.reciprocal().to_vec()))
}

/// `h ↦ det[h]` against the unit pseudoscalar.
pub fn determinant(frame: &Frame) -> InducedFunctional {
    determinant_with(&Multivector::pseudoscalar(frame.metric()), frame).expect("unit pseudoscalar is invertible")
}
