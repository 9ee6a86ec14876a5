//! Ordinary partial derivatives in the matrix components of `t`.
//!
//! For a scalar functional `t ↦ Φ[t(a¹)]` of a (1,1)-extensor, the lifted real
//! function `Φ̂(t_11,…,t_nn) = Φ[t_ij (a¹·e^i) e^j]` with `t_ij = t(e_i)·e_j`
//! has partials
//!
//! ```text
//! ∂Φ̂/∂t_pq = (a¹·e^p) e^q·∂_{t(a¹)} Φ[t(a¹)]
//! ```
//!
//! and summing them against the frame recovers both `a·∂_t Φ` and `∂_t * Φ`.

use nalgebra::DMatrix;

use super::InducedFunctional;
use crate::calculus::{grad_star_in, DerivMethod};
use crate::error::{Error, Result};
use crate::extensor::Extensor;
use crate::ga::{Frame, Multivector, ProductKind};

fn require_scalar_vector_functional(phi: &InducedFunctional) -> Result<()> {
    if phi.anchors().len() != 1 {
        return Err(Error::ArityMismatch {
            expected: 1,
            found: phi.anchors().len(),
        });
    }
    let (p, q) = phi.signature();
    if (p, q) != (1, 1) {
        return Err(Error::SignatureMismatch {
            expected_p: 1,
            expected_q: 1,
            found_p: p,
            found_q: q,
        });
    }
    Ok(())
}

/// `Φ̂(T) = Φ[Σ_ij T_ij (a¹·e^i) e^j]`.
pub fn lifted_eval(phi: &InducedFunctional, components: &DMatrix<f64>, frame: &Frame) -> Result<f64> {
    require_scalar_vector_functional(phi)?;
    let n = frame.dim();
    if components.nrows() != n || components.ncols() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            found: components.nrows().max(components.ncols()),
        });
    }
    let a1 = &phi.anchors()[0];
    let mut x = Multivector::zero(frame.metric());
    for i in 0..n {
        let w = a1.scalar_product(&frame.reciprocal()[i]);
        for j in 0..n {
            x += &frame.reciprocal()[j].scale(components[(i, j)] * w);
        }
    }
    let value = phi.function().eval(&[x])?;
    if !value.is_grade(0) {
        return Err(Error::NotScalar);
    }
    Ok(value.scalar_part())
}

/// `∂Φ̂/∂t_pq` for a scalar functional with one vector anchor, exact.
pub fn classical_partials(phi: &InducedFunctional, t: &Extensor, frame: &Frame) -> Result<DMatrix<f64>> {
    classical_partials_with(phi, t, frame, DerivMethod::Exact)
}

pub fn classical_partials_with(
    phi: &InducedFunctional,
    t: &Extensor,
    frame: &Frame,
    method: DerivMethod,
) -> Result<DMatrix<f64>> {
    require_scalar_vector_functional(phi)?;
    let args = phi.arguments(t)?;
    if !phi.function().eval(&args)?.is_grade(0) {
        return Err(Error::NotScalar);
    }
    let grad = grad_star_in(phi.function(), &args, 0, ProductKind::Geometric, frame, method)?;
    let a1 = &phi.anchors()[0];
    let n = frame.dim();
    let along: Vec<f64> = frame.reciprocal().iter().map(|r| a1.scalar_product(r)).collect();
    let across: Vec<f64> = frame.reciprocal().iter().map(|r| r.scalar_product(&grad)).collect();
    Ok(DMatrix::from_fn(n, n, |p, q| along[p] * across[q]))
}

/// `Σ_pq (a·e_p) e_q ∂Φ̂/∂t_pq`, which equals `a·∂_t Φ[t(a¹)]`.
pub fn bridge_lhs_directional(partials: &DMatrix<f64>, a: &Multivector, frame: &Frame) -> Result<Multivector> {
    let n = frame.dim();
    if partials.nrows() != n || partials.ncols() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            found: partials.nrows().max(partials.ncols()),
        });
    }
    if !a.is_grade(1) {
        return Err(Error::NotHomogeneous { expected: 1 });
    }
    let mut acc = Multivector::zero(frame.metric());
    for (p, ep) in frame.vectors().iter().enumerate() {
        let w = a.scalar_product(ep);
        if w == 0.0 {
            continue;
        }
        for (q, eq) in frame.vectors().iter().enumerate() {
            acc += &eq.scale(w * partials[(p, q)]);
        }
    }
    Ok(acc)
}

/// `Σ_pq e_p * (e_q ∂Φ̂/∂t_pq)`, which equals `∂_t * Φ[t(a¹)]`.
pub fn bridge_lhs_star(partials: &DMatrix<f64>, kind: ProductKind, frame: &Frame) -> Result<Multivector> {
    let n = frame.dim();
    if partials.nrows() != n || partials.ncols() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            found: partials.nrows().max(partials.ncols()),
        });
    }
    let mut acc = Multivector::zero(frame.metric());
    for (p, ep) in frame.vectors().iter().enumerate() {
        let mut inner = Multivector::zero(frame.metric());
        for (q, eq) in frame.vectors().iter().enumerate() {
            inner += &eq.scale(partials[(p, q)]);
        }
        acc += &ep.product(kind, &inner)?;
    }
    Ok(acc)
}
