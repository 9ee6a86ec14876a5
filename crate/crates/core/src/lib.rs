//! Calculus of multivector functionals of extensors.
//!
//! The crate is layered bottom-up:
//!
//! * [`ga`] — dense multivectors over a diagonal metric, the four products
//!   (geometric, wedge, scalar, left contraction), frames and reciprocal frames;
//! * [`extensor`] — linear maps `Λ^p V → Λ^q V`, adjoint, outermorphism,
//!   trace, bivector, determinant and inverse;
//! * [`calculus`] — exact directional derivatives of multivector functions by
//!   tangent propagation, the `∂_X *` family and a finite-difference oracle;
//! * [`functional`] — induced functionals `t ↦ F[t(A¹),…,t(A^k)]`, the
//!   `A·∂_t` directional derivative, the curl / divergence / gradient operators
//!   `∂_t *`, and the bridge to ordinary partials in matrix components.

pub mod calculus;
pub mod error;
pub mod expr;
pub mod extensor;
pub mod functional;
pub mod ga;
pub mod random;
pub mod scalar;

pub use calculus::{derivative, dir_deriv, fd_dir_deriv, grad_star, grad_star_in, DerivMethod, MvFunction};
pub use error::{Error, Result};
pub use expr::{Expr, ScalarMap};
pub use extensor::{compose, outermorphism_apply, Extensor, ExtensorRecord, Outermorphism};
pub use functional::InducedFunctional;
pub use ga::{
    blade_basis, product, random_multivector, reciprocal_frame, BasisBlade, Frame, Metric, Multivector, ProductKind,
};
pub use scalar::{DiffScalar, Scalar};
