//! Multivector algebra over a diagonal metric.

mod blade;
mod frame;
mod metric;
mod multivector;

pub use blade::{blade_basis, BasisBlade};
pub use frame::{reciprocal_frame, Frame};
pub use metric::{Metric, MAX_DIM, MIN_DIM};
pub use multivector::{grade_project, product, random_multivector, reverse, Multivector, ProductKind};

pub(crate) use blade::{binomial, blades_of_grade, index_in_grade};
