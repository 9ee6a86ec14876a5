//! Dense multivectors over a diagonal metric.
//!
//! Coefficients are stored in a `2^n` array indexed by generator bitmask, so
//! `coeffs[0b101]` is the coefficient of `e1∧e3`. This index order is a
//! stable contract: extensor matrices and serialized records rely on it.
//!
//! Product conventions, for homogeneous `A` of grade `r` and `B` of grade `s`:
//!
//! ```text
//! A ∧ B = <A B>_{r+s}
//! A · B = <rev(A) B>_0        if r == s, else 0
//! A ⌟ B = <rev(A) B>_{s-r}    if r <= s, else 0
//! ```
//!
//! all extended bilinearly. With this normalization `E · E = 1` for any unit
//! Euclidean blade and `e^J · e_K = δ^J_K` for wedges of reciprocal frames.

use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};
use std::sync::Arc;

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::blade::{blades_of_grade, reorder_sign, reverse_sign, BasisBlade};
use super::metric::Metric;
use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// The four products a derivative operator can be built from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ProductKind {
    Geometric,
    Wedge,
    Scalar,
    Lcontract,
}

impl ProductKind {
    pub const ALL: [ProductKind; 4] = [
        ProductKind::Wedge,
        ProductKind::Scalar,
        ProductKind::Lcontract,
        ProductKind::Geometric,
    ];

    pub fn name(self) -> &'static str {
        match self {
            ProductKind::Geometric => "geometric",
            ProductKind::Wedge => "wedge",
            ProductKind::Scalar => "scalar",
            ProductKind::Lcontract => "lcontract",
        }
    }
}

impl fmt::Display for ProductKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Result blade and real factor of `e_a * e_b`, or `None` when the product vanishes.
#[inline]
pub(crate) fn blade_product(kind: ProductKind, metric: &Metric, a: usize, b: usize) -> Option<(usize, f64)> {
    match kind {
        ProductKind::Geometric => Some((a ^ b, reorder_sign(a, b) * metric.blade_square(a & b))),
        ProductKind::Wedge => (a & b == 0).then(|| (a | b, reorder_sign(a, b))),
        ProductKind::Scalar => (a == b).then(|| (0, reverse_sign(a) * reorder_sign(a, a) * metric.blade_square(a))),
        ProductKind::Lcontract => {
            (a & !b == 0).then(|| (a ^ b, reverse_sign(a) * reorder_sign(a, b) * metric.blade_square(a)))
        }
    }
}

#[derive(Clone, PartialEq)]
pub struct Multivector<S = f64> {
    metric: Arc<Metric>,
    coeffs: Vec<S>,
}

impl<S: Scalar> Multivector<S> {
    pub fn zero(metric: &Arc<Metric>) -> Self {
        Self {
            metric: Arc::clone(metric),
            coeffs: vec![S::zero(); metric.size()],
        }
    }

    pub fn from_scalar(metric: &Arc<Metric>, value: S) -> Self {
        let mut mv = Self::zero(metric);
        mv.coeffs[0] = value;
        mv
    }

    pub fn from_coeffs(metric: &Arc<Metric>, coeffs: Vec<S>) -> Result<Self> {
        if coeffs.len() != metric.size() {
            return Err(Error::DimensionMismatch {
                expected: metric.size(),
                found: coeffs.len(),
            });
        }
        Ok(Self {
            metric: Arc::clone(metric),
            coeffs,
        })
    }

    /// `value · blade`.
    pub fn from_blade(metric: &Arc<Metric>, blade: BasisBlade, value: S) -> Self {
        let mut mv = Self::zero(metric);
        mv.coeffs[blade.mask()] = value;
        mv
    }

    pub fn metric(&self) -> &Arc<Metric> {
        &self.metric
    }

    pub fn dim(&self) -> usize {
        self.metric.dim()
    }

    pub fn coeffs(&self) -> &[S] {
        &self.coeffs
    }

    pub fn coeff(&self, blade: BasisBlade) -> S {
        self.coeffs[blade.mask()]
    }

    pub fn set_coeff(&mut self, blade: BasisBlade, value: S) {
        self.coeffs[blade.mask()] = value;
    }

    pub fn scalar_part(&self) -> S {
        self.coeffs[0]
    }

    pub fn same_metric(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.metric, &other.metric) || *self.metric == *other.metric
    }

    fn check_metric(&self, other: &Self) -> Result<()> {
        if self.same_metric(other) {
            Ok(())
        } else {
            Err(Error::MetricMismatch)
        }
    }

    pub fn map<T: Scalar>(&self, f: impl Fn(S) -> T) -> Multivector<T> {
        Multivector {
            metric: Arc::clone(&self.metric),
            coeffs: self.coeffs.iter().map(|c| f(*c)).collect(),
        }
    }

    /// Real parts of the coefficients.
    pub fn values(&self) -> Multivector<f64> {
        self.map(|c| c.value())
    }

    pub fn scale(&self, k: f64) -> Self {
        self.map(|c| c.scale(k))
    }

    pub fn scale_by(&self, k: S) -> Self {
        self.map(|c| c * k)
    }

    /// Grade-`r` part. Errors when `r > n`.
    pub fn grade_project(&self, r: usize) -> Result<Self> {
        if r > self.dim() {
            return Err(Error::GradeOutOfRange {
                grade: r,
                dim: self.dim(),
            });
        }
        Ok(self.grade_part(r))
    }

    /// Grade-`r` part; zero when `r` exceeds the dimension.
    pub fn grade_part(&self, r: usize) -> Self {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(m, c)| if m.count_ones() as usize == r { *c } else { S::zero() })
            .collect();
        Self {
            metric: Arc::clone(&self.metric),
            coeffs,
        }
    }

    /// True when every coefficient outside grade `r` is exactly zero.
    pub fn is_grade(&self, r: usize) -> bool {
        self.coeffs
            .iter()
            .enumerate()
            .all(|(m, c)| m.count_ones() as usize == r || c.is_zero())
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    pub fn reverse(&self) -> Self {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(m, c)| c.scale(reverse_sign(m)))
            .collect();
        Self {
            metric: Arc::clone(&self.metric),
            coeffs,
        }
    }

    /// Checked product of the given kind.
    pub fn product(&self, kind: ProductKind, other: &Self) -> Result<Self> {
        self.check_metric(other)?;
        Ok(self.product_unchecked(kind, other))
    }

    fn product_unchecked(&self, kind: ProductKind, other: &Self) -> Self {
        let mut out = vec![S::zero(); self.coeffs.len()];
        for (a, ca) in self.coeffs.iter().enumerate() {
            if ca.is_zero() {
                continue;
            }
            for (b, cb) in other.coeffs.iter().enumerate() {
                if cb.is_zero() {
                    continue;
                }
                if let Some((m, f)) = blade_product(kind, &self.metric, a, b) {
                    out[m] += (*ca * *cb).scale(f);
                }
            }
        }
        Self {
            metric: Arc::clone(&self.metric),
            coeffs: out,
        }
    }

    fn product_or_panic(&self, kind: ProductKind, other: &Self) -> Self {
        assert!(
            self.same_metric(other),
            "{kind} product of multivectors over different metrics"
        );
        self.product_unchecked(kind, other)
    }

    /// Geometric product. Panics on metric mismatch; see [`Multivector::product`].
    pub fn gp(&self, other: &Self) -> Self {
        self.product_or_panic(ProductKind::Geometric, other)
    }

    pub fn wedge(&self, other: &Self) -> Self {
        self.product_or_panic(ProductKind::Wedge, other)
    }

    pub fn dot(&self, other: &Self) -> Self {
        self.product_or_panic(ProductKind::Scalar, other)
    }

    pub fn lc(&self, other: &Self) -> Self {
        self.product_or_panic(ProductKind::Lcontract, other)
    }

    pub fn norm_inf(&self) -> f64 {
        self.coeffs.iter().map(|c| c.value().abs()).fold(0.0, f64::max)
    }
}

impl Multivector<f64> {
    /// Grade-1 element `Σ_k v[k] e_k`.
    pub fn vector(metric: &Arc<Metric>, v: &[f64]) -> Result<Self> {
        if v.len() != metric.dim() {
            return Err(Error::DimensionMismatch {
                expected: metric.dim(),
                found: v.len(),
            });
        }
        let mut mv = Self::zero(metric);
        for (k, x) in v.iter().enumerate() {
            mv.coeffs[1 << k] = *x;
        }
        Ok(mv)
    }

    /// Generator `e_k` (0-based `k`).
    pub fn basis_vector(metric: &Arc<Metric>, k: usize) -> Self {
        Self::from_blade(metric, BasisBlade(1 << k), 1.0)
    }

    /// Unit pseudoscalar `e1 ∧ … ∧ en`.
    pub fn pseudoscalar(metric: &Arc<Metric>) -> Self {
        Self::from_blade(metric, BasisBlade(metric.size() - 1), 1.0)
    }

    /// Components `v·e^k` of the grade-1 part in the standard basis.
    pub fn vector_components(&self) -> Vec<f64> {
        (0..self.dim()).map(|k| self.coeffs[1 << k]).collect()
    }

    /// Lifts real coefficients into another scalar field.
    pub fn lift<T: Scalar>(&self) -> Multivector<T> {
        self.map(T::from_f64)
    }

    pub fn scalar_product(&self, other: &Self) -> f64 {
        self.dot(other).scalar_part()
    }

    /// Inverse of a versor-like element `A` with `A rev(A)` scalar and nonzero.
    pub fn versor_inverse(&self) -> Result<Self> {
        let rev = self.reverse();
        let norm = self.gp(&rev);
        let n2 = norm.scalar_part();
        let residue = norm.coeffs[1..].iter().fold(0.0f64, |m, c| m.max(c.abs()));
        if n2 == 0.0 || residue > 1e-12 * n2.abs().max(1.0) {
            return Err(Error::NotInvertible);
        }
        Ok(rev.scale(1.0 / n2))
    }

    /// `‖self - other‖∞`.
    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        self.coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max)
    }

    /// Uniform coefficients in `[-1, 1]` on the grade-`grade` blades.
    pub fn random<R: Rng + ?Sized>(metric: &Arc<Metric>, grade: usize, rng: &mut R) -> Result<Self> {
        if grade > metric.dim() {
            return Err(Error::GradeOutOfRange {
                grade,
                dim: metric.dim(),
            });
        }
        let mut mv = Self::zero(metric);
        for b in blades_of_grade(metric.dim(), grade) {
            mv.coeffs[b.mask()] = rng.random_range(-1.0..=1.0);
        }
        Ok(mv)
    }

    /// Uniform coefficients in `[-1, 1]` on every blade.
    pub fn random_mixed<R: Rng + ?Sized>(metric: &Arc<Metric>, rng: &mut R) -> Self {
        let mut mv = Self::zero(metric);
        for c in mv.coeffs.iter_mut() {
            *c = rng.random_range(-1.0..=1.0);
        }
        mv
    }
}

/// Deterministic random homogeneous multivector for a given seed.
pub fn random_multivector(metric: &Arc<Metric>, grade: usize, seed: u64) -> Result<Multivector> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    Multivector::random(metric, grade, &mut rng)
}

/// Checked product; errors when the operands live over different metrics.
pub fn product<S: Scalar>(kind: ProductKind, a: &Multivector<S>, b: &Multivector<S>) -> Result<Multivector<S>> {
    a.product(kind, b)
}

pub fn grade_project<S: Scalar>(a: &Multivector<S>, r: usize) -> Result<Multivector<S>> {
    a.grade_project(r)
}

pub fn reverse<S: Scalar>(a: &Multivector<S>) -> Multivector<S> {
    a.reverse()
}

impl<S: Scalar> fmt::Debug for Multivector<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_map()
            .entries(
                self.coeffs
                    .iter()
                    .enumerate()
                    .filter(|(_, c)| !c.is_zero())
                    .map(|(m, c)| (BasisBlade(m).to_string(), c)),
            )
            .finish()
    }
}

impl<S: Scalar> AddAssign<&Multivector<S>> for Multivector<S> {
    fn add_assign(&mut self, rhs: &Multivector<S>) {
        assert!(self.same_metric(rhs), "sum of multivectors over different metrics");
        for (a, b) in self.coeffs.iter_mut().zip(&rhs.coeffs) {
            *a += *b;
        }
    }
}

impl<S: Scalar> SubAssign<&Multivector<S>> for Multivector<S> {
    fn sub_assign(&mut self, rhs: &Multivector<S>) {
        assert!(
            self.same_metric(rhs),
            "difference of multivectors over different metrics"
        );
        for (a, b) in self.coeffs.iter_mut().zip(&rhs.coeffs) {
            *a -= *b;
        }
    }
}

impl<S: Scalar> Add for &Multivector<S> {
    type Output = Multivector<S>;
    fn add(self, rhs: Self) -> Multivector<S> {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl<S: Scalar> Add for Multivector<S> {
    type Output = Multivector<S>;
    fn add(mut self, rhs: Self) -> Multivector<S> {
        self += &rhs;
        self
    }
}

impl<S: Scalar> Sub for &Multivector<S> {
    type Output = Multivector<S>;
    fn sub(self, rhs: Self) -> Multivector<S> {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl<S: Scalar> Sub for Multivector<S> {
    type Output = Multivector<S>;
    fn sub(mut self, rhs: Self) -> Multivector<S> {
        self -= &rhs;
        self
    }
}

impl<S: Scalar> Neg for &Multivector<S> {
    type Output = Multivector<S>;
    fn neg(self) -> Multivector<S> {
        self.map(|c| -c)
    }
}

impl<S: Scalar> Neg for Multivector<S> {
    type Output = Multivector<S>;
    fn neg(self) -> Multivector<S> {
        -&self
    }
}

/// Geometric product.
impl<S: Scalar> Mul for &Multivector<S> {
    type Output = Multivector<S>;
    fn mul(self, rhs: Self) -> Multivector<S> {
        self.gp(rhs)
    }
}

impl Mul<&Multivector<f64>> for f64 {
    type Output = Multivector<f64>;
    fn mul(self, rhs: &Multivector<f64>) -> Multivector<f64> {
        rhs.scale(self)
    }
}

impl Mul<Multivector<f64>> for f64 {
    type Output = Multivector<f64>;
    fn mul(self, rhs: Multivector<f64>) -> Multivector<f64> {
        rhs.scale(self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn e3() -> Arc<Metric> {
        Arc::new(Metric::euclidean(3).unwrap())
    }

    fn e(m: &Arc<Metric>, label: &str) -> Multivector {
        Multivector::from_blade(m, BasisBlade::parse(label, m.dim()).unwrap(), 1.0)
    }

    #[test]
    fn generator_squares_to_metric() {
        let m = e3();
        let e1 = e(&m, "e1");
        assert_eq!(e1.gp(&e1), Multivector::from_scalar(&m, 1.0));
        let g = Arc::new(Metric::new(vec![1.0, -1.0, 2.0]).unwrap());
        assert_eq!(e(&g, "e2").gp(&e(&g, "e2")).scalar_part(), -1.0);
        assert_eq!(e(&g, "e3").gp(&e(&g, "e3")).scalar_part(), 2.0);
    }

    #[test]
    fn wedge_of_equal_vectors_vanishes() {
        let m = e3();
        assert!(e(&m, "e1").wedge(&e(&m, "e1")).is_zero());
    }

    #[test]
    fn geometric_of_sum_and_difference() {
        let m = e3();
        let a = &e(&m, "e1") + &e(&m, "e2");
        let b = &e(&m, "e1") - &e(&m, "e2");
        assert_eq!(a.gp(&b), e(&m, "e12").scale(-2.0));
    }

    #[test]
    fn scalar_product_of_unit_bivector_is_one() {
        let m = e3();
        assert_eq!(e(&m, "e12").dot(&e(&m, "e12")), Multivector::from_scalar(&m, 1.0));
        assert_eq!(e(&m, "e123").scalar_product(&e(&m, "e123")), 1.0);
        // different grades
        assert!(e(&m, "e1").dot(&e(&m, "e12")).is_zero());
    }

    #[test]
    fn lcontract_vector_into_bivector() {
        let m = e3();
        assert_eq!(e(&m, "e1").lc(&e(&m, "e12")), e(&m, "e2"));
        assert_eq!(e(&m, "e2").lc(&e(&m, "e12")), -e(&m, "e1"));
        // higher into lower grade vanishes
        assert!(e(&m, "e12").lc(&e(&m, "e1")).is_zero());
    }

    #[test]
    fn grade_projection_examples() {
        let m = e3();
        let a = &(&Multivector::from_scalar(&m, 3.0) + &e(&m, "e1").scale(2.0)) + &e(&m, "e12");
        assert_eq!(a.grade_project(1).unwrap(), e(&m, "e1").scale(2.0));
        assert_eq!(e(&m, "e12").grade_project(2).unwrap(), e(&m, "e12"));
        assert!(e(&m, "e123").grade_project(2).unwrap().is_zero());
        assert!(matches!(
            a.grade_project(4),
            Err(Error::GradeOutOfRange { grade: 4, dim: 3 })
        ));
    }

    #[test]
    fn reverse_signs() {
        let m = e3();
        assert_eq!(e(&m, "e1").reverse(), e(&m, "e1"));
        assert_eq!(e(&m, "e12").reverse(), -e(&m, "e12"));
        assert_eq!(e(&m, "e123").reverse(), -e(&m, "e123"));
    }

    #[test]
    fn mismatched_metrics_error() {
        let a = Multivector::basis_vector(&e3(), 0);
        let other = Arc::new(Metric::new(vec![1.0, 1.0, -1.0]).unwrap());
        let b = Multivector::basis_vector(&other, 0);
        assert_eq!(product(ProductKind::Wedge, &a, &b), Err(Error::MetricMismatch));
        // equal-by-value metrics behind different Arcs are fine
        let c = Multivector::basis_vector(&e3(), 1);
        assert!(product(ProductKind::Geometric, &a, &c).is_ok());
    }

    #[test]
    fn random_is_deterministic_and_homogeneous() {
        let m = e3();
        let a = random_multivector(&m, 1, 42).unwrap();
        let b = random_multivector(&m, 1, 42).unwrap();
        assert_eq!(a, b);
        let c = random_multivector(&m, 2, 7).unwrap();
        assert_eq!(c.grade_project(2).unwrap(), c);
        let s = random_multivector(&m, 0, 9).unwrap();
        assert!(s.is_grade(0));
        assert!(random_multivector(&m, 4, 0).is_err());
    }

    #[test]
    fn pseudoscalar_inverse() {
        let m = Arc::new(Metric::new(vec![1.0, -1.0, 2.0]).unwrap());
        let i = Multivector::pseudoscalar(&m).scale(3.0);
        let inv = i.versor_inverse().unwrap();
        let one = i.gp(&inv);
        assert!(one.max_abs_diff(&Multivector::from_scalar(&m, 1.0)) < 1e-15);
        let mixed = &e(&m, "e1") + &e(&m, "e12");
        // (e1 + e12) rev(e1 + e12) has a vector part
        assert_eq!(mixed.versor_inverse(), Err(Error::NotInvertible));
    }
}
