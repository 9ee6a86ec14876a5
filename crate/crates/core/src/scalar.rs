//! Coefficient fields for multivectors.
//!
//! Every algebraic routine is generic over [`Scalar`], so the same code path
//! evaluates a function on plain `f64` coefficients or on [`DiffScalar`]
//! pairs that carry a directional derivative alongside the value.

use std::fmt::Debug;
use std::ops::{Add, AddAssign, Div, Mul, Neg, Sub, SubAssign};

/// Field of multivector coefficients.
pub trait Scalar:
    Copy
    + Debug
    + PartialEq
    + Send
    + Sync
    + 'static
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
    + AddAssign
    + SubAssign
{
    fn zero() -> Self;
    fn one() -> Self;
    fn from_f64(v: f64) -> Self;
    /// The real part, discarding any tangent.
    fn value(&self) -> f64;
    fn scale(self, k: f64) -> Self;
    fn is_zero(&self) -> bool;
    fn exp(self) -> Self;
    fn sin(self) -> Self;
    fn cos(self) -> Self;
}

impl Scalar for f64 {
    #[inline]
    fn zero() -> Self {
        0.0
    }
    #[inline]
    fn one() -> Self {
        1.0
    }
    #[inline]
    fn from_f64(v: f64) -> Self {
        v
    }
    #[inline]
    fn value(&self) -> f64 {
        *self
    }
    #[inline]
    fn scale(self, k: f64) -> Self {
        self * k
    }
    #[inline]
    fn is_zero(&self) -> bool {
        *self == 0.0
    }
    fn exp(self) -> Self {
        f64::exp(self)
    }
    fn sin(self) -> Self {
        f64::sin(self)
    }
    fn cos(self) -> Self {
        f64::cos(self)
    }
}

/// A value paired with its derivative along one fixed direction.
///
/// Arithmetic follows the first-order rules `(a,ȧ)+(b,ḃ) = (a+b, ȧ+ḃ)` and
/// `(a,ȧ)(b,ḃ) = (ab, aḃ+ȧb)`; smooth maps lift as `(φ(a), φ'(a)ȧ)`.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct DiffScalar {
    pub value: f64,
    pub tangent: f64,
}

impl DiffScalar {
    pub const fn new(value: f64, tangent: f64) -> Self {
        Self { value, tangent }
    }

    pub const fn constant(value: f64) -> Self {
        Self { value, tangent: 0.0 }
    }
}

impl Add for DiffScalar {
    type Output = Self;
    #[inline]
    fn add(self, rhs: Self) -> Self {
        Self::new(self.value + rhs.value, self.tangent + rhs.tangent)
    }
}

impl Sub for DiffScalar {
    type Output = Self;
    #[inline]
    fn sub(self, rhs: Self) -> Self {
        Self::new(self.value - rhs.value, self.tangent - rhs.tangent)
    }
}

impl Mul for DiffScalar {
    type Output = Self;
    #[inline]
    fn mul(self, rhs: Self) -> Self {
        Self::new(
            self.value * rhs.value,
            self.value * rhs.tangent + self.tangent * rhs.value,
        )
    }
}

impl Div for DiffScalar {
    type Output = Self;
    #[inline]
    fn div(self, rhs: Self) -> Self {
        let inv = 1.0 / rhs.value;
        Self::new(
            self.value * inv,
            (self.tangent * rhs.value - self.value * rhs.tangent) * inv * inv,
        )
    }
}

impl Neg for DiffScalar {
    type Output = Self;
    #[inline]
    fn neg(self) -> Self {
        Self::new(-self.value, -self.tangent)
    }
}

impl AddAssign for DiffScalar {
    #[inline]
    fn add_assign(&mut self, rhs: Self) {
        *self = *self + rhs;
    }
}

impl SubAssign for DiffScalar {
    #[inline]
    fn sub_assign(&mut self, rhs: Self) {
        *self = *self - rhs;
    }
}

impl Scalar for DiffScalar {
    fn zero() -> Self {
        Self::constant(0.0)
    }
    fn one() -> Self {
        Self::constant(1.0)
    }
    fn from_f64(v: f64) -> Self {
        Self::constant(v)
    }
    fn value(&self) -> f64 {
        self.value
    }
    #[inline]
    fn scale(self, k: f64) -> Self {
        Self::new(self.value * k, self.tangent * k)
    }
    #[inline]
    fn is_zero(&self) -> bool {
        self.value == 0.0 && self.tangent == 0.0
    }
    fn exp(self) -> Self {
        let e = self.value.exp();
        Self::new(e, e * self.tangent)
    }
    fn sin(self) -> Self {
        Self::new(self.value.sin(), self.value.cos() * self.tangent)
    }
    fn cos(self) -> Self {
        Self::new(self.value.cos(), -self.value.sin() * self.tangent)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn product_rule() {
        let a = DiffScalar::new(3.0, 1.0);
        let b = DiffScalar::new(-2.0, 0.5);
        let c = a * b;
        assert_eq!(c.value, -6.0);
        assert_eq!(c.tangent, 3.0 * 0.5 + 1.0 * -2.0);
    }

    #[test]
    fn quotient_matches_product_with_inverse() {
        let a = DiffScalar::new(1.5, -0.25);
        let b = DiffScalar::new(0.75, 2.0);
        let q = a / b;
        let back = q * b;
        assert!((back.value - a.value).abs() < 1e-15);
        assert!((back.tangent - a.tangent).abs() < 1e-14);
    }

    #[test]
    fn smooth_maps_lift_with_derivative() {
        let x = DiffScalar::new(0.3, 2.0);
        assert!((x.exp().tangent - 0.3f64.exp() * 2.0).abs() < 1e-15);
        assert!((x.sin().tangent - 0.3f64.cos() * 2.0).abs() < 1e-15);
        assert!((x.cos().tangent + 0.3f64.sin() * 2.0).abs() < 1e-15);
    }

    #[test]
    fn constants_have_zero_tangent() {
        let c = <DiffScalar as Scalar>::from_f64(4.0);
        assert_eq!(c.tangent, 0.0);
        assert!(!c.is_zero());
        assert!(DiffScalar::zero().is_zero());
        assert!(!DiffScalar::new(0.0, 1.0).is_zero());
    }
}
