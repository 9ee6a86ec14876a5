//! Linear maps `Λ^p V → Λ^q V` ("(p,q)-extensors").
//!
//! An extensor is stored as a dense `C(n,q) × C(n,p)` matrix whose columns
//! are the images of the grade-`p` basis blades, in increasing-mask order,
//! expanded over the grade-`q` basis blades.

use std::sync::Arc;

use nalgebra::DMatrix;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::ga::{binomial, blades_of_grade, index_in_grade, BasisBlade, Frame, Metric, Multivector, ProductKind};

/// Relative cutoff below which `|det h|` counts as singular, scaled by `max|h_ij|^n`.
pub const SINGULARITY_RTOL: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq)]
pub struct Extensor {
    metric: Arc<Metric>,
    p: usize,
    q: usize,
    matrix: DMatrix<f64>,
}

impl Extensor {
    pub fn new(metric: &Arc<Metric>, p: usize, q: usize, matrix: DMatrix<f64>) -> Result<Self> {
        let n = metric.dim();
        for g in [p, q] {
            if g > n {
                return Err(Error::GradeOutOfRange { grade: g, dim: n });
            }
        }
        let (rows, cols) = (binomial(n, q), binomial(n, p));
        if matrix.nrows() != rows {
            return Err(Error::DimensionMismatch {
                expected: rows,
                found: matrix.nrows(),
            });
        }
        if matrix.ncols() != cols {
            return Err(Error::DimensionMismatch {
                expected: cols,
                found: matrix.ncols(),
            });
        }
        Ok(Self {
            metric: Arc::clone(metric),
            p,
            q,
            matrix,
        })
    }

    pub fn identity(metric: &Arc<Metric>, p: usize) -> Result<Self> {
        let k = binomial(metric.dim(), p);
        Self::new(metric, p, p, DMatrix::identity(k, k))
    }

    pub fn zero(metric: &Arc<Metric>, p: usize, q: usize) -> Result<Self> {
        let n = metric.dim();
        Self::new(metric, p, q, DMatrix::zeros(binomial(n, q), binomial(n, p)))
    }

    /// The (1,1)-extensor with `h(e_k) = images[k]` on the standard generators.
    pub fn from_vector_images(metric: &Arc<Metric>, images: &[Multivector]) -> Result<Self> {
        let n = metric.dim();
        if images.len() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: images.len(),
            });
        }
        let mut m = DMatrix::zeros(n, n);
        for (k, img) in images.iter().enumerate() {
            if !img.is_grade(1) {
                return Err(Error::NotHomogeneous { expected: 1 });
            }
            for (j, c) in img.vector_components().into_iter().enumerate() {
                m[(j, k)] = c;
            }
        }
        Self::new(metric, 1, 1, m)
    }

    /// `h(e_k) = d[k] e_k`.
    pub fn diagonal(metric: &Arc<Metric>, d: &[f64]) -> Result<Self> {
        let n = metric.dim();
        if d.len() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: d.len(),
            });
        }
        Self::new(
            metric,
            1,
            1,
            DMatrix::from_diagonal(&nalgebra::DVector::from_column_slice(d)),
        )
    }

    pub fn metric(&self) -> &Arc<Metric> {
        &self.metric
    }

    pub fn dim(&self) -> usize {
        self.metric.dim()
    }

    pub fn p(&self) -> usize {
        self.p
    }

    pub fn q(&self) -> usize {
        self.q
    }

    pub fn matrix(&self) -> &DMatrix<f64> {
        &self.matrix
    }

    fn require_11(&self) -> Result<()> {
        if self.p == 1 && self.q == 1 {
            Ok(())
        } else {
            Err(Error::SignatureMismatch {
                expected_p: 1,
                expected_q: 1,
                found_p: self.p,
                found_q: self.q,
            })
        }
    }

    pub fn apply(&self, x: &Multivector) -> Result<Multivector> {
        if !(Arc::ptr_eq(x.metric(), &self.metric) || **x.metric() == *self.metric) {
            return Err(Error::MetricMismatch);
        }
        if !x.is_grade(self.p) {
            return Err(Error::NotHomogeneous { expected: self.p });
        }
        let n = self.dim();
        let src = blades_of_grade(n, self.p);
        let dst = blades_of_grade(n, self.q);
        let mut out = Multivector::zero(&self.metric);
        for (c, b) in src.iter().enumerate() {
            let xc = x.coeff(*b);
            if xc == 0.0 {
                continue;
            }
            for (r, d) in dst.iter().enumerate() {
                let v = out.coeff(*d) + self.matrix[(r, c)] * xc;
                out.set_coeff(*d, v);
            }
        }
        Ok(out)
    }

    /// The (q,p)-extensor `t†` with `t†(Y)·X = Y·t(X)`.
    pub fn adjoint(&self) -> Extensor {
        let n = self.dim();
        let weight = |b: BasisBlade| self.metric.blade_square(b.mask());
        let src = blades_of_grade(n, self.p);
        let dst = blades_of_grade(n, self.q);
        let m = DMatrix::from_fn(src.len(), dst.len(), |j, k| {
            self.matrix[(k, j)] * weight(dst[k]) / weight(src[j])
        });
        Extensor {
            metric: Arc::clone(&self.metric),
            p: self.q,
            q: self.p,
            matrix: m,
        }
    }

    /// `self ∘ inner`.
    pub fn compose(&self, inner: &Extensor) -> Result<Extensor> {
        compose(self, inner)
    }

    pub fn outermorphism(&self) -> Result<Outermorphism> {
        Outermorphism::new(self.clone())
    }

    /// `tr[t] = Σ_j t(e^j)·e_j` in the standard frame.
    pub fn trace(&self) -> Result<f64> {
        self.trace_in(&Frame::standard(&self.metric))
    }

    pub fn trace_in(&self, frame: &Frame) -> Result<f64> {
        self.require_11()?;
        let mut acc = 0.0;
        for (v, r) in frame.vectors().iter().zip(frame.reciprocal()) {
            acc += self.apply(r)?.scalar_product(v);
        }
        Ok(acc)
    }

    /// `biv[t] = Σ_j t(e^j)∧e_j` in the standard frame.
    pub fn biv(&self) -> Result<Multivector> {
        self.biv_in(&Frame::standard(&self.metric))
    }

    pub fn biv_in(&self, frame: &Frame) -> Result<Multivector> {
        self.require_11()?;
        let mut acc = Multivector::zero(&self.metric);
        for (v, r) in frame.vectors().iter().zip(frame.reciprocal()) {
            acc += &self.apply(r)?.wedge(v);
        }
        Ok(acc)
    }

    /// `det[h]` with `h̲(I) = det[h] I`.
    pub fn det(&self) -> Result<f64> {
        self.require_11()?;
        let n = self.dim();
        let top = self.outermorphism()?.grade_extensor(n)?;
        Ok(top.matrix[(0, 0)])
    }

    fn check_invertible(&self) -> Result<f64> {
        let det = self.det()?;
        let scale = self.matrix.amax();
        if det.abs() <= SINGULARITY_RTOL * scale.powi(self.dim() as i32) {
            return Err(Error::SingularExtensor { det });
        }
        Ok(det)
    }

    /// `h⁻¹(a) = det⁻¹[h] h̲†(aI) I⁻¹`, with `I` the unit pseudoscalar.
    pub fn inverse(&self) -> Result<Extensor> {
        let det = self.check_invertible()?;
        let n = self.dim();
        let pseudo = Multivector::pseudoscalar(&self.metric);
        let pseudo_inv = pseudo.versor_inverse()?;
        let adj_outer = self.adjoint().outermorphism()?;
        let mut images = Vec::with_capacity(n);
        for k in 0..n {
            let a = Multivector::basis_vector(&self.metric, k);
            let dual = adj_outer.apply(&a.gp(&pseudo))?;
            images.push(dual.gp(&pseudo_inv).scale(1.0 / det).grade_part(1));
        }
        let inv = Extensor::from_vector_images(&self.metric, &images)?;
        debug_assert!({
            let direct = self.inverse_by_matrix()?;
            let scale = direct.matrix.amax().max(1.0);
            (&inv.matrix - &direct.matrix).amax() <= 1e-6 * scale
        });
        Ok(inv)
    }

    /// Inverse by LU on the matrix representation.
    pub fn inverse_by_matrix(&self) -> Result<Extensor> {
        let det = self.check_invertible()?;
        let inv = self
            .matrix
            .clone()
            .try_inverse()
            .ok_or(Error::SingularExtensor { det })?;
        Self::new(&self.metric, 1, 1, inv)
    }

    /// `h* = (h†)⁻¹ = (h⁻¹)†`.
    pub fn adjoint_inverse(&self) -> Result<Extensor> {
        Ok(self.inverse()?.adjoint())
    }

    /// `T_pq = t(f_p)·f_q`.
    pub fn to_components(&self, frame: &Frame) -> Result<DMatrix<f64>> {
        self.require_11()?;
        let n = self.dim();
        let images = frame
            .vectors()
            .iter()
            .map(|f| self.apply(f))
            .collect::<Result<Vec<_>>>()?;
        Ok(DMatrix::from_fn(n, n, |p, q| {
            images[p].scalar_product(&frame.vectors()[q])
        }))
    }

    /// Inverse of [`Extensor::to_components`]: `t(f_p) = Σ_q T_pq f^q`.
    pub fn from_components(components: &DMatrix<f64>, frame: &Frame) -> Result<Extensor> {
        let metric = frame.metric();
        let n = metric.dim();
        if components.nrows() != n || components.ncols() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: components.nrows().max(components.ncols()),
            });
        }
        let cols = |vs: &[Multivector]| DMatrix::from_fn(n, n, |i, k| vs[k].vector_components()[i]);
        let fwd = cols(frame.vectors());
        let rec = cols(frame.reciprocal());
        let fwd_inv = fwd.try_inverse().ok_or(Error::DegenerateFrame)?;
        Self::new(metric, 1, 1, rec * components.transpose() * fwd_inv)
    }

    pub fn to_record(&self) -> ExtensorRecord {
        ExtensorRecord {
            n: self.dim(),
            metric: self.metric.diag().to_vec(),
            p: self.p,
            q: self.q,
            matrix: self.matrix.transpose().iter().copied().collect(),
        }
    }

    pub fn from_record(record: &ExtensorRecord) -> Result<Extensor> {
        let metric = Arc::new(Metric::new(record.metric.clone())?);
        if metric.dim() != record.n {
            return Err(Error::DimensionMismatch {
                expected: record.n,
                found: metric.dim(),
            });
        }
        let rows = binomial(record.n, record.q);
        let cols = binomial(record.n, record.p);
        if record.matrix.len() != rows * cols {
            return Err(Error::DimensionMismatch {
                expected: rows * cols,
                found: record.matrix.len(),
            });
        }
        let m = DMatrix::from_row_slice(rows, cols, &record.matrix);
        Self::new(&metric, record.p, record.q, m)
    }
}

/// `g ∘ t`.
pub fn compose(g: &Extensor, t: &Extensor) -> Result<Extensor> {
    if **g.metric() != **t.metric() {
        return Err(Error::MetricMismatch);
    }
    if g.p != t.q {
        return Err(Error::SignatureMismatch {
            expected_p: t.q,
            expected_q: g.q,
            found_p: g.p,
            found_q: g.q,
        });
    }
    Extensor::new(&t.metric, t.p, g.q, &g.matrix * &t.matrix)
}

/// Serialized extensor: header plus row-major matrix over increasing-mask blade bases.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExtensorRecord {
    pub n: usize,
    pub metric: Vec<f64>,
    pub p: usize,
    pub q: usize,
    pub matrix: Vec<f64>,
}

/// Grade-preserving extension `h̲` of a (1,1)-extensor, `h̲(a∧b) = h(a)∧h(b)`.
#[derive(Debug, Clone)]
pub struct Outermorphism {
    base: Extensor,
}

impl Outermorphism {
    pub fn new(base: Extensor) -> Result<Self> {
        base.require_11()?;
        Ok(Self { base })
    }

    pub fn base(&self) -> &Extensor {
        &self.base
    }

    /// The (k,k)-extensor `h̲|_{Λ^k}`.
    pub fn grade_extensor(&self, k: usize) -> Result<Extensor> {
        let metric = &self.base.metric;
        let n = metric.dim();
        if k > n {
            return Err(Error::GradeOutOfRange { grade: k, dim: n });
        }
        let images: Vec<Multivector> = (0..n)
            .map(|j| self.base.apply(&Multivector::basis_vector(metric, j)))
            .collect::<Result<_>>()?;
        let blades = blades_of_grade(n, k);
        let mut m = DMatrix::zeros(blades.len(), blades.len());
        for (c, b) in blades.iter().enumerate() {
            let img = b.generators().fold(Multivector::from_scalar(metric, 1.0), |acc, j| {
                acc.product(ProductKind::Wedge, &images[j]).expect("same metric")
            });
            for d in &blades {
                m[(index_in_grade(d.mask()), c)] = img.coeff(*d);
            }
        }
        Extensor::new(metric, k, k, m)
    }

    /// Applies `h̲` grade by grade to an arbitrary multivector.
    pub fn apply(&self, x: &Multivector) -> Result<Multivector> {
        let n = self.base.dim();
        let mut out = Multivector::zero(&self.base.metric);
        for k in 0..=n {
            let part = x.grade_part(k);
            if part.is_zero() {
                continue;
            }
            out += &self.grade_extensor(k)?.apply(&part)?;
        }
        Ok(out)
    }
}

/// `h̲(X)` for a (1,1)-extensor `h`.
pub fn outermorphism_apply(h: &Extensor, x: &Multivector) -> Result<Multivector> {
    h.outermorphism()?.apply(x)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn metric(n: usize) -> Arc<Metric> {
        Arc::new(Metric::euclidean(n).unwrap())
    }

    fn v(m: &Arc<Metric>, c: &[f64]) -> Multivector {
        Multivector::vector(m, c).unwrap()
    }

    /// h(e1) = e2, h(e2) = 0.
    fn shift(m: &Arc<Metric>) -> Extensor {
        Extensor::from_vector_images(m, &[v(m, &[0.0, 1.0]), v(m, &[0.0, 0.0])]).unwrap()
    }

    #[test]
    fn apply_examples() {
        let m = metric(2);
        let e1 = v(&m, &[1.0, 0.0]);
        assert_eq!(Extensor::identity(&m, 1).unwrap().apply(&e1).unwrap(), e1);
        assert!(Extensor::zero(&m, 1, 1).unwrap().apply(&e1).unwrap().is_zero());
        assert_eq!(shift(&m).apply(&e1).unwrap(), v(&m, &[0.0, 1.0]));
        assert_eq!(
            shift(&m).apply(&Multivector::pseudoscalar(&m)),
            Err(Error::NotHomogeneous { expected: 1 })
        );
    }

    #[test]
    fn adjoint_examples() {
        let m = metric(2);
        let id = Extensor::identity(&m, 1).unwrap();
        assert_eq!(id.adjoint(), id);
        let a = shift(&m).adjoint();
        assert_eq!(a.apply(&v(&m, &[0.0, 1.0])).unwrap(), v(&m, &[1.0, 0.0]));
        assert!(a.apply(&v(&m, &[1.0, 0.0])).unwrap().is_zero());
        assert_eq!(a.matrix(), &shift(&m).matrix().transpose());
    }

    #[test]
    fn adjoint_respects_indefinite_metric() {
        let m = Arc::new(Metric::new(vec![1.0, -1.0, 2.0]).unwrap());
        let t = Extensor::new(
            &m,
            1,
            2,
            DMatrix::from_row_slice(3, 3, &[0.3, -1.0, 0.5, 2.0, 0.1, -0.7, 0.4, 0.9, 1.1]),
        )
        .unwrap();
        let ta = t.adjoint();
        for xb in 0..3 {
            for yb in 0..3 {
                let x = Multivector::basis_vector(&m, xb).scale(1.0 + xb as f64);
                let y = Multivector::from_blade(&m, blades_of_grade(3, 2)[yb], 0.5 - yb as f64);
                let lhs = ta.apply(&y).unwrap().scalar_product(&x);
                let rhs = y.scalar_product(&t.apply(&x).unwrap());
                assert!((lhs - rhs).abs() < 1e-14);
            }
        }
        assert_eq!(ta.adjoint(), t);
    }

    #[test]
    fn outermorphism_examples() {
        let m = metric(2);
        let h = Extensor::diagonal(&m, &[2.0, 3.0]).unwrap();
        let i = Multivector::pseudoscalar(&m);
        assert_eq!(outermorphism_apply(&h, &i).unwrap(), i.scale(6.0));
        let five = Multivector::from_scalar(&m, 5.0);
        assert_eq!(outermorphism_apply(&h, &five).unwrap(), five);
        let id = Extensor::identity(&m, 1).unwrap();
        let x = &five + &i.scale(-2.0);
        assert_eq!(outermorphism_apply(&id, &x).unwrap(), x);
        assert!(Extensor::identity(&m, 2).unwrap().outermorphism().is_err());
    }

    #[test]
    fn trace_examples() {
        assert_eq!(Extensor::identity(&metric(3), 1).unwrap().trace().unwrap(), 3.0);
        let m = metric(2);
        assert_eq!(Extensor::diagonal(&m, &[2.0, 3.0]).unwrap().trace().unwrap(), 5.0);
        assert_eq!(Extensor::zero(&m, 1, 1).unwrap().trace().unwrap(), 0.0);
    }

    #[test]
    fn biv_examples() {
        let m = metric(2);
        assert!(Extensor::identity(&m, 1).unwrap().biv().unwrap().is_zero());
        let b = shift(&m).biv().unwrap();
        assert_eq!(b, -Multivector::pseudoscalar(&m));
        assert!(Extensor::diagonal(&m, &[4.0, -1.0]).unwrap().biv().unwrap().is_zero());
    }

    #[test]
    fn det_examples() {
        let m = metric(2);
        assert_eq!(Extensor::identity(&m, 1).unwrap().det().unwrap(), 1.0);
        assert_eq!(Extensor::diagonal(&m, &[2.0, 3.0]).unwrap().det().unwrap(), 6.0);
        assert_eq!(shift(&m).det().unwrap(), 0.0);
    }

    #[test]
    fn inverse_examples() {
        let m = metric(2);
        let id = Extensor::identity(&m, 1).unwrap();
        assert_eq!(id.inverse().unwrap(), id);

        let d = Extensor::diagonal(&m, &[2.0, 3.0]).unwrap();
        let want = Extensor::diagonal(&m, &[0.5, 1.0 / 3.0]).unwrap();
        for inv in [d.inverse().unwrap(), d.inverse_by_matrix().unwrap()] {
            assert!((inv.matrix() - want.matrix()).amax() < 1e-15);
        }

        let swap = Extensor::from_vector_images(&m, &[v(&m, &[0.0, 1.0]), v(&m, &[1.0, 0.0])]).unwrap();
        assert!((swap.inverse().unwrap().matrix() - swap.matrix()).amax() < 1e-15);

        assert!(matches!(shift(&m).inverse(), Err(Error::SingularExtensor { .. })));
    }

    #[test]
    fn compose_examples() {
        let m = metric(2);
        let a = Extensor::diagonal(&m, &[2.0, 3.0]).unwrap();
        let b = Extensor::diagonal(&m, &[5.0, 7.0]).unwrap();
        assert_eq!(compose(&a, &b).unwrap(), Extensor::diagonal(&m, &[10.0, 21.0]).unwrap());
        let id = Extensor::identity(&m, 1).unwrap();
        assert_eq!(compose(&id, &shift(&m)).unwrap(), shift(&m));
        let prod = compose(&a, &a.inverse().unwrap()).unwrap();
        assert!((prod.matrix() - id.matrix()).amax() < 1e-15);
        let t12 = Extensor::zero(&m, 1, 2).unwrap();
        assert!(compose(&t12, &t12).is_err());
    }

    #[test]
    fn components_examples() {
        let m = metric(2);
        let std = Frame::standard(&m);
        assert_eq!(
            Extensor::identity(&m, 1).unwrap().to_components(&std).unwrap(),
            DMatrix::identity(2, 2)
        );
        assert_eq!(
            shift(&m).to_components(&std).unwrap(),
            DMatrix::from_row_slice(2, 2, &[0.0, 1.0, 0.0, 0.0])
        );
    }

    #[test]
    fn components_round_trip_in_skew_frame() {
        let m = Arc::new(Metric::new(vec![1.0, -1.0, 1.0]).unwrap());
        let frame =
            Frame::from_components(&m, &[vec![1.0, 0.2, 0.0], vec![0.5, 1.0, -0.3], vec![0.0, 0.4, 1.5]]).unwrap();
        let t = Extensor::new(
            &m,
            1,
            1,
            DMatrix::from_row_slice(3, 3, &[1.0, 2.0, -0.5, 0.3, -1.2, 0.8, 0.0, 0.6, 2.2]),
        )
        .unwrap();
        let comps = t.to_components(&frame).unwrap();
        let back = Extensor::from_components(&comps, &frame).unwrap();
        assert!((back.matrix() - t.matrix()).amax() < 1e-12);
    }

    #[test]
    fn record_round_trip() {
        let m = Arc::new(Metric::new(vec![1.0, 1.0, -1.0]).unwrap());
        let t = Extensor::new(&m, 1, 2, DMatrix::from_fn(3, 3, |i, j| (3 * i + j) as f64)).unwrap();
        let rec = t.to_record();
        assert_eq!(rec.matrix[..3], [0.0, 1.0, 2.0]);
        assert_eq!(Extensor::from_record(&rec).unwrap(), t);
        let mut bad = rec.clone();
        bad.matrix.pop();
        assert!(Extensor::from_record(&bad).is_err());
    }
}
