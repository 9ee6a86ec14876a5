use std::sync::Arc;

use nalgebra::DMatrix;

use super::blade::BasisBlade;
use super::metric::Metric;
use super::multivector::Multivector;
use crate::error::{Error, Result};

/// A basis `{f_k}` of V together with its reciprocal `{f^k}`, `f^i · f_j = δ_ij`.
#[derive(Debug, Clone)]
pub struct Frame {
    metric: Arc<Metric>,
    vectors: Vec<Multivector>,
    reciprocal: Vec<Multivector>,
}

impl Frame {
    /// The generators `e_k` with reciprocals `e_k / g_kk`.
    pub fn standard(metric: &Arc<Metric>) -> Self {
        let vectors: Vec<_> = (0..metric.dim())
            .map(|k| Multivector::basis_vector(metric, k))
            .collect();
        let reciprocal = vectors
            .iter()
            .zip(metric.diag())
            .map(|(v, g)| v.scale(1.0 / g))
            .collect();
        Self {
            metric: Arc::clone(metric),
            vectors,
            reciprocal,
        }
    }

    pub fn new(metric: &Arc<Metric>, vectors: Vec<Multivector>) -> Result<Self> {
        let reciprocal = reciprocal_frame(&vectors, metric)?;
        Ok(Self {
            metric: Arc::clone(metric),
            vectors,
            reciprocal,
        })
    }

    /// Frame whose `k`-th vector has standard components `columns[k]`.
    pub fn from_components(metric: &Arc<Metric>, columns: &[Vec<f64>]) -> Result<Self> {
        let vectors = columns
            .iter()
            .map(|c| Multivector::vector(metric, c))
            .collect::<Result<Vec<_>>>()?;
        Self::new(metric, vectors)
    }

    pub fn metric(&self) -> &Arc<Metric> {
        &self.metric
    }

    pub fn dim(&self) -> usize {
        self.vectors.len()
    }

    pub fn vectors(&self) -> &[Multivector] {
        &self.vectors
    }

    pub fn reciprocal(&self) -> &[Multivector] {
        &self.reciprocal
    }

    /// `f_{j1} ∧ … ∧ f_{jp}` for the generator indices of `blade`.
    pub fn blade(&self, blade: BasisBlade) -> Multivector {
        wedge_all(&self.metric, blade.generators().map(|k| &self.vectors[k]))
    }

    /// `f^{j1} ∧ … ∧ f^{jp}`.
    pub fn reciprocal_blade(&self, blade: BasisBlade) -> Multivector {
        wedge_all(&self.metric, blade.generators().map(|k| &self.reciprocal[k]))
    }

    /// The frame with the roles of `{f_k}` and `{f^k}` exchanged.
    pub fn swapped(&self) -> Self {
        Self {
            metric: Arc::clone(&self.metric),
            vectors: self.reciprocal.clone(),
            reciprocal: self.vectors.clone(),
        }
    }

    /// `max_ij |f^i · f_j - δ_ij|`.
    pub fn duality_defect(&self) -> f64 {
        let mut worst = 0.0f64;
        for (i, r) in self.reciprocal.iter().enumerate() {
            for (j, v) in self.vectors.iter().enumerate() {
                let want = if i == j { 1.0 } else { 0.0 };
                worst = worst.max((r.scalar_product(v) - want).abs());
            }
        }
        worst
    }
}

fn wedge_all<'a>(metric: &Arc<Metric>, factors: impl Iterator<Item = &'a Multivector>) -> Multivector {
    factors.fold(Multivector::from_scalar(metric, 1.0), |acc, v| acc.wedge(v))
}

/// Reciprocal basis `f^i = Σ_j (G⁻¹)_ij f_j`, where `G_ij = f_i · f_j`.
pub fn reciprocal_frame(vectors: &[Multivector], metric: &Arc<Metric>) -> Result<Vec<Multivector>> {
    let n = metric.dim();
    if vectors.len() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            found: vectors.len(),
        });
    }
    for v in vectors {
        if **v.metric() != **metric {
            return Err(Error::MetricMismatch);
        }
        if !v.is_grade(1) {
            return Err(Error::NotHomogeneous { expected: 1 });
        }
    }
    let gram = DMatrix::from_fn(n, n, |i, j| vectors[i].scalar_product(&vectors[j]));
    let scale = gram.amax();
    if scale == 0.0 {
        return Err(Error::DegenerateFrame);
    }
    let lu = gram.lu();
    let det = lu.determinant();
    if !det.is_finite() || det.abs() < 1e-12 * scale.powi(n as i32) {
        return Err(Error::DegenerateFrame);
    }
    let inv = lu.try_inverse().ok_or(Error::DegenerateFrame)?;
    Ok((0..n)
        .map(|i| {
            let mut acc = Multivector::zero(metric);
            for (j, v) in vectors.iter().enumerate() {
                acc += &v.scale(inv[(i, j)]);
            }
            acc
        })
        .collect())
}
