use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub const MIN_DIM: usize = 2;
pub const MAX_DIM: usize = 8;

/// Diagonal, nondegenerate metric on an `n`-dimensional real vector space.
///
/// `diag[k]` is `e_k · e_k` for the standard generators.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "Vec<f64>", into = "Vec<f64>")]
pub struct Metric {
    diag: Vec<f64>,
}

impl Metric {
    pub fn new(diag: Vec<f64>) -> Result<Self> {
        let n = diag.len();
        if !(MIN_DIM..=MAX_DIM).contains(&n) {
            return Err(Error::InvalidMetric(format!(
                "dimension {n} outside {MIN_DIM}..={MAX_DIM}"
            )));
        }
        if let Some(k) = diag.iter().position(|g| *g == 0.0 || !g.is_finite()) {
            return Err(Error::InvalidMetric(format!(
                "diagonal entry {k} is {} (must be finite and nonzero)",
                diag[k]
            )));
        }
        Ok(Self { diag })
    }

    pub fn euclidean(dim: usize) -> Result<Self> {
        Self::new(vec![1.0; dim])
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.diag.len()
    }

    /// Number of basis blades, `2^n`.
    #[inline]
    pub fn size(&self) -> usize {
        1 << self.diag.len()
    }

    pub fn diag(&self) -> &[f64] {
        &self.diag
    }

    /// Product of `g_kk` over the generators present in `mask`.
    #[inline]
    pub fn blade_square(&self, mask: usize) -> f64 {
        let mut m = mask;
        let mut acc = 1.0;
        while m != 0 {
            let k = m.trailing_zeros() as usize;
            acc *= self.diag[k];
            m &= m - 1;
        }
        acc
    }

    pub fn is_euclidean(&self) -> bool {
        self.diag.iter().all(|g| *g == 1.0)
    }
}

impl TryFrom<Vec<f64>> for Metric {
    type Error = Error;
    fn try_from(diag: Vec<f64>) -> Result<Self> {
        Metric::new(diag)
    }
}

impl From<Metric> for Vec<f64> {
    fn from(m: Metric) -> Self {
        m.diag
    }
}
