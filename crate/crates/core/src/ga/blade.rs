use std::fmt;

use crate::error::{Error, Result};

/// Basis blade `e_{j1} ∧ … ∧ e_{jk}` (j1 < … < jk), encoded as a generator bitmask.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct BasisBlade(pub usize);

impl BasisBlade {
    pub const SCALAR: BasisBlade = BasisBlade(0);

    #[inline]
    pub fn mask(self) -> usize {
        self.0
    }

    #[inline]
    pub fn grade(self) -> usize {
        self.0.count_ones() as usize
    }

    /// Generator indices (0-based) in increasing order.
    pub fn generators(self) -> impl Iterator<Item = usize> {
        let mut m = self.0;
        std::iter::from_fn(move || {
            if m == 0 {
                None
            } else {
                let k = m.trailing_zeros() as usize;
                m &= m - 1;
                Some(k)
            }
        })
    }

    /// Parses labels of the form `1` (scalar) or `e12`, `e134` (1-based indices).
    pub fn parse(label: &str, dim: usize) -> Result<Self> {
        if label == "1" {
            return Ok(Self::SCALAR);
        }
        let digits = label
            .strip_prefix('e')
            .ok_or_else(|| Error::InvalidArgument(format!("bad blade label {label:?}")))?;
        let mut mask = 0usize;
        let mut last = 0usize;
        for ch in digits.chars() {
            let k = ch
                .to_digit(10)
                .ok_or_else(|| Error::InvalidArgument(format!("bad blade label {label:?}")))?
                as usize;
            if k == 0 || k > dim || k <= last {
                return Err(Error::InvalidArgument(format!(
                    "blade label {label:?} must list increasing indices in 1..={dim}"
                )));
            }
            mask |= 1 << (k - 1);
            last = k;
        }
        if mask == 0 {
            return Err(Error::InvalidArgument(format!("bad blade label {label:?}")));
        }
        Ok(Self(mask))
    }
}

impl fmt::Display for BasisBlade {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0 == 0 {
            return f.write_str("1");
        }
        f.write_str("e")?;
        for k in self.generators() {
            write!(f, "{}", k + 1)?;
        }
        Ok(())
    }
}

/// All grade-`p` basis blades in increasing mask order.
///
/// Summing over this list replaces the `1/p!`-weighted sum over all index
/// tuples: permuted tuples give the same blade up to sign twice over, and
/// repeated indices vanish.
pub fn blade_basis(dim: usize, grade: usize) -> Result<Vec<BasisBlade>> {
    if grade > dim {
        return Err(Error::GradeOutOfRange { grade, dim });
    }
    Ok(blades_of_grade(dim, grade))
}

pub(crate) fn blades_of_grade(dim: usize, grade: usize) -> Vec<BasisBlade> {
    (0..1usize << dim)
        .filter(|m| m.count_ones() as usize == grade)
        .map(BasisBlade)
        .collect()
}

/// Position of `mask` within the increasing list of blades of its grade.
pub(crate) fn index_in_grade(mask: usize) -> usize {
    let grade = mask.count_ones();
    (0..mask).filter(|m| m.count_ones() == grade).count()
}

pub(crate) fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

/// Sign of reordering `e_a e_b` into canonical increasing order.
#[inline]
pub(crate) fn reorder_sign(a: usize, b: usize) -> f64 {
    let mut a = a >> 1;
    let mut swaps = 0u32;
    while a != 0 {
        swaps += (a & b).count_ones();
        a >>= 1;
    }
    if swaps & 1 == 0 {
        1.0
    } else {
        -1.0
    }
}

/// `(-1)^{r(r-1)/2}` for a blade of grade `r`.
#[inline]
pub(crate) fn reverse_sign(mask: usize) -> f64 {
    let r = mask.count_ones();
    if (r * r.saturating_sub(1) / 2).is_multiple_of(2) {
        1.0
    } else {
        -1.0
    }
}
