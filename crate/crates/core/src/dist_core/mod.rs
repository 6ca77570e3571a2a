//! Validated finite color distributions and the primitives built on them.

mod elem_sym;
mod sampler;

pub use elem_sym::{elem_sym, elem_sym_leave_one_out, ElemSymTable};
pub use sampler::{
    discrete_sampler, sample_sorted_simplex, sample_sorted_simplex_with, AliasSampler,
    DiscreteStream, RngSeed,
};

use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::numeric::neumaier_sum;

/// Absolute tolerance on `|Σ p_i − 1|` accepted by [`validate`].
pub const SUM_TOLERANCE: f64 = 1e-12;

/// A finite probability vector over colors `0..m`.
///
/// Entries are nonnegative and sum to one within [`SUM_TOLERANCE`]. Order is
/// significant; use [`Distribution::canonical_sorted`] for the nonincreasing
/// form. Zero entries are kept so that derived laws stay index-aligned.
#[derive(Debug, Clone, PartialEq)]
pub struct Distribution {
    probs: Vec<f64>,
}

/// Checks `raw` and wraps it without renormalizing.
pub fn validate(raw: &[f64]) -> Result<Distribution> {
    Distribution::new(raw.to_vec())
}

impl Distribution {
    pub fn new(probs: Vec<f64>) -> Result<Self> {
        if probs.is_empty() {
            return Err(Error::Empty);
        }
        for (index, &value) in probs.iter().enumerate() {
            // NaN fails this too
            if !(value >= 0.0) {
                return Err(Error::NegativeEntry { index, value });
            }
        }
        let sum = neumaier_sum(probs.iter().copied());
        if !(libm::fabs(sum - 1.0) <= SUM_TOLERANCE) {
            return Err(Error::BadSum { sum });
        }
        Ok(Self { probs })
    }

    pub fn uniform(m: usize) -> Result<Self> {
        if m == 0 {
            return Err(Error::Empty);
        }
        Self::new(alloc::vec![1.0 / m as f64; m])
    }

    /// The head-and-flat-tail vector `(x, (1−x)/n, …, (1−x)/n)` of length `n + 1`.
    pub fn head_and_tail(n: u64, x: f64) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidArgument("n must be positive"));
        }
        let tail = (1.0 - x) / n as f64;
        let mut probs = Vec::with_capacity(n as usize + 1);
        probs.push(x);
        probs.resize(n as usize + 1, tail);
        Self::new(probs)
    }

    #[inline]
    pub fn probs(&self) -> &[f64] {
        &self.probs
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.probs.len()
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.probs.is_empty()
    }

    pub fn into_vec(self) -> Vec<f64> {
        self.probs
    }

    /// Entries sorted nonincreasing.
    pub fn canonical_sorted(&self) -> Distribution {
        let mut probs = self.probs.clone();
        probs.sort_unstable_by(|a, b| b.total_cmp(a));
        Distribution { probs }
    }

    pub fn is_sorted_nonincreasing(&self) -> bool {
        self.probs.windows(2).all(|w| w[0] >= w[1])
    }

    /// Applies `perm`: entry `j` of the result is entry `perm[j]` of `self`.
    pub fn permuted(&self, perm: &[usize]) -> Result<Distribution> {
        if perm.len() != self.len() {
            return Err(Error::IndexMismatch {
                left: self.len(),
                right: perm.len(),
            });
        }
        let mut seen = alloc::vec![false; perm.len()];
        let mut probs = Vec::with_capacity(perm.len());
        for &src in perm {
            if src >= self.len() || core::mem::replace(&mut seen[src], true) {
                return Err(Error::InvalidArgument("not a permutation"));
            }
            probs.push(self.probs[src]);
        }
        Ok(Distribution { probs })
    }
}

impl AsRef<[f64]> for Distribution {
    fn as_ref(&self) -> &[f64] {
        &self.probs
    }
}

/// Free-function form of [`Distribution::canonical_sorted`].
pub fn canonical_sorted(d: &Distribution) -> Distribution {
    d.canonical_sorted()
}
