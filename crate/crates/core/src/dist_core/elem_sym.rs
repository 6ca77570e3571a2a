//! Elementary symmetric polynomials of a probability vector.
//!
//! The table is stored factorial-scaled: `scaled[k] = k!·e_k`. For a
//! probability vector this is the chance that the first `k` sequential draws
//! are all distinct colors, so every stored value lies in `[0, 1]` and the
//! table neither overflows (as `k!` alone would past 170) nor underflows
//! until the quantity itself is below `f64::MIN_POSITIVE`.

use alloc::vec::Vec;

use super::Distribution;
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq)]
pub struct ElemSymTable {
    scaled: Vec<f64>,
}

impl ElemSymTable {
    /// Builds the table of an arbitrary nonnegative vector, one entry at a
    /// time: `e_k ← e_k + p·e_{k−1}` (descending `k`), i.e.
    /// `f_k ← f_k + k·p·f_{k−1}` in scaled form.
    pub fn from_slice(p: &[f64]) -> Self {
        let mut scaled = alloc::vec![0.0; p.len() + 1];
        scaled[0] = 1.0;
        for (done, &pj) in p.iter().enumerate() {
            for k in (1..=done + 1).rev() {
                scaled[k] += k as f64 * pj * scaled[k - 1];
            }
        }
        Self { scaled }
    }

    /// Length of the vector the table was built from.
    pub fn source_len(&self) -> usize {
        self.scaled.len() - 1
    }

    /// `k!·e_k` for `k = 0..=m`.
    pub fn scaled(&self) -> &[f64] {
        &self.scaled
    }

    /// Probability that `k` sequential draws are pairwise distinct.
    pub fn distinct_prob(&self, k: usize) -> f64 {
        self.scaled.get(k).copied().unwrap_or(0.0)
    }

    /// `e_k`; underflows to zero once `e_k < f64::MIN_POSITIVE`.
    pub fn value(&self, k: usize) -> f64 {
        let mut v = self.distinct_prob(k);
        for j in 2..=k {
            v /= j as f64;
        }
        v
    }

    /// `e_0, …, e_m`.
    pub fn values(&self) -> Vec<f64> {
        let mut out = Vec::with_capacity(self.scaled.len());
        let mut inv_fact = 1.0;
        for (k, &s) in self.scaled.iter().enumerate() {
            if k > 1 {
                inv_fact /= k as f64;
            }
            out.push(if inv_fact > 0.0 {
                s * inv_fact
            } else {
                self.value(k)
            });
        }
        out
    }

    /// Table of `p` with entry `i` removed, given that `self` is the table of
    /// all of `p`.
    ///
    /// Uses the downdate `e'_k = e_k − p_i·e'_{k−1}` while it is
    /// well-conditioned (the subtracted part is at most half of `e_k`), then
    /// finishes from the top with `e'_{k−1} = (e_k − e'_k)/p_i`. The ratio
    /// `p_i·e'_{k−1}/e'_k` is nondecreasing in `k` (Newton's inequalities), so
    /// there is a single switch point and each leg only ever shrinks
    /// propagated error. The upward leg needs a normal `e_m`; when it has
    /// underflowed the reduced vector is recomputed directly.
    pub fn leave_one_out(&self, p: &[f64], i: usize) -> Result<ElemSymTable> {
        let m = p.len();
        if i >= m {
            return Err(Error::IndexOutOfRange { index: i, len: m });
        }
        debug_assert_eq!(self.source_len(), m);
        let f = &self.scaled;
        let pi = p[i];
        let n = m - 1;
        if pi == 0.0 {
            return Ok(Self {
                scaled: f[..=n].to_vec(),
            });
        }
        let mut out = alloc::vec![0.0; n + 1];
        out[0] = 1.0;
        let mut switch_at = None;
        for k in 1..=n {
            let carry = k as f64 * pi * out[k - 1];
            let rest = f[k] - carry;
            if carry > rest {
                switch_at = Some(k);
                break;
            }
            out[k] = rest;
        }
        if let Some(k0) = switch_at {
            if !f[m].is_normal() {
                return Ok(Self::from_slice(&without(p, i)));
            }
            out[n] = f[m] / (m as f64 * pi);
            for j in (k0 + 1..=n).rev() {
                out[j - 1] = ((f[j] - out[j]) / (j as f64 * pi)).max(0.0);
            }
        }
        Ok(Self { scaled: out })
    }
}

fn without(p: &[f64], i: usize) -> Vec<f64> {
    p.iter()
        .enumerate()
        .filter_map(|(j, &v)| (j != i).then_some(v))
        .collect()
}

pub fn elem_sym(d: &Distribution) -> ElemSymTable {
    ElemSymTable::from_slice(d.probs())
}

pub fn elem_sym_leave_one_out(d: &Distribution, i: usize) -> Result<ElemSymTable> {
    elem_sym(d).leave_one_out(d.probs(), i)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dist_core::{sample_sorted_simplex, validate, RngSeed};
    use alloc::vec;
    use proptest::prelude::*;

    /// Brute force over all subsets.
    fn subset_oracle(p: &[f64]) -> Vec<f64> {
        let m = p.len();
        let mut e = vec![0.0; m + 1];
        for mask in 0u32..(1 << m) {
            let prod: f64 = (0..m)
                .filter(|j| mask >> j & 1 == 1)
                .map(|j| p[j])
                .product();
            e[mask.count_ones() as usize] += prod;
        }
        e
    }

    fn close(a: f64, b: f64, rel: f64) -> bool {
        libm::fabs(a - b) <= rel * libm::fmax(libm::fabs(a), libm::fabs(b)) || a == b
    }

    #[test]
    fn two_colors() {
        let d = validate(&[0.75, 0.25]).unwrap();
        let e = elem_sym(&d).values();
        assert_eq!(e, vec![1.0, 1.0, 0.1875]);
    }

    #[test]
    fn three_colors_against_subsets() {
        let p = [0.5, 0.3, 0.2];
        let oracle = subset_oracle(&p);
        // hand expansion: 0.15 + 0.10 + 0.06 and 0.03
        for (k, want) in [1.0, 1.0, 0.31, 0.03].into_iter().enumerate() {
            assert!(close(oracle[k], want, 1e-15));
        }
        let e = elem_sym(&validate(&p).unwrap()).values();
        for k in 0..4 {
            assert!(close(e[k], oracle[k], 1e-14), "k={k}");
        }
    }

    #[test]
    fn uniform_four() {
        let e = elem_sym(&Distribution::uniform(4).unwrap()).values();
        let binom = [1.0, 4.0, 6.0, 4.0, 1.0];
        for k in 0..=4 {
            assert!(close(e[k], binom[k] / libm::pow(4.0, k as f64), 1e-15));
        }
    }

    #[test]
    fn leave_one_out_examples() {
        let d = validate(&[0.75, 0.25]).unwrap();
        assert_eq!(
            elem_sym_leave_one_out(&d, 0).unwrap().values(),
            vec![1.0, 0.25]
        );

        let d = validate(&[0.5, 0.3, 0.2]).unwrap();
        let e = elem_sym_leave_one_out(&d, 1).unwrap().values();
        assert_eq!(e.len(), 3);
        assert!(close(e[1], 0.7, 1e-15) && close(e[2], 0.10, 1e-15), "{e:?}");

        let third = 1.0 / 3.0;
        let d = validate(&[third, third, third]).unwrap();
        let e = elem_sym_leave_one_out(&d, 2).unwrap().values();
        assert!(close(e[1], 2.0 / 3.0, 1e-15) && close(e[2], 1.0 / 9.0, 1e-15));

        assert_eq!(
            elem_sym_leave_one_out(&d, 3),
            Err(Error::IndexOutOfRange { index: 3, len: 3 })
        );
    }

    #[test]
    fn leave_one_out_dominant_entry() {
        // the forward downdate alone loses everything here
        let mut p = vec![0.9];
        p.extend(core::iter::repeat_n(0.1 / 40.0, 40));
        let d = validate(&p).unwrap();
        let got = elem_sym_leave_one_out(&d, 0).unwrap();
        let want = ElemSymTable::from_slice(&p[1..]);
        for (a, b) in got.scaled().iter().zip(want.scaled()) {
            assert!(close(*a, *b, 1e-10), "{a} vs {b}");
        }
    }

    #[test]
    fn leave_one_out_with_zeros() {
        let d = validate(&[1.0, 0.0, 0.0]).unwrap();
        let e = elem_sym_leave_one_out(&d, 0).unwrap();
        assert_eq!(e.scaled(), &[1.0, 0.0, 0.0]);
        let e = elem_sym_leave_one_out(&d, 2).unwrap();
        assert_eq!(e.scaled(), &[1.0, 1.0, 0.0]);
    }

    #[test]
    fn scaled_table_survives_large_m() {
        let t = elem_sym(&Distribution::uniform(365).unwrap());
        // raw e_365 = 365^-365 underflows; the scaled value does not
        assert!(t.value(365) == 0.0);
        assert!(t.distinct_prob(365) > 0.0);
        assert!(t.distinct_prob(366) == 0.0);
    }

    proptest! {
        #[test]
        fn matches_subset_enumeration(seed in any::<u64>(), m in 1usize..=12) {
            let d = sample_sorted_simplex(m, RngSeed(seed));
            let oracle = subset_oracle(d.probs());
            let e = elem_sym(&d).values();
            for k in 0..=m {
                prop_assert!(close(e[k], oracle[k], 1e-12), "k={} {} {}", k, e[k], oracle[k]);
            }
        }

        #[test]
        fn downdate_matches_recompute(seed in any::<u64>(), m in 1usize..=200, pick in any::<usize>()) {
            let d = sample_sorted_simplex(m, RngSeed(seed));
            let full = elem_sym(&d);
            for i in [pick % m, 0, m - 1] {
                let got = full.leave_one_out(d.probs(), i).unwrap();
                let want = ElemSymTable::from_slice(&without(d.probs(), i));
                prop_assert_eq!(got.source_len(), m - 1);
                for (k, (a, b)) in got.scaled().iter().zip(want.scaled()).enumerate() {
                    prop_assert!(close(*a, *b, 1e-10), "m={} i={} k={}: {} vs {}", m, i, k, a, b);
                }
            }
        }

        #[test]
        fn table_invariants(seed in any::<u64>(), m in 1usize..=200) {
            let d = sample_sorted_simplex(m, RngSeed(seed));
            let t = elem_sym(&d);
            let f = t.scaled();
            prop_assert_eq!(f[0], 1.0);
            prop_assert!(libm::fabs(f[1] - 1.0) <= 1e-12);
            let mut total = 0.0;
            for (k, &fk) in f.iter().enumerate() {
                prop_assert!(fk >= 0.0);
                // k!·e_k is a probability
                prop_assert!(fk <= 1.0 + 1e-12);
                // Maclaurin: k!·e_k ≤ e_1^k
                prop_assert!(fk <= libm::pow(f[1], k as f64) * (1.0 + 1e-9));
                total += fk;
            }
            prop_assert!(total >= 1.0);
        }
    }
}
