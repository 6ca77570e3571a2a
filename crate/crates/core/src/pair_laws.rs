//! The two pair-color laws of a color distribution and their distance.
//!
//! * Method 1 draws two objects per round, without memory, until a round
//!   matches; the pair color `X` has `P(X = i) = p_i² / f₂` with
//!   `f₂ = Σ p_j²`.
//! * Method 2 draws one object at a time, with memory, until a color repeats;
//!   the pair color `Y` has
//!   `P(Y = i) = p_i² · Σ_k (k+1)!·e_k(p without i)`.
//!
//! The discrepancy `D(p)` is the total variation distance between the two.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use rand::Rng;

use crate::dist_core::{elem_sym, AliasSampler, Distribution, RngSeed};
use crate::error::{Error, Result};
use crate::exec::{stream_share, Sequential, StreamExecutor, DEFAULT_STREAMS};
use crate::numeric::neumaier_sum;

/// Largest color count accepted by [`m2_oracle_exact`] (2^20 subset states).
pub const ORACLE_MAX_COLORS: usize = 20;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Method {
    M1,
    M2,
}

impl Method {
    pub fn as_str(self) -> &'static str {
        match self {
            Method::M1 => "m1",
            Method::M2 => "m2",
        }
    }
}

/// A law over the source's color indices, tagged with the method producing it.
#[derive(Debug, Clone, PartialEq)]
pub struct PairLaw {
    pub method: Method,
    pub probs: Vec<f64>,
}

impl AsRef<[f64]> for PairLaw {
    fn as_ref(&self) -> &[f64] {
        &self.probs
    }
}

/// Expected effort of each method.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DrawStats {
    /// `E N = Σ_{k≥0} P(N > k)`, with `N` the Method-2 draw count.
    pub expected_draws_m2: f64,
    /// Mean of the geometric number of Method-1 rounds, `1/f₂`.
    pub expected_pairs_m1: f64,
}

/// Empirical pair-color frequencies from a seeded simulation.
#[derive(Debug, Clone, PartialEq)]
pub struct SimReport {
    pub estimated_probs: Vec<f64>,
    pub counts: Vec<u64>,
    pub trials: u64,
    pub seed: RngSeed,
    pub std_errors: Vec<f64>,
    /// Trials abandoned at a step limit (only the shoes procedure has one).
    pub truncated: u64,
}

impl SimReport {
    pub(crate) fn from_counts(counts: Vec<u64>, seed: RngSeed, truncated: u64) -> Self {
        let trials: u64 = counts.iter().sum();
        let n = trials.max(1) as f64;
        let estimated_probs: Vec<f64> = counts.iter().map(|&c| c as f64 / n).collect();
        let std_errors = estimated_probs
            .iter()
            .map(|&q| libm::sqrt(q * (1.0 - q) / n))
            .collect();
        Self {
            estimated_probs,
            counts,
            trials,
            seed,
            std_errors,
            truncated,
        }
    }
}

/// `f₂ = Σ p_i²`, the chance two independent draws match.
pub fn match_probability(d: &Distribution) -> f64 {
    neumaier_sum(d.probs().iter().map(|&p| p * p))
}

pub fn derive_m1(d: &Distribution) -> PairLaw {
    let f2 = match_probability(d);
    PairLaw {
        method: Method::M1,
        probs: d.probs().iter().map(|&p| p * p / f2).collect(),
    }
}

/// Method-2 law through leave-one-out elementary symmetric tables.
///
/// Works on the factorial-scaled tables, so each summand
/// `(k+1)!·e'_k = (k+1)·(k!·e'_k)` is at most `k + 1` and nothing overflows.
/// Colors sharing a probability share a table.
pub fn derive_m2(d: &Distribution) -> PairLaw {
    let p = d.probs();
    let full = elem_sym(d);
    let mut weights: BTreeMap<u64, f64> = BTreeMap::new();
    let probs = p
        .iter()
        .enumerate()
        .map(|(i, &pi)| {
            if pi == 0.0 {
                return 0.0;
            }
            let w = *weights.entry(pi.to_bits()).or_insert_with(|| {
                let reduced = full.leave_one_out(p, i).expect("index in range");
                neumaier_sum(
                    reduced
                        .scaled()
                        .iter()
                        .enumerate()
                        .map(|(k, &f)| (k + 1) as f64 * f),
                )
            });
            pi * pi * w
        })
        .collect();
    PairLaw {
        method: Method::M2,
        probs,
    }
}

/// Method-2 law by exhaustive absorption over the sets of colors seen once.
///
/// From the set `S`, a draw of `c ∈ S` ends with pair color `c` and a draw of
/// `c ∉ S` moves to `S ∪ {c}`. Masks only grow, so visiting them in
/// increasing numeric order is a topological order.
pub fn m2_oracle_exact(d: &Distribution) -> Result<PairLaw> {
    let p = d.probs();
    let m = p.len();
    if m > ORACLE_MAX_COLORS {
        return Err(Error::TooManyColors {
            m,
            max: ORACLE_MAX_COLORS,
        });
    }
    let mut reach = alloc::vec![0.0f64; 1 << m];
    reach[0] = 1.0;
    let mut absorbed = alloc::vec![0.0f64; m];
    for mask in 0..reach.len() {
        let r = reach[mask];
        if r == 0.0 {
            continue;
        }
        for (c, &pc) in p.iter().enumerate() {
            let bit = 1 << c;
            if mask & bit != 0 {
                absorbed[c] += r * pc;
            } else {
                reach[mask | bit] += r * pc;
            }
        }
    }
    Ok(PairLaw {
        method: Method::M2,
        probs: absorbed,
    })
}

/// One run of the sequential procedure; returns the repeated color.
/// `stamp` marks colors seen in the current run with `run`.
#[inline]
fn sequential_match<R: Rng + ?Sized>(
    sampler: &AliasSampler,
    rng: &mut R,
    stamp: &mut [u64],
    run: u64,
) -> usize {
    loop {
        let c = sampler.sample(rng);
        if stamp[c] == run {
            return c;
        }
        stamp[c] = run;
    }
}

/// Pair-color counts of `trials` sequential runs on one random stream.
pub fn m2_simulate_stream(sampler: &AliasSampler, trials: u64, seed: RngSeed) -> Vec<u64> {
    let mut rng = seed.rng();
    let mut stamp = alloc::vec![0u64; sampler.len()];
    let mut counts = alloc::vec![0u64; sampler.len()];
    for run in 1..=trials {
        counts[sequential_match(sampler, &mut rng, &mut stamp, run)] += 1;
    }
    counts
}

/// Simulates Method 2 over `streams` seeded streams run by `exec`. The
/// result depends only on `(d, trials, seed, streams)`.
pub fn m2_simulate_with<E: StreamExecutor>(
    d: &Distribution,
    trials: u64,
    seed: RngSeed,
    streams: usize,
    exec: &E,
) -> Result<SimReport> {
    if trials == 0 || streams == 0 {
        return Err(Error::InvalidArgument(
            "trials and streams must be positive",
        ));
    }
    let sampler = AliasSampler::new(d);
    let parts = exec.run(streams, |s| {
        m2_simulate_stream(
            &sampler,
            stream_share(trials, streams, s),
            seed.stream(s as u64),
        )
    });
    let mut counts = alloc::vec![0u64; d.len()];
    for part in parts {
        counts.iter_mut().zip(part).for_each(|(a, b)| *a += b);
    }
    Ok(SimReport::from_counts(counts, seed, 0))
}

pub fn m2_simulate(d: &Distribution, trials: u64, seed: RngSeed) -> Result<SimReport> {
    m2_simulate_with(d, trials, seed, DEFAULT_STREAMS, &Sequential)
}

/// The three equivalent forms of total variation distance.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TvdForms {
    /// `½ Σ |a_i − b_i|`
    pub half_l1: f64,
    /// `Σ (a_i − b_i)⁺`
    pub positive: f64,
    /// `Σ (a_i − b_i)⁻`
    pub negative: f64,
}

pub fn tvd_forms(a: &[f64], b: &[f64]) -> Result<TvdForms> {
    if a.len() != b.len() {
        return Err(Error::IndexMismatch {
            left: a.len(),
            right: b.len(),
        });
    }
    let diffs = || a.iter().zip(b).map(|(x, y)| x - y);
    Ok(TvdForms {
        half_l1: 0.5 * neumaier_sum(diffs().map(libm::fabs)),
        positive: neumaier_sum(diffs().map(|t| t.max(0.0))),
        negative: neumaier_sum(diffs().map(|t| (-t).max(0.0))),
    })
}

/// Total variation distance between two laws on the same index set.
pub fn tvd<A: AsRef<[f64]> + ?Sized, B: AsRef<[f64]> + ?Sized>(a: &A, b: &B) -> Result<f64> {
    let forms = tvd_forms(a.as_ref(), b.as_ref())?;
    debug_assert!(
        libm::fabs(forms.positive - forms.negative) <= 1e-9,
        "inputs do not carry equal mass: {forms:?}"
    );
    Ok(forms.half_l1)
}

/// `D(p) = d_TV(M1(p), M2(p))`.
pub fn discrepancy(d: &Distribution) -> f64 {
    tvd(&derive_m1(d), &derive_m2(d)).expect("derived laws share the source index set")
}

/// Expected draws under Method 2 and expected rounds under Method 1.
pub fn draw_stats(d: &Distribution) -> DrawStats {
    // P(N > k) is the chance the first k draws are distinct, k!·e_k
    let table = elem_sym(d);
    DrawStats {
        expected_draws_m2: neumaier_sum(table.scaled().iter().copied()),
        expected_pairs_m1: 1.0 / match_probability(d),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dist_core::{sample_sorted_simplex, validate};
    use alloc::vec;

    fn assert_close(a: &[f64], b: &[f64], tol: f64) {
        assert_eq!(a.len(), b.len());
        for (x, y) in a.iter().zip(b) {
            assert!(libm::fabs(x - y) <= tol, "{a:?} vs {b:?}");
        }
    }

    #[test]
    fn match_probability_examples() {
        assert_eq!(match_probability(&validate(&[0.75, 0.25]).unwrap()), 0.625);
        let u = Distribution::uniform(365).unwrap();
        assert!(libm::fabs(match_probability(&u) - 1.0 / 365.0) < 1e-17);
        assert_eq!(match_probability(&validate(&[1.0]).unwrap()), 1.0);
    }

    #[test]
    fn m1_examples() {
        let m1 = derive_m1(&validate(&[0.75, 0.25]).unwrap());
        assert_eq!(m1.method, Method::M1);
        assert_close(&m1.probs, &[0.9, 0.1], 1e-15);
        let u = derive_m1(&Distribution::uniform(7).unwrap());
        assert_close(&u.probs, &[1.0 / 7.0; 7], 1e-15);
        let m1 = derive_m1(&validate(&[0.5, 0.3, 0.2]).unwrap());
        assert_close(&m1.probs, &[25.0 / 38.0, 9.0 / 38.0, 4.0 / 38.0], 1e-15);
    }

    #[test]
    fn m2_two_colors() {
        let d = validate(&[0.75, 0.25]).unwrap();
        let m2 = derive_m2(&d);
        assert_eq!(m2.method, Method::M2);
        assert_close(&m2.probs, &[27.0 / 32.0, 5.0 / 32.0], 1e-15);
        assert_close(
            &m2_oracle_exact(&d).unwrap().probs,
            &[0.84375, 0.15625],
            1e-15,
        );
    }

    #[test]
    fn m2_uniform_is_uniform() {
        for m in [1, 2, 5, 50, 365] {
            let m2 = derive_m2(&Distribution::uniform(m).unwrap());
            assert_close(&m2.probs, &vec![1.0 / m as f64; m], 1e-13);
        }
    }

    #[test]
    fn m2_three_colors_matches_oracle() {
        let d = validate(&[0.5, 0.3, 0.2]).unwrap();
        assert_close(
            &derive_m2(&d).probs,
            &m2_oracle_exact(&d).unwrap().probs,
            1e-12,
        );
    }

    #[test]
    fn oracle_point_mass_and_cap() {
        let d = validate(&[1.0]).unwrap();
        assert_eq!(m2_oracle_exact(&d).unwrap().probs, vec![1.0]);
        let big = Distribution::uniform(21).unwrap();
        assert_eq!(
            m2_oracle_exact(&big),
            Err(Error::TooManyColors { m: 21, max: 20 })
        );
    }

    #[test]
    fn oracle_agrees_on_random_inputs() {
        for seed in 0..40 {
            let m = 1 + (seed as usize % 12);
            let d = sample_sorted_simplex(m, RngSeed(seed));
            assert_close(
                &derive_m2(&d).probs,
                &m2_oracle_exact(&d).unwrap().probs,
                1e-12,
            );
        }
    }

    #[test]
    fn zero_colors_stay_zero() {
        let d = validate(&[0.0, 0.6, 0.0, 0.4]).unwrap();
        let m2 = derive_m2(&d);
        assert_eq!(m2.probs[0], 0.0);
        assert_eq!(m2.probs[2], 0.0);
        assert_close(&m2.probs, &m2_oracle_exact(&d).unwrap().probs, 1e-14);
        assert_eq!(derive_m1(&d).probs[2], 0.0);
    }

    #[test]
    fn tvd_examples() {
        let a = [0.3, 0.7];
        assert_eq!(tvd(&a[..], &a[..]).unwrap(), 0.0);
        // Bernoulli(0.9) against Bernoulli(0.84375)
        let t = tvd(&[0.1, 0.9][..], &[0.15625, 0.84375][..]).unwrap();
        assert!(libm::fabs(t - 0.05625) < 1e-15);
        assert_eq!(tvd(&[1.0, 0.0][..], &[0.0, 1.0][..]).unwrap(), 1.0);
        assert_eq!(
            tvd(&[1.0][..], &[0.5, 0.5][..]),
            Err(Error::IndexMismatch { left: 1, right: 2 })
        );
    }

    #[test]
    fn discrepancy_examples() {
        let d = validate(&[0.75, 0.25]).unwrap();
        assert!(libm::fabs(discrepancy(&d) - 0.05625) < 1e-15);
        assert!(discrepancy(&Distribution::uniform(9).unwrap()) < 1e-15);
        let x1 = 0.696_659_946_595_164_319_6;
        let d = validate(&[x1, 1.0 - x1]).unwrap();
        assert!(libm::fabs(discrepancy(&d) - 0.060_846_799_231_813_547_76) < 1e-15);
    }

    #[test]
    fn draw_stats_examples() {
        let s = draw_stats(&validate(&[1.0]).unwrap());
        assert_eq!((s.expected_draws_m2, s.expected_pairs_m1), (2.0, 1.0));

        // sequences: 2 draws always, a third with probability 2·p0·p1
        let s = draw_stats(&validate(&[0.75, 0.25]).unwrap());
        assert!(libm::fabs(s.expected_draws_m2 - 2.375) < 1e-15);
        assert!(libm::fabs(s.expected_pairs_m1 - 1.6) < 1e-15);
    }

    #[test]
    fn birthday_expected_draws() {
        // Direct product form of Σ_k (365)_k / 365^k.
        let mut oracle = 0.0;
        let mut term = 1.0;
        for k in 0..=365 {
            oracle += term;
            term *= (365 - k) as f64 / 365.0;
        }
        let s = draw_stats(&Distribution::uniform(365).unwrap());
        assert!(libm::fabs(s.expected_draws_m2 - oracle) < 1e-12);
        assert!(libm::fabs(s.expected_draws_m2 - 24.616_585_894_598_85) < 1e-10);
        // the familiar 23.6166 counts the draws before the repeat
        assert!(libm::fabs(s.expected_draws_m2 - 1.0 - 23.6166) < 5e-5);
        assert!(libm::fabs(s.expected_pairs_m1 - 365.0) < 1e-10);
    }

    #[test]
    fn simulation_point_mass_and_two_colors() {
        let r = m2_simulate(&validate(&[1.0]).unwrap(), 1000, RngSeed(1)).unwrap();
        assert_eq!(r.counts, vec![1000]);
        assert_eq!(r.std_errors, vec![0.0]);

        let d = validate(&[0.75, 0.25]).unwrap();
        let r = m2_simulate(&d, 1_000_000, RngSeed(8)).unwrap();
        assert_eq!(r.trials, 1_000_000);
        assert!(libm::fabs(r.estimated_probs[0] - 0.84375) <= 4.0 * r.std_errors[0]);
        assert!(m2_simulate(&d, 0, RngSeed(8)).is_err());
    }

    #[test]
    fn simulation_uniform_five() {
        let d = Distribution::uniform(5).unwrap();
        let r = m2_simulate(&d, 1_000_000, RngSeed(21)).unwrap();
        let band = 4.0 * libm::sqrt(0.2 * 0.8 / 1e6);
        assert!(
            r.estimated_probs
                .iter()
                .all(|&q| libm::fabs(q - 0.2) < band),
            "{r:?}"
        );
    }

    #[test]
    fn simulation_three_colors_against_oracle() {
        let d = validate(&[0.5, 0.3, 0.2]).unwrap();
        let exact = m2_oracle_exact(&d).unwrap();
        let r = m2_simulate(&d, 1_000_000, RngSeed(99)).unwrap();
        for i in 0..3 {
            assert!(libm::fabs(r.estimated_probs[i] - exact.probs[i]) <= 4.0 * r.std_errors[i]);
        }
    }

    #[test]
    fn simulation_is_reproducible() {
        let d = validate(&[0.5, 0.3, 0.2]).unwrap();
        let a = m2_simulate(&d, 10_000, RngSeed(5)).unwrap();
        let b = m2_simulate(&d, 10_000, RngSeed(5)).unwrap();
        assert_eq!(a, b);
        let c = m2_simulate(&d, 10_000, RngSeed(6)).unwrap();
        assert_ne!(a.counts, c.counts);
    }
}
