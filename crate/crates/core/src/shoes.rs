//! Left/right pairs: left colors follow `p`, right colors follow `q`.
//!
//! Method 1 conditions one left and one right draw on matching:
//! `P(X = i) = p_i q_i / f₂`, `f₂ = Σ p_i q_i`. Method 2 collects a left
//! object at odd times and a right object at even times and reports the
//! color of the object that first completes a left/right pair.

use alloc::vec::Vec;

use rand::Rng;

use crate::dist_core::{AliasSampler, Distribution, RngSeed};
use crate::error::{Error, Result};
use crate::exec::{stream_share, Sequential, StreamExecutor, DEFAULT_STREAMS};
use crate::numeric::neumaier_sum;
use crate::pair_laws::{tvd, Method, PairLaw, SimReport};

/// Largest color count accepted by [`shoes_m2_exact`].
pub const SHOES_EXACT_MAX_COLORS: usize = 10;
/// Tolerated fraction of simulation runs cut off at the step limit.
pub const MAX_TRUNCATED_FRACTION: f64 = 1e-6;
/// Default step limit is this many times `m + 1/f₂`.
pub const DEFAULT_HORIZON_FACTOR: f64 = 40.0;

/// Which side the next object is drawn for.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Side {
    Left,
    Right,
}

/// State of the alternating procedure before any match: colors seen on each
/// side (disjoint, since a shared color would already be a match) and the
/// side drawn next.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct AbsorptionState {
    pub left_seen: u32,
    pub right_seen: u32,
    pub next_side: Side,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ShoePair {
    left: Distribution,
    right: Distribution,
}

impl ShoePair {
    pub fn new(left: Distribution, right: Distribution) -> Result<Self> {
        if left.len() != right.len() {
            return Err(Error::InvalidPair {
                reason: "left and right have different lengths",
            });
        }
        let pair = Self { left, right };
        if !(shoes_match_probability(&pair) > 0.0) {
            return Err(Error::InvalidPair {
                reason: "no color has positive mass on both sides",
            });
        }
        Ok(pair)
    }

    pub fn left(&self) -> &Distribution {
        &self.left
    }

    pub fn right(&self) -> &Distribution {
        &self.right
    }

    pub fn len(&self) -> usize {
        self.left.len()
    }

    pub fn is_empty(&self) -> bool {
        self.left.is_empty()
    }

    /// The same pair with left and right exchanged.
    pub fn swapped(&self) -> ShoePair {
        ShoePair {
            left: self.right.clone(),
            right: self.left.clone(),
        }
    }
}

/// `f₂ = Σ p_i q_i`.
pub fn shoes_match_probability(sp: &ShoePair) -> f64 {
    neumaier_sum(
        sp.left
            .probs()
            .iter()
            .zip(sp.right.probs())
            .map(|(p, q)| p * q),
    )
}

pub fn shoes_m1(sp: &ShoePair) -> PairLaw {
    let f2 = shoes_match_probability(sp);
    let probs = sp
        .left
        .probs()
        .iter()
        .zip(sp.right.probs())
        .map(|(p, q)| p * q / f2)
        .collect();
    PairLaw {
        method: Method::M1,
        probs,
    }
}

/// Exact Method-2 law by level-order absorption over [`AbsorptionState`]s.
///
/// States are coded in base 3 (digit 1: seen left, digit 2: seen right), so
/// adding a color always raises the code and increasing order is
/// topological. For fixed seen sets the two sides recycle into each other:
/// a left draw of a left-seen color (mass `α`) just hands the turn to the
/// right, and a right draw of a right-seen color (mass `β`) hands it back.
/// With inflows `u` (left to move) and `v` (right to move) the total visits
/// are `V_L = (u + βv)/(1 − αβ)` and `V_R = (v + αu)/(1 − αβ)`, which sums the
/// geometric recycling exactly.
pub fn shoes_m2_exact(sp: &ShoePair) -> Result<PairLaw> {
    let m = sp.len();
    if m > SHOES_EXACT_MAX_COLORS {
        return Err(Error::TooManyColors {
            m,
            max: SHOES_EXACT_MAX_COLORS,
        });
    }
    let (p, q) = (sp.left.probs(), sp.right.probs());
    let pow3: Vec<usize> = (0..m).map(|c| 3usize.pow(c as u32)).collect();
    let states = 3usize.pow(m as u32);
    let mut left_in = alloc::vec![0.0f64; states];
    let mut right_in = alloc::vec![0.0f64; states];
    left_in[0] = 1.0;
    let mut absorbed = alloc::vec![0.0f64; m];
    let mut digits = alloc::vec![0u8; m];
    for code in 0..states {
        if code > 0 {
            // base-3 increment of the digit vector
            for d in digits.iter_mut() {
                *d += 1;
                if *d < 3 {
                    break;
                }
                *d = 0;
            }
        }
        let (u, v) = (left_in[code], right_in[code]);
        if u == 0.0 && v == 0.0 {
            continue;
        }
        let (mut alpha, mut left_fresh, mut beta, mut right_fresh) = (0.0, 0.0, 0.0, 0.0);
        for c in 0..m {
            if digits[c] == 1 {
                alpha += p[c];
            } else {
                left_fresh += p[c];
            }
            if digits[c] == 2 {
                beta += q[c];
            } else {
                right_fresh += q[c];
            }
        }
        // 1 − αβ without cancellation
        let stay = left_fresh + alpha * right_fresh;
        if !(stay > 0.0) {
            continue;
        }
        let visits_left = (u + beta * v) / stay;
        let visits_right = (v + alpha * u) / stay;
        for c in 0..m {
            match digits[c] {
                0 => {
                    right_in[code + pow3[c]] += visits_left * p[c];
                    left_in[code + 2 * pow3[c]] += visits_right * q[c];
                }
                1 => absorbed[c] += visits_right * q[c],
                _ => absorbed[c] += visits_left * p[c],
            }
        }
    }
    Ok(PairLaw {
        method: Method::M2,
        probs: absorbed,
    })
}

/// Default step limit `40·(m + 1/f₂)`.
pub fn default_max_steps(sp: &ShoePair) -> u64 {
    let horizon = DEFAULT_HORIZON_FACTOR * (sp.len() as f64 + 1.0 / shoes_match_probability(sp));
    libm::ceil(horizon).min(u64::MAX as f64) as u64
}

struct ShoeSamplers {
    left: AliasSampler,
    right: AliasSampler,
}

/// One alternating run; `None` when no match within `max_steps` draws.
#[inline]
fn alternating_match<R: Rng + ?Sized>(
    s: &ShoeSamplers,
    rng: &mut R,
    left_seen: &mut [u64],
    right_seen: &mut [u64],
    run: u64,
    max_steps: u64,
) -> Option<usize> {
    let mut step = 0;
    while step < max_steps {
        let c = s.left.sample(rng);
        if right_seen[c] == run {
            return Some(c);
        }
        left_seen[c] = run;
        step += 1;
        if step == max_steps {
            break;
        }
        let c = s.right.sample(rng);
        if left_seen[c] == run {
            return Some(c);
        }
        right_seen[c] = run;
        step += 1;
    }
    None
}

fn simulate_stream(
    s: &ShoeSamplers,
    m: usize,
    trials: u64,
    seed: RngSeed,
    max_steps: u64,
) -> (Vec<u64>, u64) {
    let mut rng = seed.rng();
    let mut left_seen = alloc::vec![0u64; m];
    let mut right_seen = alloc::vec![0u64; m];
    let mut counts = alloc::vec![0u64; m];
    let mut truncated = 0;
    for run in 1..=trials {
        match alternating_match(s, &mut rng, &mut left_seen, &mut right_seen, run, max_steps) {
            Some(c) => counts[c] += 1,
            None => truncated += 1,
        }
    }
    (counts, truncated)
}

/// Simulated Method-2 law. Runs exceeding `max_steps` (default
/// [`default_max_steps`]) are left out of the frequencies and counted in
/// `truncated`; more than [`MAX_TRUNCATED_FRACTION`] of them is an error.
pub fn shoes_m2_simulate_with<E: StreamExecutor>(
    sp: &ShoePair,
    trials: u64,
    seed: RngSeed,
    max_steps: Option<u64>,
    streams: usize,
    exec: &E,
) -> Result<SimReport> {
    let max_steps = max_steps.unwrap_or_else(|| default_max_steps(sp));
    if trials == 0 || streams == 0 || max_steps < 2 {
        return Err(Error::InvalidArgument(
            "need trials >= 1 and max_steps >= 2",
        ));
    }
    let m = sp.len();
    let samplers = ShoeSamplers {
        left: AliasSampler::new(&sp.left),
        right: AliasSampler::new(&sp.right),
    };
    let parts = exec.run(streams, |s| {
        simulate_stream(
            &samplers,
            m,
            stream_share(trials, streams, s),
            seed.stream(s as u64),
            max_steps,
        )
    });
    let mut counts = alloc::vec![0u64; m];
    let mut truncated = 0;
    for (part, cut) in parts {
        counts.iter_mut().zip(part).for_each(|(a, b)| *a += b);
        truncated += cut;
    }
    if truncated > 0 && truncated as f64 >= MAX_TRUNCATED_FRACTION * trials as f64 {
        return Err(Error::ExcessTruncation { truncated, trials });
    }
    Ok(SimReport::from_counts(counts, seed, truncated))
}

pub fn shoes_m2_simulate(
    sp: &ShoePair,
    trials: u64,
    seed: RngSeed,
    max_steps: Option<u64>,
) -> Result<SimReport> {
    shoes_m2_simulate_with(sp, trials, seed, max_steps, DEFAULT_STREAMS, &Sequential)
}

/// `D(p, q)` with a one-sigma error bar (zero on the exact path).
#[derive(Debug, Clone, PartialEq)]
pub struct ShoesDiscrepancy {
    pub value: f64,
    pub error_bar: f64,
    pub exact: bool,
    pub m1: PairLaw,
    pub m2: PairLaw,
}

/// Delta-method standard error of `½ Σ |x_i − Q̂_i|` for multinomial
/// frequencies `Q̂` from `n` runs: with `s_i = sign(x_i − Q̂_i)`,
/// `Var ≈ (Σ s_i² Q̂_i − (Σ s_i Q̂_i)²) / 4n`.
fn tvd_error_bar(exact: &[f64], freq: &[f64], n: u64) -> f64 {
    let (mut second, mut first) = (0.0, 0.0);
    for (x, q) in exact.iter().zip(freq) {
        let s = (x - q).signum() * f64::from(u8::from(x != q));
        second += s * s * q;
        first += s * q;
    }
    0.5 * libm::sqrt(((second - first * first).max(0.0)) / n.max(1) as f64)
}

pub fn shoes_discrepancy_with<E: StreamExecutor>(
    sp: &ShoePair,
    exact_if_small: bool,
    trials: u64,
    seed: RngSeed,
    streams: usize,
    exec: &E,
) -> Result<ShoesDiscrepancy> {
    let m1 = shoes_m1(sp);
    if exact_if_small && sp.len() <= SHOES_EXACT_MAX_COLORS {
        let m2 = shoes_m2_exact(sp)?;
        let value = tvd(&m1, &m2)?;
        return Ok(ShoesDiscrepancy {
            value,
            error_bar: 0.0,
            exact: true,
            m1,
            m2,
        });
    }
    let sim = shoes_m2_simulate_with(sp, trials, seed, None, streams, exec)?;
    let value = tvd(&m1, &sim.estimated_probs[..])?;
    let error_bar = tvd_error_bar(&m1.probs, &sim.estimated_probs, sim.trials);
    let m2 = PairLaw {
        method: Method::M2,
        probs: sim.estimated_probs,
    };
    Ok(ShoesDiscrepancy {
        value,
        error_bar,
        exact: false,
        m1,
        m2,
    })
}

pub fn shoes_discrepancy(
    sp: &ShoePair,
    exact_if_small: bool,
    trials: u64,
    seed: RngSeed,
) -> Result<ShoesDiscrepancy> {
    shoes_discrepancy_with(
        sp,
        exact_if_small,
        trials,
        seed,
        DEFAULT_STREAMS,
        &Sequential,
    )
}

/// `p = p(n, n^{−1/4})` on the left and `q = p(n, n^{−2/3})` on the right:
/// Method 1 concentrates on color 0 while Method 2 almost never ends there.
pub fn witness_family(n: u64) -> Result<ShoePair> {
    if n < 16 {
        return Err(Error::NTooSmall(n));
    }
    let nf = n as f64;
    let left = Distribution::head_and_tail(n, libm::pow(nf, -0.25))?;
    let right = Distribution::head_and_tail(n, libm::pow(nf, -2.0 / 3.0))?;
    ShoePair::new(left, right)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SupRow {
    pub n: u64,
    pub d: f64,
    pub error_bar: f64,
}

/// Simulated `D` along the witness family; row `n` uses seed stream `n`.
pub fn sup_one_demo_with<E: StreamExecutor>(
    n_list: &[u64],
    trials: u64,
    seed: RngSeed,
    streams: usize,
    exec: &E,
) -> Result<Vec<SupRow>> {
    n_list
        .iter()
        .map(|&n| {
            let sp = witness_family(n)?;
            let r = shoes_discrepancy_with(&sp, false, trials, seed.stream(n), streams, exec)?;
            Ok(SupRow {
                n,
                d: r.value,
                error_bar: r.error_bar,
            })
        })
        .collect()
}

pub fn sup_one_demo(n_list: &[u64], trials: u64, seed: RngSeed) -> Result<Vec<SupRow>> {
    sup_one_demo_with(n_list, trials, seed, DEFAULT_STREAMS, &Sequential)
}
