//! Seeded sampling: the alias method and uniform points on the sorted simplex.

use alloc::vec::Vec;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::Distribution;

/// Master seed for every random stream in the crate.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct RngSeed(pub u64);

impl RngSeed {
    /// Seed of stream `index`, decorrelated through SplitMix64.
    pub fn stream(self, index: u64) -> RngSeed {
        RngSeed(splitmix64(
            self.0
                .wrapping_add(index.wrapping_mul(0x9E37_79B9_7F4A_7C15)),
        ))
    }

    pub fn rng(self) -> ChaCha8Rng {
        ChaCha8Rng::seed_from_u64(self.0)
    }
}

fn splitmix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Vose's alias table: O(m) setup, two uniforms per draw.
#[derive(Debug, Clone)]
pub struct AliasSampler {
    prob: Vec<f64>,
    alias: Vec<u32>,
}

impl AliasSampler {
    pub fn new(d: &Distribution) -> Self {
        let p = d.probs();
        let m = p.len();
        assert!(m <= u32::MAX as usize);
        let mut scaled: Vec<f64> = p.iter().map(|&v| v * m as f64).collect();
        let mut prob = alloc::vec![1.0; m];
        let mut alias: Vec<u32> = (0..m as u32).collect();
        let (mut small, mut large): (Vec<usize>, Vec<usize>) =
            (0..m).partition(|&i| scaled[i] < 1.0);
        while let (Some(&s), Some(&l)) = (small.last(), large.last()) {
            small.pop();
            prob[s] = scaled[s];
            alias[s] = l as u32;
            scaled[l] -= 1.0 - scaled[s];
            if scaled[l] < 1.0 {
                large.pop();
                small.push(l);
            }
        }
        // leftovers carry mass within rounding of 1
        for i in small.into_iter().chain(large) {
            prob[i] = if p[i] > 0.0 { 1.0 } else { 0.0 };
        }
        Self { prob, alias }
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.prob.len()
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.prob.is_empty()
    }

    #[inline]
    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> usize {
        let i = rng.gen_range(0..self.prob.len());
        if rng.gen::<f64>() < self.prob[i] {
            i
        } else {
            self.alias[i] as usize
        }
    }
}

/// Endless i.i.d. color stream for one distribution.
#[derive(Debug, Clone)]
pub struct DiscreteStream {
    table: AliasSampler,
    rng: ChaCha8Rng,
}

impl Iterator for DiscreteStream {
    type Item = usize;

    #[inline]
    fn next(&mut self) -> Option<usize> {
        Some(self.table.sample(&mut self.rng))
    }
}

pub fn discrete_sampler(d: &Distribution, seed: RngSeed) -> DiscreteStream {
    DiscreteStream {
        table: AliasSampler::new(d),
        rng: seed.rng(),
    }
}

/// Uniform point of the sorted simplex `p_0 ≥ … ≥ p_{m−1} ≥ 0, Σ p = 1`:
/// normalized i.i.d. exponentials (a flat Dirichlet draw), then sorted.
pub fn sample_sorted_simplex(m: usize, seed: RngSeed) -> Distribution {
    sample_sorted_simplex_with(m, &mut seed.rng())
}

pub fn sample_sorted_simplex_with<R: Rng + ?Sized>(m: usize, rng: &mut R) -> Distribution {
    assert!(m >= 1, "simplex dimension must be positive");
    loop {
        let mut v: Vec<f64> = (0..m).map(|_| -libm::log(1.0 - rng.gen::<f64>())).collect();
        let total = crate::numeric::neumaier_sum(v.iter().copied());
        if !(total > 0.0) {
            continue;
        }
        v.iter_mut().for_each(|x| *x /= total);
        v.sort_unstable_by(|a, b| b.total_cmp(a));
        if let Ok(d) = Distribution::new(v) {
            return d;
        }
    }
}
