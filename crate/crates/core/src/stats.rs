//! Seeded substreams and Monte-Carlo summaries.
//!
//! Work is always split into [`SUBSTREAMS`] pieces, each with its own ChaCha
//! stream derived from the user seed, so results do not depend on how many
//! threads run them.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

pub const SUBSTREAMS: usize = 64;

const Z95: f64 = 1.959_963_984_540_054;

pub fn substream(seed: u64, index: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    rng
}

/// Splits `total` into `parts` near-equal shares, larger shares first.
pub fn split_count(total: u64, parts: usize) -> Vec<u64> {
    let p = parts as u64;
    (0..p).map(|i| total / p + u64::from(i < total % p)).collect()
}

/// 95% Wilson score interval for `successes` out of `trials`.
pub fn wilson_interval(successes: u64, trials: u64) -> (f64, f64) {
    if trials == 0 {
        return (0.0, 1.0);
    }
    let n = trials as f64;
    let p = successes as f64 / n;
    let z2 = Z95 * Z95;
    let denom = 1.0 + z2 / n;
    let center = (p + z2 / (2.0 * n)) / denom;
    let half = Z95 * (p * (1.0 - p) / n + z2 / (4.0 * n * n)).sqrt() / denom;
    let lo = if successes == 0 { 0.0 } else { (center - half).max(0.0) };
    let hi = if successes == trials { 1.0 } else { (center + half).min(1.0) };
    (lo, hi)
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct McEstimate {
    pub estimate: f64,
    pub ci_low: f64,
    pub ci_high: f64,
    pub successes: u64,
    pub samples: u64,
    pub seed: u64,
}

impl McEstimate {
    pub fn from_counts(successes: u64, samples: u64, seed: u64) -> Self {
        let (ci_low, ci_high) = wilson_interval(successes, samples);
        McEstimate {
            estimate: if samples == 0 { 0.0 } else { successes as f64 / samples as f64 },
            ci_low,
            ci_high,
            successes,
            samples,
            seed,
        }
    }
}

/// Maps `f` over `0..len`, in parallel when the `parallel` feature is on.
/// Output order is always index order.
pub fn par_map<T, F>(len: usize, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(usize) -> T + Sync + Send,
{
    #[cfg(feature = "parallel")]
    {
        use rayon::prelude::*;
        (0..len).into_par_iter().map(f).collect()
    }
    #[cfg(not(feature = "parallel"))]
    {
        (0..len).map(f).collect()
    }
}

/// Counts successes of `trial` over `samples` draws split across substreams.
pub(crate) fn mc_count<F>(samples: u64, seed: u64, trial: F) -> u64
where
    F: Fn(&mut ChaCha8Rng) -> bool + Sync + Send,
{
    let shares = split_count(samples, SUBSTREAMS);
    par_map(SUBSTREAMS, |i| {
        let mut rng = substream(seed, i as u64);
        (0..shares[i]).filter(|_| trial(&mut rng)).count() as u64
    })
    .into_iter()
    .sum()
}
