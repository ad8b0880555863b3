//! Portable seeded randomness.
//!
//! Every random stream in the crate is xoshiro256++ seeded through SplitMix64,
//! and all derived quantities (uniform doubles, bounded integers, geometric
//! skips) are computed here from raw 64-bit outputs so that a
//! reimplementation in another language can reproduce them bit for bit.
//! Independent substreams are keyed by hashing `(seed, index)` with
//! SplitMix64.

use rand_core::{RngCore, SeedableRng};
use rand_xoshiro::Xoshiro256PlusPlus;

pub type Rng = Xoshiro256PlusPlus;

const GOLDEN_GAMMA: u64 = 0x9e37_79b9_7f4a_7c15;

/// One SplitMix64 step: advances `state` and returns the mixed output.
pub fn splitmix64(state: &mut u64) -> u64 {
    *state = state.wrapping_add(GOLDEN_GAMMA);
    let mut z = *state;
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

/// Seed of substream `index` under `seed`.
pub fn substream_seed(seed: u64, index: u64) -> u64 {
    let mut s = seed;
    let a = splitmix64(&mut s);
    let mut t = a ^ index;
    splitmix64(&mut t)
}

/// Seed of the substream addressed by a path of indices, e.g.
/// `[grid_point, replicate, role]`.
pub fn derive_seed(seed: u64, path: &[u64]) -> u64 {
    path.iter().fold(seed, |s, &i| substream_seed(s, i))
}

pub fn rng_from_seed(seed: u64) -> Rng {
    Xoshiro256PlusPlus::seed_from_u64(seed)
}

/// Uniform double in `[0, 1)` from the top 53 bits.
#[inline]
pub fn uniform01(rng: &mut Rng) -> f64 {
    (rng.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
}

/// Uniform integer in `[0, bound)` by Lemire's multiply-and-reject method.
#[inline]
pub fn below(rng: &mut Rng, bound: u64) -> u64 {
    assert!(bound > 0);
    let mut x = rng.next_u64();
    let mut wide = (x as u128) * (bound as u128);
    let mut low = wide as u64;
    if low < bound {
        let threshold = bound.wrapping_neg() % bound;
        while low < threshold {
            x = rng.next_u64();
            wide = (x as u128) * (bound as u128);
            low = wide as u64;
        }
    }
    (wide >> 64) as u64
}

/// Number of failures before the first success in Bernoulli trials whose
/// failure probability has logarithm `log_q = ln(1 - p)`, `0 < p < 1`.
#[inline]
pub fn geometric_skip(rng: &mut Rng, log_q: f64) -> u64 {
    let u = 1.0 - uniform01(rng);
    // `as` saturates, so astronomically long skips clamp to u64::MAX.
    (u.ln() / log_q).floor() as u64
}
