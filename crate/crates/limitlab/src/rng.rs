//! Seeded pseudo-randomness as a pure function of (seed, index).
//!
//! The generator is the splitmix64 finalizer over the counter
//! `seed + index * GOLDEN_GAMMA`. No state is kept anywhere, so any item of
//! any seeded stream can be recomputed independently and the whole artifact
//! stays bit-reproducible across platforms and runs. The constants below are
//! part of the output contract and are echoed into run metadata.

pub const GOLDEN_GAMMA: u64 = 0x9E3779B97F4A7C15;
pub const MIX_MUL_1: u64 = 0xBF58476D1CE4E5B9;
pub const MIX_MUL_2: u64 = 0x94D049BB133111EB;

fn mix(mut z: u64) -> u64 {
    z = (z ^ (z >> 30)).wrapping_mul(MIX_MUL_1);
    z = (z ^ (z >> 27)).wrapping_mul(MIX_MUL_2);
    z ^ (z >> 31)
}

/// The `index`-th draw of the stream named by `seed` (1-based indices by
/// convention; index 0 is legal and distinct).
pub fn draw(seed: u64, index: u64) -> u64 {
    mix(seed.wrapping_add(GOLDEN_GAMMA.wrapping_mul(index)))
}

/// Uniform-ish value in `1..=bound` (bound >= 1). Modulo bias is irrelevant
/// at the bounds this crate uses (tiny compared to 2^64).
pub fn draw_in(seed: u64, index: u64, bound: u64) -> u64 {
    assert!(bound >= 1);
    draw(seed, index) % bound + 1
}
