//! Seeding conventions.
//!
//! Every random draw goes through ChaCha8. Pair-wise edge sampling uses one
//! ChaCha stream per row: vertex pair `(i, j)`, `i < j`, consumes output word
//! `j - i - 1` of stream `i` under the 64-bit graph seed. Sub-seeds for named
//! purposes (`"sample"`, `"init"`, ...) are derived with [`derive_seed`].

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// A 64-bit seed; identical seeds and parameters give identical outputs.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct RngSeed(pub u64);

impl From<u64> for RngSeed {
    fn from(v: u64) -> Self {
        RngSeed(v)
    }
}

/// Seed used when the caller supplies none.
pub const DEFAULT_SEED: RngSeed = RngSeed(0x5eed_f2ec_4e7a_0001);

const fn splitmix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

/// Derives a sub-seed for `(seed, purpose, index)`.
///
/// FNV-1a (64-bit) hashes the purpose string; two rounds of SplitMix64 mix in
/// the seed and the index.
pub fn derive_seed(seed: RngSeed, purpose: &str, index: u64) -> RngSeed {
    let mut h: u64 = 0xcbf2_9ce4_8422_2325;
    for b in purpose.bytes() {
        h ^= b as u64;
        h = h.wrapping_mul(0x0000_0100_0000_01b3);
    }
    RngSeed(splitmix64(splitmix64(seed.0 ^ h) ^ index))
}

impl RngSeed {
    pub fn rng(self) -> ChaCha8Rng {
        ChaCha8Rng::seed_from_u64(self.0)
    }

    /// Stream `stream` of the ChaCha8 generator keyed by this seed.
    pub fn stream(self, stream: u64) -> ChaCha8Rng {
        let mut r = ChaCha8Rng::seed_from_u64(self.0);
        r.set_stream(stream);
        r
    }
}

/// Uniform on `[0, 1)` from the top 53 bits of a word.
#[inline]
pub fn unit_f64(word: u64) -> f64 {
    (word >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
}
