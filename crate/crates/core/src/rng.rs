//! Seeds and random streams.
//!
//! Every sampler is a pure function of `(params, seed)`. Sub-streams (one per
//! fitting iteration, per evaluation replicate, ...) are derived from a master
//! seed by hashing the index path through a SplitMix64 finalizer, so runs can
//! be parallelised without changing any result.

use rand::SeedableRng;
use rand_xoshiro::Xoshiro256PlusPlus;
use serde::{Deserialize, Serialize};

/// The generator used by every sampler in this crate.
pub type GraphRng = Xoshiro256PlusPlus;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Seed(pub u64);

impl Seed {
    /// Derive an independent child seed for stream `index`.
    pub fn derive(self, index: u64) -> Seed {
        Seed(mix64(self.0 ^ mix64(index.wrapping_add(0x9e37_79b9_7f4a_7c15))))
    }

    /// Derive along a path of indices, e.g. `(configuration, side, replicate)`.
    pub fn derive_path(self, path: &[u64]) -> Seed {
        path.iter().fold(self, |seed, &i| seed.derive(i))
    }

    pub fn rng(self) -> GraphRng {
        GraphRng::seed_from_u64(self.0)
    }
}

impl From<u64> for Seed {
    fn from(value: u64) -> Self {
        Seed(value)
    }
}

impl std::fmt::Display for Seed {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// SplitMix64 finalizer.
pub fn mix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}
