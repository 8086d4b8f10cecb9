//! Reproducible random streams.
//!
//! Every independent unit of work (a judge, a bootstrap replicate, a Monte
//! Carlo replication) draws from its own ChaCha8 stream whose seed is a hash
//! of the user seed and the unit's path, so results do not depend on the
//! order in which units run or on the number of worker threads.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Bumped whenever [`derive_seed`] changes, since that changes every stream.
pub const STREAM_DERIVATION_VERSION: u32 = 1;

pub type StreamRng = ChaCha8Rng;

/// Stream domains; part of the derivation path so sibling uses never collide.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
#[repr(u64)]
pub enum Domain {
    Judge = 1,
    BootstrapReplicate = 2,
    Replication = 3,
    ReplicationBootstrap = 4,
}

#[inline]
fn splitmix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

/// Hashes `seed` and a derivation path into a 64-bit stream seed.
pub fn derive_seed(seed: u64, path: &[u64]) -> u64 {
    let mut h = splitmix64(seed ^ u64::from(STREAM_DERIVATION_VERSION).rotate_left(32));
    for &x in path {
        h = splitmix64(h ^ splitmix64(x));
    }
    h
}

pub fn stream(seed: u64, domain: Domain, index: u64) -> StreamRng {
    StreamRng::seed_from_u64(derive_seed(seed, &[domain as u64, index]))
}
