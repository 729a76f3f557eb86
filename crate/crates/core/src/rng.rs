//! Deterministic seed derivation.
//!
//! Every randomized stage of the pipeline draws from its own ChaCha8 stream
//! whose seed is derived from a master seed plus a purpose tag and an index.
//! Derivation is a fixed SplitMix64 chain, so per-tree, per-fold and per-class
//! streams are independent of execution order and thread count.

use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Purpose tags for derived streams. The numeric values are part of the
/// reproducibility contract and must not be renumbered.
#[derive(Debug, Clone, Copy)]
pub enum Stream {
    TrainTestSplit = 1,
    FoldSplit = 2,
    Smote = 3,
    Tree = 4,
    Bootstrap = 5,
    Synth = 6,
    ShapPermutation = 7,
    Background = 8,
    StackOof = 9,
    MetaForest = 10,
    HashEmbed = 11,
}

fn splitmix64(state: u64) -> u64 {
    let mut z = state.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Derives an independent seed for `(stream, index)` under `master`.
pub fn derive(master: u64, stream: Stream, index: u64) -> u64 {
    let a = splitmix64(master ^ (stream as u64).wrapping_mul(0x9E37_79B9_7F4A_7C15));
    splitmix64(a ^ index.wrapping_mul(0xC2B2_AE3D_27D4_EB4F))
}

/// A ChaCha8 generator seeded for `(master, stream, index)`.
pub fn stream_rng(master: u64, stream: Stream, index: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(derive(master, stream, index))
}
