//! Counter-based randomness.
//!
//! Every random draw in the crate is addressed by `(seed, purpose, index)`.
//! The seed keys a ChaCha8 block cipher, the purpose selects its stream and
//! the index is the word position inside that stream, so a value never
//! depends on how many draws happened before it or on which thread made them.

use rand::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
use sha2::{Digest, Sha256};

/// Independent random streams used by the crate.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
#[repr(u64)]
pub enum Purpose {
    Couplings = 1,
    Kick = 2,
    RotorAngles = 3,
    SaInit = 4,
    SaAccept = 5,
    InstanceSeed = 6,
    RunSeed = 7,
    Sample = 8,
}

/// A ChaCha8 generator positioned at `(seed, purpose, word_index)`.
pub fn stream(seed: u64, purpose: Purpose, word_index: u128) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(purpose as u64);
    rng.set_word_pos(word_index);
    rng
}

/// The 64-bit word at position `index` of stream `purpose` under `seed`.
pub fn word(seed: u64, purpose: Purpose, index: u64) -> u64 {
    stream(seed, purpose, 2 * index as u128).next_u64()
}

/// Derive a child seed from a parent seed and an index.
pub fn derive_seed(seed: u64, purpose: Purpose, index: u64) -> u64 {
    word(seed, purpose, index)
}

/// Stable 64-bit digest of a string label (instance ids and the like).
pub fn label_hash(label: &str) -> u64 {
    let digest = Sha256::digest(label.as_bytes());
    u64::from_le_bytes(digest[..8].try_into().expect("digest has 32 bytes"))
}

/// Seed of repetition `rep` of a run on instance `instance_id`.
pub fn run_seed(master_seed: u64, instance_id: &str, rep: u64) -> u64 {
    let per_instance = derive_seed(master_seed, Purpose::RunSeed, label_hash(instance_id));
    derive_seed(per_instance, Purpose::RunSeed, rep)
}

/// Uniform double in `[0, 1)` built from the top 53 bits of a word.
#[inline]
pub fn unit_f64(bits: u64) -> f64 {
    (bits >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
}

/// Uniform double in the open interval `(-amplitude, amplitude)`.
///
/// Returns 0 when `amplitude` is 0.
#[inline]
pub fn symmetric_open(bits: u64, amplitude: f64) -> f64 {
    // midpoint of one of 2^52 equal cells, never an endpoint
    let u = ((bits >> 12) as f64 + 0.5) * (1.0 / (1u64 << 52) as f64);
    (2.0 * u - 1.0) * amplitude
}
