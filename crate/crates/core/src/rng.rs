//! Deterministic randomness.
//!
//! Every randomized routine in this crate takes a `u64` seed and derives all
//! of its randomness from ChaCha8 keyed by that seed.  Independent parts of
//! one computation (the inputs of a trace versus its fake outputs, the
//! trials of a Monte Carlo estimate, the attempts of a search) each draw
//! from their own ChaCha8 *stream*: same key, distinct 64-bit stream
//! counter.  This makes every result a pure function of `(seed, stream,
//! position)`, independent of evaluation order, so batches may be farmed
//! out to worker threads without changing a single output bit.
//!
//! Sampling primitives are spelled out here rather than borrowed from a
//! distributions library so that the exact byte consumption is part of this
//! crate's contract and cannot drift underneath recorded baselines.

use rand::RngCore;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::model::BitVec;
use crate::stream::BitStream;

/// The generator behind every seeded operation.
pub type Rng = ChaCha8Rng;

/// ChaCha8 keyed by `seed`, positioned on stream `stream`.
pub fn substream(seed: u64, stream: u64) -> Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

/// A uniform draw from {0, 1, …, span−1} by rejection on the top of the
/// 64-bit range (unbiased; span ≥ 1).
pub fn uniform_below(rng: &mut impl RngCore, span: u64) -> u64 {
    assert!(span >= 1);
    if span == 1 {
        return 0;
    }
    // Accept v < limit where limit is the largest multiple of span ≤ 2^64.
    let limit = u64::MAX - (u64::MAX % span + 1) % span;
    loop {
        let v = rng.next_u64();
        if v <= limit {
            return v % span;
        }
    }
}

/// A uniform draw from the inclusive integer range [low, high].
pub fn uniform_in(rng: &mut impl RngCore, low: i64, high: i64) -> i64 {
    assert!(low <= high, "empty sampling range");
    let span = high.wrapping_sub(low) as u64 + 1; // high − low < 2^64 always
    if span == 0 {
        // The full i64 range: every u64 reinterprets to a valid value.
        return rng.next_u64() as i64;
    }
    low.wrapping_add(uniform_below(rng, span) as i64)
}

/// One uniform bit (the low bit of the next 64-bit word).
pub fn coin(rng: &mut impl RngCore) -> bool {
    rng.next_u64() & 1 == 1
}

/// A uniform point of {0,1}^width: whole 64-bit words, surplus bits of the
/// final word discarded.
pub fn random_bitvec(rng: &mut impl RngCore, width: usize) -> BitVec {
    let words = (0..width.div_ceil(64)).map(|_| rng.next_u64()).collect();
    BitVec::from_words(width, words)
}

/// A uniform bit stream of the given length, drawn the same way as
/// [`random_bitvec`]: whole 64-bit words, surplus bits of the final word
/// discarded.  This is the crate's reference random stream.
pub fn random_stream(rng: &mut impl RngCore, len: usize) -> BitStream {
    let words = (0..len.div_ceil(64)).map(|_| rng.next_u64()).collect();
    BitStream::from_words(len, words)
}
