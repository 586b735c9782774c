//! Split-stream random number generation.
//!
//! Every stream is a ChaCha8 generator keyed by the master seed with the
//! stream index written into ChaCha's 64-bit stream word, so
//! `(seed, stream)` alone fixes the sequence. Trials drawn on different
//! threads never share state and results do not depend on scheduling.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Generator for stream `stream` under master seed `seed`.
pub fn stream_rng(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}
