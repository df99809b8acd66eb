//! Named random substreams derived from one master seed.
//!
//! Each consumer (layout, mobility, shadowing, fading, demands) reads its own
//! ChaCha stream, keyed by purpose and timestep.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub type SimRng = ChaCha8Rng;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
#[repr(u32)]
pub enum Stream {
    Layout = 1,
    Mobility = 2,
    Shadowing = 3,
    Fading = 4,
    Demands = 5,
}

/// Returns the generator for `stream` at `timestep`. Episode-wide streams
/// (layout, mobility, per-episode demands) use timestep 0.
pub fn substream(seed: u64, stream: Stream, timestep: u32) -> SimRng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(((stream as u64) << 32) | u64::from(timestep));
    rng
}
