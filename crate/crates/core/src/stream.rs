//! Keyed random substreams.
//!
//! Every random draw in a simulation comes from a ChaCha8 generator keyed by
//! the master seed, with the stream id derived from where the draw happens:
//! which sweep point, which Monte Carlo iteration, and what is being drawn.
//! Two configurations compared at the same sweep point and iteration see the
//! same terrestrial field and the same per-UAV draws (common random numbers),
//! and no draw depends on how iterations are scheduled.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// What a substream is used for.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Purpose {
    /// Terrestrial point field.
    Terrestrial,
    /// Fading on terrestrial links, drawn in survivor order.
    TerrestrialFading,
    /// One UAV's position, link state and fading; `index` is the UAV index.
    Uav,
    /// Fleet layout shared by every iteration (frozen fleets).
    FrozenFleet,
}

impl Purpose {
    fn tag(self) -> u64 {
        match self {
            Purpose::Terrestrial => 1,
            Purpose::TerrestrialFading => 2,
            Purpose::Uav => 3,
            Purpose::FrozenFleet => 4,
        }
    }
}

/// Coordinates of one substream below a master seed.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct StreamKey {
    pub seed: u64,
    pub sweep_index: u64,
    pub iteration: u64,
    pub purpose: Purpose,
    pub index: u64,
}

impl StreamKey {
    pub fn new(seed: u64, sweep_index: u64, iteration: u64, purpose: Purpose) -> Self {
        Self {
            seed,
            sweep_index,
            iteration,
            purpose,
            index: 0,
        }
    }

    pub fn with_index(mut self, index: u64) -> Self {
        self.index = index;
        self
    }

    pub fn with_purpose(mut self, purpose: Purpose) -> Self {
        self.purpose = purpose;
        self
    }

    /// 64-bit ChaCha stream id for this key.
    pub fn stream_id(&self) -> u64 {
        let mut h = splitmix(self.purpose.tag());
        h = splitmix(h ^ self.sweep_index);
        h = splitmix(h ^ self.iteration);
        splitmix(h ^ self.index)
    }

    pub fn rng(&self) -> ChaCha8Rng {
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
        rng.set_stream(self.stream_id());
        rng
    }
}

fn splitmix(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}
