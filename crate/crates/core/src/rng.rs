//! Splittable 64-bit random streams.
//!
//! Every stream is a SplitMix64 generator with its own seed and its own odd
//! Weyl increment. Streams are derived by hashing
//! `(master_seed, grid_index, replication_index)`, so a replication's draws
//! depend only on its key and never on execution order or thread count.

use rand::RngCore;

const GOLDEN_GAMMA: u64 = 0x9e37_79b9_7f4a_7c15;

#[inline]
fn mix64(mut z: u64) -> u64 {
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

// Variant finalizer used for the increment, as in SplittableRandom.
#[inline]
fn mix_gamma(z: u64) -> u64 {
    let mut z = (z ^ (z >> 33)).wrapping_mul(0xff51_afd7_ed55_8ccd);
    z = (z ^ (z >> 33)).wrapping_mul(0xc4ce_b9fe_1a85_ec53);
    let z = (z ^ (z >> 33)) | 1;
    // Reject increments with too few bit transitions.
    if (z ^ (z >> 1)).count_ones() < 24 {
        z ^ 0xaaaa_aaaa_aaaa_aaaa
    } else {
        z
    }
}

/// Identifies one stream under a master seed.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct StreamKey {
    pub grid_index: u64,
    pub replication_index: u64,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RngStream {
    master_seed: u64,
    key: StreamKey,
    state: u64,
    increment: u64,
}

impl RngStream {
    pub fn master_seed(&self) -> u64 {
        self.master_seed
    }

    pub fn key(&self) -> StreamKey {
        self.key
    }

    /// A child stream keyed by `tag`, independent of the parent's position.
    ///
    /// Used to carve dedicated streams (weight init, data split) out of a
    /// single configured seed.
    pub fn substream(&self, tag: u64) -> RngStream {
        let h = mix64(self.state_seed() ^ mix64(tag.wrapping_add(GOLDEN_GAMMA)));
        RngStream::from_hash(self.master_seed, self.key, h)
    }

    fn state_seed(&self) -> u64 {
        hash_key(self.master_seed, self.key.grid_index, self.key.replication_index)
    }

    fn from_hash(master_seed: u64, key: StreamKey, h: u64) -> RngStream {
        RngStream {
            master_seed,
            key,
            state: mix64(h),
            increment: mix_gamma(h.wrapping_add(GOLDEN_GAMMA)),
        }
    }

    /// Uniform draw in `[0, 1)` with 53 bits of precision.
    #[inline]
    pub fn next_f64(&mut self) -> f64 {
        (self.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
    }

    /// Uniform draw in the open interval `(0, 1)`.
    #[inline]
    pub fn next_open01(&mut self) -> f64 {
        ((self.next_u64() >> 11) as f64 + 0.5) * (1.0 / (1u64 << 53) as f64)
    }
}

fn hash_key(master_seed: u64, grid_index: u64, replication_index: u64) -> u64 {
    let h = mix64(master_seed ^ 0x6a09_e667_f3bc_c908);
    let h = mix64(h ^ grid_index.wrapping_mul(GOLDEN_GAMMA));
    mix64(h ^ mix64(replication_index.wrapping_add(0x3c6e_f372_fe94_f82b)))
}

/// Derives the stream for `(grid_index, replication_index)` under `master_seed`.
pub fn derive_stream(master_seed: u64, grid_index: u64, replication_index: u64) -> RngStream {
    let key = StreamKey {
        grid_index,
        replication_index,
    };
    RngStream::from_hash(master_seed, key, hash_key(master_seed, grid_index, replication_index))
}

impl RngCore for RngStream {
    #[inline]
    fn next_u32(&mut self) -> u32 {
        (self.next_u64() >> 32) as u32
    }

    #[inline]
    fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(self.increment);
        mix64(self.state)
    }

    fn fill_bytes(&mut self, dst: &mut [u8]) {
        for chunk in dst.chunks_mut(8) {
            let bytes = self.next_u64().to_le_bytes();
            chunk.copy_from_slice(&bytes[..chunk.len()]);
        }
    }
}
