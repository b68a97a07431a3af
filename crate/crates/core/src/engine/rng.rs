//! Counter-based random streams built on Philox4x64-10.
//!
//! A stream is addressed by `(seed, stream_id, substream, counter)`. The
//! seed and stream id form the 128-bit Philox key; the counter selects a
//! draw, with four draws per Philox block. Replaying any address gives the
//! same bits on every platform.

const PHILOX_M0: u64 = 0xD2E7_470E_E14C_6C93;
const PHILOX_M1: u64 = 0xCA5A_8263_9512_1157;
const PHILOX_W0: u64 = 0x9E37_79B9_7F4A_7C15;
const PHILOX_W1: u64 = 0xBB67_AE85_84CA_A73B;

#[inline(always)]
fn mulhilo(a: u64, b: u64) -> (u64, u64) {
    let p = (a as u128) * (b as u128);
    ((p >> 64) as u64, p as u64)
}

/// The Philox4x64 bijection with ten rounds.
pub fn philox4x64_10(counter: [u64; 4], key: [u64; 2]) -> [u64; 4] {
    let mut c = counter;
    let mut k = key;
    for round in 0..10 {
        if round > 0 {
            k[0] = k[0].wrapping_add(PHILOX_W0);
            k[1] = k[1].wrapping_add(PHILOX_W1);
        }
        let (hi0, lo0) = mulhilo(PHILOX_M0, c[0]);
        let (hi1, lo1) = mulhilo(PHILOX_M1, c[2]);
        c = [hi1 ^ c[1] ^ k[0], lo1, hi0 ^ c[3] ^ k[1], lo0];
    }
    c
}

#[derive(Debug, Clone)]
pub struct RngStream {
    seed: u64,
    stream_id: u64,
    substream: u64,
    counter: u128,
    block: [u64; 4],
    block_index: Option<u128>,
}

impl PartialEq for RngStream {
    fn eq(&self, other: &Self) -> bool {
        self.seed == other.seed
            && self.stream_id == other.stream_id
            && self.substream == other.substream
            && self.counter == other.counter
    }
}

impl RngStream {
    pub fn new(seed: u64, stream_id: u64) -> Self {
        Self::at(seed, stream_id, 0)
    }

    /// A stream positioned at an arbitrary draw index.
    pub fn at(seed: u64, stream_id: u64, counter: u128) -> Self {
        Self {
            seed,
            stream_id,
            substream: 0,
            counter,
            block: [0; 4],
            block_index: None,
        }
    }

    /// An independent sequence under the same key, starting at counter 0.
    ///
    /// Used for successive rounds of budget growth so each round sees
    /// fresh samples.
    pub fn substream(&self, index: u64) -> Self {
        Self {
            substream: index,
            ..Self::at(self.seed, self.stream_id, 0)
        }
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    pub fn stream_id(&self) -> u64 {
        self.stream_id
    }

    pub fn substream_index(&self) -> u64 {
        self.substream
    }

    pub fn counter(&self) -> u128 {
        self.counter
    }

    #[inline]
    pub fn next_u64(&mut self) -> u64 {
        let block = self.counter >> 2;
        if self.block_index != Some(block) {
            let ctr = [block as u64, (block >> 64) as u64, self.substream, 0];
            self.block = philox4x64_10(ctr, [self.seed, self.stream_id]);
            self.block_index = Some(block);
        }
        let out = self.block[(self.counter & 3) as usize];
        self.counter = self.counter.wrapping_add(1);
        out
    }

    /// Uniform on `[0, 1)` with 53 random bits.
    #[inline]
    pub fn next_uniform(&mut self) -> f64 {
        (self.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
    }
}
