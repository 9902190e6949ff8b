//! Counter-based sign streams.
//!
//! Every random draw of a trial is a pure function of `(master, stream_index)`:
//! the master seed keys a ChaCha8 block cipher (key expansion through
//! `SeedableRng::seed_from_u64`) and the stream index selects the ChaCha stream
//! (nonce). Successive 64-bit outputs are consumed least significant bit
//! first, one bit per sign, bit `1` meaning `+1`. ChaCha8 output is
//! specified bit-for-bit, so samples replay identically on every platform.

use rand_chacha::ChaCha8Rng;
use rand_core::{RngCore, SeedableRng};
use serde::{Deserialize, Serialize};

use crate::poly::Sign;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Seed {
    pub master: u64,
    pub stream_index: u64,
}

impl Seed {
    pub const fn new(master: u64, stream_index: u64) -> Self {
        Self {
            master,
            stream_index,
        }
    }

    pub fn stream(&self) -> SignStream {
        SignStream::new(*self)
    }
}

/// Bit-buffered sign generator for one `(master, stream_index)` pair.
#[derive(Clone, Debug)]
pub struct SignStream {
    rng: ChaCha8Rng,
    buffer: u64,
    remaining: u32,
}

impl SignStream {
    pub fn new(seed: Seed) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(seed.master);
        rng.set_stream(seed.stream_index);
        Self {
            rng,
            buffer: 0,
            remaining: 0,
        }
    }

    pub fn next_sign(&mut self) -> Sign {
        if self.remaining == 0 {
            self.buffer = self.rng.next_u64();
            self.remaining = 64;
        }
        let bit = self.buffer & 1;
        self.buffer >>= 1;
        self.remaining -= 1;
        if bit == 1 {
            Sign::Plus
        } else {
            Sign::Minus
        }
    }

    pub fn next_u64(&mut self) -> u64 {
        self.rng.next_u64()
    }

    /// Uniform draw in `[0, 1)` with 53 random bits.
    pub fn next_f64(&mut self) -> f64 {
        (self.rng.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
    }

    /// Uniform integer in `[0, bound)`, by rejection.
    pub fn next_below(&mut self, bound: u64) -> u64 {
        assert!(bound > 0);
        let zone = u64::MAX - (u64::MAX % bound);
        loop {
            let v = self.rng.next_u64();
            if v < zone {
                return v % bound;
            }
        }
    }
}
