//! Nothing-up-my-sleeve constant stream.
//!
//! Every derived constant in this crate (S-boxes, feedback polynomials,
//! filter functions) comes from ChaCha20 keyed with SHA-256 of a public
//! label. Sampling is done here rather than through `rand` so the fixtures
//! do not depend on a particular `rand` release.

use rand_chacha::rand_core::{RngCore, SeedableRng};
use rand_chacha::ChaCha20Rng;
use sha2::{Digest, Sha256};

pub struct ConstantStream {
    rng: ChaCha20Rng,
}

impl ConstantStream {
    pub fn new(label: &[u8]) -> Self {
        let seed: [u8; 32] = Sha256::digest(label).into();
        ConstantStream {
            rng: ChaCha20Rng::from_seed(seed),
        }
    }

    pub fn next_u32(&mut self) -> u32 {
        self.rng.next_u32()
    }

    pub fn next_u64(&mut self) -> u64 {
        self.rng.next_u64()
    }

    pub fn next_bit(&mut self) -> bool {
        self.rng.next_u32() & 1 == 1
    }

    pub fn fill_bytes(&mut self, out: &mut [u8]) {
        self.rng.fill_bytes(out);
    }

    /// Uniform integer in `0..bound` by rejection sampling.
    pub fn below(&mut self, bound: u32) -> u32 {
        assert!(bound > 0);
        let zone = u32::MAX - (u32::MAX - bound + 1) % bound;
        loop {
            let v = self.rng.next_u32();
            if v <= zone {
                return v % bound;
            }
        }
    }

    /// Fisher–Yates shuffle, walking from the top index down.
    pub fn shuffle<T>(&mut self, items: &mut [T]) {
        for i in (1..items.len()).rev() {
            let j = self.below(i as u32 + 1) as usize;
            items.swap(i, j);
        }
    }

    /// A uniformly random permutation of `0..n`.
    pub fn permutation(&mut self, n: usize) -> Vec<usize> {
        let mut p: Vec<usize> = (0..n).collect();
        self.shuffle(&mut p);
        p
    }
}
