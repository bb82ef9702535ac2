use std::thread;

use crate::nums::ConstantStream;
use crate::{Error, Result};

pub const MIN_TRIALS: usize = 100;

/// Flip counts: entry `(i, j)` counts trials where flipping input bit `i`
/// flipped output bit `j`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AvalancheMatrix {
    pub in_bits: usize,
    pub out_bits: usize,
    pub trials: usize,
    counts: Vec<u32>,
}

impl AvalancheMatrix {
    pub fn count(&self, i: usize, j: usize) -> u32 {
        self.counts[i * self.out_bits + j]
    }

    pub fn probability(&self, i: usize, j: usize) -> f64 {
        self.count(i, j) as f64 / self.trials as f64
    }

    pub fn min(&self) -> f64 {
        self.counts.iter().copied().min().unwrap_or(0) as f64 / self.trials as f64
    }

    pub fn max(&self) -> f64 {
        self.counts.iter().copied().max().unwrap_or(0) as f64 / self.trials as f64
    }

    pub fn mean(&self) -> f64 {
        let total: u64 = self.counts.iter().map(|&c| c as u64).sum();
        total as f64 / (self.trials * self.counts.len()) as f64
    }

    /// Flip rate of each output bit, averaged over all input bits.
    pub fn output_means(&self) -> Vec<f64> {
        let denom = (self.trials * self.in_bits) as f64;
        (0..self.out_bits)
            .map(|j| {
                (0..self.in_bits)
                    .map(|i| self.count(i, j) as f64)
                    .sum::<f64>()
                    / denom
            })
            .collect()
    }

    /// Flip rate caused by each input bit, averaged over all output bits.
    pub fn input_means(&self) -> Vec<f64> {
        let denom = (self.trials * self.out_bits) as f64;
        (0..self.in_bits)
            .map(|i| {
                (0..self.out_bits)
                    .map(|j| self.count(i, j) as f64)
                    .sum::<f64>()
                    / denom
            })
            .collect()
    }

    pub fn all_within(&self, lo: f64, hi: f64) -> bool {
        let (min, max) = (self.min(), self.max());
        min >= lo && max <= hi
    }
}

/// Empirical avalanche matrix of `f` over `trials` random inputs drawn from
/// a stream keyed by `seed`. Inputs and outputs are bit strings, first bit
/// first; `f` must return exactly `out_bits` bits.
///
/// Trials are split across threads; counts are summed, so the result does
/// not depend on the thread count.
pub fn avalanche_matrix<F>(
    f: F,
    in_bits: usize,
    out_bits: usize,
    trials: usize,
    seed: &[u8],
) -> Result<AvalancheMatrix>
where
    F: Fn(&[bool]) -> Vec<bool> + Sync,
{
    if trials < MIN_TRIALS {
        return Err(Error::InvalidArgument(format!(
            "need at least {MIN_TRIALS} trials, got {trials}"
        )));
    }
    let mut stream = ConstantStream::new(seed);
    let inputs: Vec<Vec<bool>> = (0..trials)
        .map(|_| (0..in_bits).map(|_| stream.next_bit()).collect())
        .collect();
    let threads = thread::available_parallelism()
        .map_or(1, |n| n.get())
        .min(trials);
    let chunk = trials.div_ceil(threads);
    let f = &f;
    let partials: Vec<Vec<u32>> = thread::scope(|s| {
        let handles: Vec<_> = inputs
            .chunks(chunk)
            .map(|batch| {
                s.spawn(move || {
                    let mut counts = vec![0u32; in_bits * out_bits];
                    for x in batch {
                        let y = f(x);
                        assert_eq!(y.len(), out_bits, "transform output width");
                        let mut x = x.clone();
                        for i in 0..in_bits {
                            x[i] = !x[i];
                            let y2 = f(&x);
                            x[i] = !x[i];
                            let row = &mut counts[i * out_bits..(i + 1) * out_bits];
                            for (c, (a, b)) in row.iter_mut().zip(y.iter().zip(&y2)) {
                                *c += (a != b) as u32;
                            }
                        }
                    }
                    counts
                })
            })
            .collect();
        handles
            .into_iter()
            .map(|h| h.join().expect("worker panicked"))
            .collect()
    });
    let mut counts = vec![0u32; in_bits * out_bits];
    for p in partials {
        for (c, v) in counts.iter_mut().zip(p) {
            *c += v;
        }
    }
    Ok(AvalancheMatrix {
        in_bits,
        out_bits,
        trials,
        counts,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn identity_gives_identity_matrix() {
        let m = avalanche_matrix(|x| x.to_vec(), 8, 8, 100, b"id").unwrap();
        for i in 0..8 {
            for j in 0..8 {
                assert_eq!(m.probability(i, j), if i == j { 1.0 } else { 0.0 });
            }
        }
    }

    #[test]
    fn constant_gives_zero_matrix() {
        let m = avalanche_matrix(|_| vec![true; 4], 6, 4, 100, b"c").unwrap();
        assert_eq!(m.max(), 0.0);
    }

    #[test]
    fn too_few_trials() {
        assert!(avalanche_matrix(|x| x.to_vec(), 4, 4, 99, b"x").is_err());
    }

    #[test]
    fn deterministic_for_seed() {
        let f = |x: &[bool]| vec![x[0] & x[1], x[1] ^ x[2]];
        let a = avalanche_matrix(f, 3, 2, 200, b"s").unwrap();
        let b = avalanche_matrix(f, 3, 2, 200, b"s").unwrap();
        assert_eq!(a, b);
        // Flipping x0 flips x0&x1 exactly when x1 = 1.
        assert!((a.probability(0, 0) - 0.5).abs() < 0.15);
        assert_eq!(a.probability(0, 1), 0.0);
        assert_eq!(a.probability(2, 1), 1.0);
    }

    #[test]
    fn marginal_means() {
        let m = avalanche_matrix(|x| x.to_vec(), 4, 4, 100, b"id").unwrap();
        assert_eq!(m.output_means(), vec![0.25; 4]);
        assert_eq!(m.input_means(), vec![0.25; 4]);
        assert_eq!(m.mean(), 0.25);
    }
}
