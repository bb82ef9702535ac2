use statrs::distribution::{ChiSquared, ContinuousCDF};
use statrs::function::erf::erfc;

use crate::{Error, Result};

pub const SIGNIFICANCE: f64 = 0.01;
pub const MIN_BITS: usize = 20_000;
/// Block width of the poker test.
pub const POKER_BLOCK: usize = 4;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct TestResult {
    pub statistic: f64,
    pub p_value: f64,
}

impl TestResult {
    pub fn passed(&self) -> bool {
        self.p_value >= SIGNIFICANCE
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct RandomnessReport {
    pub n_bits: usize,
    pub monobit: TestResult,
    pub runs: TestResult,
    pub poker: TestResult,
}

impl RandomnessReport {
    pub fn all_passed(&self) -> bool {
        self.monobit.passed() && self.runs.passed() && self.poker.passed()
    }
}

/// Frequency test: statistic `|S_n| / sqrt(n)` with `S_n` the +-1 sum.
pub fn monobit(bits: &[bool]) -> TestResult {
    let n = bits.len() as f64;
    let ones = bits.iter().filter(|&&b| b).count() as f64;
    let s = (2.0 * ones - n).abs() / n.sqrt();
    TestResult {
        statistic: s,
        p_value: erfc(s / std::f64::consts::SQRT_2),
    }
}

/// Runs test; the statistic is the total number of runs. A stream that
/// fails the frequency prerequisite `|pi - 1/2| >= 2/sqrt(n)` gets p = 0.
pub fn runs(bits: &[bool]) -> TestResult {
    let n = bits.len() as f64;
    let pi = bits.iter().filter(|&&b| b).count() as f64 / n;
    let v = 1 + bits.windows(2).filter(|w| w[0] != w[1]).count();
    let v_f = v as f64;
    let p_value = if (pi - 0.5).abs() >= 2.0 / n.sqrt() {
        0.0
    } else {
        let q = pi * (1.0 - pi);
        erfc((v_f - 2.0 * n * q).abs() / (2.0 * (2.0 * n).sqrt() * q))
    };
    TestResult {
        statistic: v_f,
        p_value,
    }
}

/// Poker test over non-overlapping 4-bit blocks, chi-square with 15 degrees
/// of freedom.
pub fn poker(bits: &[bool]) -> TestResult {
    let cells = 1usize << POKER_BLOCK;
    let mut counts = vec![0u64; cells];
    let k = bits.len() / POKER_BLOCK;
    for block in bits.chunks_exact(POKER_BLOCK) {
        let v = block.iter().fold(0usize, |acc, &b| (acc << 1) | b as usize);
        counts[v] += 1;
    }
    let sum_sq: f64 = counts.iter().map(|&c| (c * c) as f64).sum();
    let x = cells as f64 / k as f64 * sum_sq - k as f64;
    let chi = ChiSquared::new((cells - 1) as f64).expect("positive degrees of freedom");
    TestResult {
        statistic: x,
        p_value: chi.sf(x),
    }
}

pub fn randomness_suite(bits: &[bool]) -> Result<RandomnessReport> {
    if bits.len() < MIN_BITS {
        return Err(Error::InsufficientData {
            needed: MIN_BITS,
            got: bits.len(),
        });
    }
    Ok(RandomnessReport {
        n_bits: bits.len(),
        monobit: monobit(bits),
        runs: runs(bits),
        poker: poker(bits),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::nums::ConstantStream;

    fn random_bits(n: usize) -> Vec<bool> {
        let mut s = ConstantStream::new(b"randomness tests");
        (0..n).map(|_| s.next_bit()).collect()
    }

    #[test]
    fn alternating_passes_monobit_fails_runs() {
        let bits: Vec<bool> = (0..MIN_BITS).map(|i| i % 2 == 1).collect();
        let r = randomness_suite(&bits).unwrap();
        assert!(r.monobit.passed());
        assert_eq!(r.runs.statistic, MIN_BITS as f64);
        assert!(!r.runs.passed());
    }

    #[test]
    fn all_ones_fail() {
        let r = randomness_suite(&vec![true; MIN_BITS]).unwrap();
        assert!(!r.monobit.passed());
        assert!(!r.runs.passed());
        assert!(!r.poker.passed());
    }

    #[test]
    fn short_input_rejected() {
        assert_eq!(
            randomness_suite(&[true; 100]),
            Err(Error::InsufficientData {
                needed: MIN_BITS,
                got: 100
            })
        );
    }

    #[test]
    fn random_stream_passes() {
        assert!(randomness_suite(&random_bits(100_000))
            .unwrap()
            .all_passed());
    }

    #[test]
    fn monobit_known_value() {
        // 1011010101: S = 2, s = 2/sqrt(10), p = 0.527089
        let bits: Vec<bool> = "1011010101".chars().map(|c| c == '1').collect();
        assert!((monobit(&bits).p_value - 0.527089).abs() < 1e-6);
    }

    #[test]
    fn runs_known_value() {
        // 1001101011: V = 7, p = 0.147232
        let bits: Vec<bool> = "1001101011".chars().map(|c| c == '1').collect();
        let r = runs(&bits);
        assert_eq!(r.statistic, 7.0);
        assert!((r.p_value - 0.147232).abs() < 1e-6);
    }

    #[test]
    fn poker_uniform_blocks() {
        let bits: Vec<bool> = (0..16 * 100 * 4)
            .map(|i| ((i / 4) % 16) >> (3 - i % 4) & 1 == 1)
            .collect();
        let r = poker(&bits);
        assert!(r.statistic.abs() < 1e-9);
        assert!(r.passed());
    }
}
