use super::FeedbackPoly;
use crate::{Error, Result};

/// Largest register supported by the fixed-width state.
pub const MAX_STAGES: usize = 256;

type Words = [u64; MAX_STAGES / 64];

/// A Fibonacci LFSR. Stage `i` (1-based) lives at bit `i - 1` of the
/// packed state; stage 1 takes the feedback and stage L is the output.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Lfsr {
    poly: FeedbackPoly,
    len: usize,
    words: usize,
    top_mask: u64,
    taps: Words,
    state: Words,
}

fn parity(a: &Words, b: &Words, words: usize) -> bool {
    let mut acc = 0u64;
    for i in 0..words {
        acc ^= a[i] & b[i];
    }
    acc.count_ones() & 1 == 1
}

impl Lfsr {
    /// Builds a register from its stages, stage 1 first. The all-zero state
    /// is a fixed point of the recurrence and is rejected.
    pub fn new(poly: FeedbackPoly, stages: &[bool]) -> Result<Self> {
        let mut r = Lfsr::zeroed(poly)?;
        if stages.len() != r.len {
            return Err(Error::StateLength {
                expected: r.len,
                got: stages.len(),
            });
        }
        for (i, &b) in stages.iter().enumerate() {
            if b {
                r.state[i / 64] |= 1 << (i % 64);
            }
        }
        if r.is_zero() {
            return Err(Error::ZeroState);
        }
        Ok(r)
    }

    fn zeroed(poly: FeedbackPoly) -> Result<Self> {
        let len = poly.degree();
        if len > MAX_STAGES {
            return Err(Error::DegreeTooLarge(len));
        }
        let words = len.div_ceil(64);
        let top_bits = len - (words - 1) * 64;
        let top_mask = if top_bits == 64 {
            u64::MAX
        } else {
            (1 << top_bits) - 1
        };
        let mut taps = Words::default();
        for &e in poly.taps() {
            if e > 0 {
                taps[(e - 1) / 64] |= 1 << ((e - 1) % 64);
            }
        }
        Ok(Lfsr {
            poly,
            len,
            words,
            top_mask,
            taps,
            state: Words::default(),
        })
    }

    pub fn poly(&self) -> &FeedbackPoly {
        &self.poly
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn is_zero(&self) -> bool {
        self.state[..self.words].iter().all(|&w| w == 0)
    }

    /// Stage `i`, 1-based.
    #[inline]
    pub fn stage(&self, i: usize) -> bool {
        debug_assert!((1..=self.len).contains(&i));
        let k = i - 1;
        (self.state[k / 64] >> (k % 64)) & 1 == 1
    }

    pub fn stages(&self) -> Vec<bool> {
        (1..=self.len).map(|i| self.stage(i)).collect()
    }

    #[inline]
    pub fn output(&self) -> bool {
        self.stage(self.len)
    }

    #[inline]
    pub fn feedback(&self) -> bool {
        parity(&self.state, &self.taps, self.words)
    }

    #[inline]
    fn shift_words(state: &mut Words, words: usize, top_mask: u64, bit: bool) {
        for w in (1..words).rev() {
            state[w] = (state[w] << 1) | (state[w - 1] >> 63);
        }
        state[0] = (state[0] << 1) | bit as u64;
        state[words - 1] &= top_mask;
    }

    /// Moves every stage up by one, drops stage L and writes `bit` into
    /// stage 1. Used by generators that substitute the feedback.
    ///
    /// The caller must not shift in enough zeros to clear the register.
    #[inline]
    pub fn shift_in(&mut self, bit: bool) {
        Self::shift_words(&mut self.state, self.words, self.top_mask, bit);
    }

    /// One step of the recurrence; returns the output stage as it was
    /// before the shift.
    #[inline]
    pub fn clock(&mut self) -> bool {
        let out = self.output();
        let fb = self.feedback();
        self.shift_in(fb);
        out
    }

    /// The next `n` (≤ 64) feedback bits the register would produce, first
    /// bit in the most significant position, without changing the state.
    pub fn peek_feedback(&self, n: usize) -> u64 {
        assert!(n <= 64);
        let mut s = self.state;
        let mut out = 0u64;
        for _ in 0..n {
            let fb = parity(&s, &self.taps, self.words);
            out = (out << 1) | fb as u64;
            Self::shift_words(&mut s, self.words, self.top_mask, fb);
        }
        out
    }

    /// XORs `bits` into stages 1, 2, ... in order. If the result is the
    /// all-zero state, stage L is forced to 1; returns whether that repair
    /// happened.
    pub fn xor_stages(&mut self, bits: &[bool]) -> bool {
        assert!(bits.len() <= self.len);
        for (i, &b) in bits.iter().enumerate() {
            if b {
                self.state[i / 64] ^= 1 << (i % 64);
            }
        }
        if self.is_zero() {
            let k = self.len - 1;
            self.state[k / 64] |= 1 << (k % 64);
            true
        } else {
            false
        }
    }

    /// Advances the register by `steps` clocks. Long jumps use powers of
    /// the companion matrix instead of clocking.
    pub fn advance(&mut self, steps: u64) {
        const DIRECT: u64 = 4096;
        if steps <= DIRECT {
            for _ in 0..steps {
                self.clock();
            }
            return;
        }
        let step = self.companion();
        let jump = step.pow(steps);
        self.state = jump.apply(&self.state);
    }

    fn companion(&self) -> BitMatrix {
        let mut rows = vec![Words::default(); self.len];
        rows[0] = self.taps;
        for (i, row) in rows.iter_mut().enumerate().skip(1) {
            row[(i - 1) / 64] |= 1 << ((i - 1) % 64);
        }
        BitMatrix {
            rows,
            words: self.words,
        }
    }
}

/// Square matrix over GF(2); row `i` gives the new stage `i + 1` as a parity
/// of the old stages.
#[derive(Clone)]
struct BitMatrix {
    rows: Vec<Words>,
    words: usize,
}

impl BitMatrix {
    fn identity(n: usize, words: usize) -> Self {
        let mut rows = vec![Words::default(); n];
        for (i, row) in rows.iter_mut().enumerate() {
            row[i / 64] |= 1 << (i % 64);
        }
        BitMatrix { rows, words }
    }

    /// `self * other`: apply `other` first, then `self`.
    fn mul(&self, other: &BitMatrix) -> BitMatrix {
        let rows = self
            .rows
            .iter()
            .map(|row| {
                let mut acc = Words::default();
                for (j, orow) in other.rows.iter().enumerate() {
                    if (row[j / 64] >> (j % 64)) & 1 == 1 {
                        for w in 0..self.words {
                            acc[w] ^= orow[w];
                        }
                    }
                }
                acc
            })
            .collect();
        BitMatrix {
            rows,
            words: self.words,
        }
    }

    fn pow(&self, mut e: u64) -> BitMatrix {
        let mut result = BitMatrix::identity(self.rows.len(), self.words);
        let mut base = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                result = result.mul(&base);
            }
            base = base.mul(&base);
            e >>= 1;
        }
        result
    }

    fn apply(&self, v: &Words) -> Words {
        let mut out = Words::default();
        for (i, row) in self.rows.iter().enumerate() {
            if parity(row, v, self.words) {
                out[i / 64] |= 1 << (i % 64);
            }
        }
        out
    }
}
