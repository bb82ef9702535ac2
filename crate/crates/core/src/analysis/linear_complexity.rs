/// Result of Berlekamp-Massey over a bit string.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearComplexityProfile {
    pub final_lc: usize,
    /// `(prefix length, lc)` at every point where the complexity rises.
    pub profile: Vec<(usize, usize)>,
    /// Connection polynomial `c_0 + c_1 x + ... + c_lc x^lc`, `c_0 = 1`.
    pub connection: Vec<bool>,
}

impl LinearComplexityProfile {
    /// Complexity of the prefix of length `n`.
    pub fn lc_at(&self, n: usize) -> usize {
        self.profile
            .iter()
            .take_while(|&&(len, _)| len <= n)
            .last()
            .map_or(0, |&(_, lc)| lc)
    }
}

fn get(words: &[u64], i: usize) -> bool {
    (words[i / 64] >> (i % 64)) & 1 == 1
}

fn xor_shifted(dst: &mut [u64], src: &[u64], shift: usize) {
    let (w, b) = (shift / 64, shift % 64);
    for i in (0..dst.len()).rev() {
        if i < w {
            break;
        }
        let lo = src.get(i - w).copied().unwrap_or(0) << b;
        let hi = if b == 0 || i < w + 1 {
            0
        } else {
            src.get(i - w - 1).copied().unwrap_or(0) >> (64 - b)
        };
        dst[i] ^= lo | hi;
    }
}

/// Shortest LFSR generating `bits`, with its jump profile.
pub fn berlekamp_massey(bits: &[bool]) -> LinearComplexityProfile {
    let n = bits.len();
    let words = n / 64 + 2;
    let mut c = vec![0u64; words];
    let mut b = vec![0u64; words];
    c[0] = 1;
    b[0] = 1;
    let (mut l, mut m) = (0usize, 1usize);
    let mut profile = Vec::new();
    for i in 0..n {
        let mut d = bits[i];
        for j in 1..=l {
            d ^= get(&c, j) & bits[i - j];
        }
        if !d {
            m += 1;
        } else if 2 * l <= i {
            let t = c.clone();
            xor_shifted(&mut c, &b, m);
            l = i + 1 - l;
            b = t;
            m = 1;
            profile.push((i + 1, l));
        } else {
            xor_shifted(&mut c, &b, m);
            m += 1;
        }
    }
    LinearComplexityProfile {
        final_lc: l,
        profile,
        connection: (0..=l).map(|j| get(&c, j)).collect(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::galois::{FeedbackPoly, Lfsr};

    fn m_sequence(taps: &[usize], n: usize) -> Vec<bool> {
        let p = FeedbackPoly::new(taps.iter().copied()).unwrap();
        let mut seed = vec![false; p.degree()];
        seed[0] = true;
        let mut r = Lfsr::new(p, &seed).unwrap();
        (0..n).map(|_| r.clock()).collect()
    }

    #[test]
    fn zero_sequence() {
        let p = berlekamp_massey(&[false; 50]);
        assert_eq!(p.final_lc, 0);
        assert!(p.profile.is_empty());
    }

    #[test]
    fn degree_four_m_sequence() {
        let s = m_sequence(&[4, 1, 0], 60);
        for start in 0..30 {
            assert_eq!(berlekamp_massey(&s[start..start + 30]).final_lc, 4);
        }
    }

    #[test]
    fn single_one_at_end() {
        let mut s = vec![false; 9];
        s.push(true);
        assert_eq!(berlekamp_massey(&s).final_lc, 10);
    }

    #[test]
    fn connection_polynomial_generates_sequence() {
        let s = m_sequence(&[31, 3, 0], 200);
        let p = berlekamp_massey(&s);
        assert_eq!(p.final_lc, 31);
        for i in p.final_lc..s.len() {
            let mut acc = false;
            for j in 1..=p.final_lc {
                acc ^= p.connection[j] & s[i - j];
            }
            assert_eq!(acc, s[i]);
        }
    }

    #[test]
    fn lc_at_reads_profile() {
        let s = m_sequence(&[4, 1, 0], 30);
        let p = berlekamp_massey(&s);
        assert_eq!(p.lc_at(0), 0);
        assert_eq!(p.lc_at(30), 4);
    }

    #[test]
    fn word_boundary_shifts() {
        let s = m_sequence(&[89, 38, 0], 400);
        assert_eq!(berlekamp_massey(&s).final_lc, 89);
    }
}
