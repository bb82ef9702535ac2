use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;

use crate::{Error, Result};

/// A dense polynomial over GF(2); bit `i` of the word vector is the
/// coefficient of `x^i`. Always kept normalized (no zero high words).
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Gf2Poly {
    words: Vec<u64>,
}

impl fmt::Debug for Gf2Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms: Vec<String> = self
            .exponents()
            .iter()
            .rev()
            .map(|e| e.to_string())
            .collect();
        write!(f, "Gf2Poly[{}]", terms.join(","))
    }
}

impl Gf2Poly {
    pub fn zero() -> Self {
        Gf2Poly { words: Vec::new() }
    }

    pub fn one() -> Self {
        Gf2Poly { words: vec![1] }
    }

    pub fn x() -> Self {
        Gf2Poly { words: vec![2] }
    }

    pub fn from_exponents(exps: impl IntoIterator<Item = usize>) -> Self {
        let mut p = Gf2Poly::zero();
        for e in exps {
            p.flip(e);
        }
        p
    }

    fn normalize(&mut self) {
        while self.words.last() == Some(&0) {
            self.words.pop();
        }
    }

    fn flip(&mut self, e: usize) {
        let w = e / 64;
        if self.words.len() <= w {
            self.words.resize(w + 1, 0);
        }
        self.words[w] ^= 1 << (e % 64);
        self.normalize();
    }

    pub fn is_zero(&self) -> bool {
        self.words.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.words == [1]
    }

    pub fn degree(&self) -> Option<usize> {
        let top = *self.words.last()?;
        Some((self.words.len() - 1) * 64 + 63 - top.leading_zeros() as usize)
    }

    pub fn coeff(&self, e: usize) -> bool {
        self.words
            .get(e / 64)
            .is_some_and(|w| (w >> (e % 64)) & 1 == 1)
    }

    /// Exponents with coefficient 1, ascending.
    pub fn exponents(&self) -> Vec<usize> {
        let mut out = Vec::new();
        for (wi, &w) in self.words.iter().enumerate() {
            let mut w = w;
            while w != 0 {
                let b = w.trailing_zeros() as usize;
                out.push(wi * 64 + b);
                w &= w - 1;
            }
        }
        out
    }

    pub fn add(&self, other: &Gf2Poly) -> Gf2Poly {
        let n = self.words.len().max(other.words.len());
        let mut words: Vec<u64> = (0..n)
            .map(|i| {
                self.words.get(i).copied().unwrap_or(0) ^ other.words.get(i).copied().unwrap_or(0)
            })
            .collect();
        while words.last() == Some(&0) {
            words.pop();
        }
        Gf2Poly { words }
    }

    fn xor_shifted(&mut self, other: &Gf2Poly, shift: usize) {
        let ws = shift / 64;
        let bs = shift % 64;
        let need = other.words.len() + ws + 1;
        if self.words.len() < need {
            self.words.resize(need, 0);
        }
        for (i, &w) in other.words.iter().enumerate() {
            self.words[i + ws] ^= w << bs;
            if bs != 0 {
                self.words[i + ws + 1] ^= w >> (64 - bs);
            }
        }
        self.normalize();
    }

    pub fn mul(&self, other: &Gf2Poly) -> Gf2Poly {
        let mut out = Gf2Poly::zero();
        for e in self.exponents() {
            out.xor_shifted(other, e);
        }
        out
    }

    /// Squaring is linear over GF(2): spread each bit to an even position.
    pub fn square(&self) -> Gf2Poly {
        fn spread(mut v: u64) -> u64 {
            v &= 0xffff_ffff;
            v = (v | (v << 16)) & 0x0000_ffff_0000_ffff;
            v = (v | (v << 8)) & 0x00ff_00ff_00ff_00ff;
            v = (v | (v << 4)) & 0x0f0f_0f0f_0f0f_0f0f;
            v = (v | (v << 2)) & 0x3333_3333_3333_3333;
            v = (v | (v << 1)) & 0x5555_5555_5555_5555;
            v
        }
        let mut words = Vec::with_capacity(self.words.len() * 2);
        for &w in &self.words {
            words.push(spread(w));
            words.push(spread(w >> 32));
        }
        let mut p = Gf2Poly { words };
        p.normalize();
        p
    }

    pub fn rem(&self, modulus: &Gf2Poly) -> Gf2Poly {
        let md = modulus.degree().expect("division by the zero polynomial");
        let mut r = self.clone();
        while let Some(d) = r.degree() {
            if d < md {
                break;
            }
            r.xor_shifted(modulus, d - md);
        }
        r
    }

    pub fn mul_mod(&self, other: &Gf2Poly, modulus: &Gf2Poly) -> Gf2Poly {
        self.mul(other).rem(modulus)
    }

    /// `x^e mod modulus`, square-and-multiply with multiplication by `x`
    /// reduced to a shift.
    pub fn x_pow_mod(e: &BigUint, modulus: &Gf2Poly) -> Gf2Poly {
        let mut r = Gf2Poly::one().rem(modulus);
        for i in (0..e.bits()).rev() {
            r = r.square().rem(modulus);
            if e.bit(i) {
                r = r.mul(&Gf2Poly::x()).rem(modulus);
            }
        }
        r
    }

    /// `x^(2^k) mod modulus` by `k` repeated squarings.
    pub fn x_pow_two_pow_mod(k: usize, modulus: &Gf2Poly) -> Gf2Poly {
        let mut r = Gf2Poly::x().rem(modulus);
        for _ in 0..k {
            r = r.square().rem(modulus);
        }
        r
    }

    pub fn gcd(&self, other: &Gf2Poly) -> Gf2Poly {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a
    }
}

/// Feedback (connection) polynomial of a register: `taps` lists the
/// exponents with coefficient 1 in decreasing order, always including the
/// degree and 0.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FeedbackPoly {
    taps: Vec<usize>,
}

impl FeedbackPoly {
    pub fn new(taps: impl IntoIterator<Item = usize>) -> Result<Self> {
        let mut taps: Vec<usize> = taps.into_iter().collect();
        taps.sort_unstable_by(|a, b| b.cmp(a));
        if taps.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::InvalidPolynomial("repeated exponent".into()));
        }
        match (taps.first(), taps.last()) {
            (Some(&d), Some(&0)) if d > 0 => Ok(FeedbackPoly { taps }),
            _ => Err(Error::InvalidPolynomial(
                "needs a positive degree and a constant term".into(),
            )),
        }
    }

    pub fn degree(&self) -> usize {
        self.taps[0]
    }

    /// Exponents in decreasing order.
    pub fn taps(&self) -> &[usize] {
        &self.taps
    }

    /// Number of nonzero terms, including `x^L` and 1.
    pub fn weight(&self) -> usize {
        self.taps.len()
    }

    pub fn to_gf2(&self) -> Gf2Poly {
        Gf2Poly::from_exponents(self.taps.iter().copied())
    }

    /// `x^L C(1/x)`; primitive exactly when `self` is.
    pub fn reciprocal(&self) -> FeedbackPoly {
        let d = self.degree();
        FeedbackPoly::new(self.taps.iter().map(|&e| d - e))
            .expect("reciprocal keeps both end terms")
    }
}

impl fmt::Display for FeedbackPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let exps: Vec<String> = self.taps.iter().map(|e| e.to_string()).collect();
        write!(f, "{}: {}", self.degree(), exps.join(","))
    }
}

impl FromStr for FeedbackPoly {
    type Err = Error;

    /// Parses the fixture line format `degree: e1,e2,...,ek`.
    fn from_str(s: &str) -> Result<Self> {
        let bad = |reason: &str| Error::parse("polynomial", 0, reason);
        let (deg, rest) = s.split_once(':').ok_or_else(|| bad("missing ':'"))?;
        let degree: usize = deg.trim().parse().map_err(|_| bad("bad degree"))?;
        let taps = rest
            .split(',')
            .map(|t| t.trim().parse::<usize>().map_err(|_| bad("bad exponent")))
            .collect::<Result<Vec<_>>>()?;
        if !taps.windows(2).all(|w| w[0] > w[1]) {
            return Err(bad("exponents must be strictly decreasing"));
        }
        let poly = FeedbackPoly::new(taps)?;
        if poly.degree() != degree {
            return Err(bad("degree does not match leading exponent"));
        }
        Ok(poly)
    }
}
