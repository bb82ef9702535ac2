use std::fmt;

use super::Anf;
use crate::{Error, Result};

pub const MAX_VARS: usize = 20;

/// Packed truth table of an `n`-variable function; bit `x` is `f(x)`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct TruthTable {
    n_vars: usize,
    bits: Vec<u64>,
}

impl fmt::Debug for TruthTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "TruthTable(n={}, {})", self.n_vars, self.to_hex())
    }
}

fn check_vars(n_vars: usize) -> Result<()> {
    if n_vars > MAX_VARS {
        return Err(Error::BooleanParameters(format!(
            "{n_vars} variables exceeds the maximum of {MAX_VARS}"
        )));
    }
    Ok(())
}

impl TruthTable {
    pub fn zero(n_vars: usize) -> Result<Self> {
        check_vars(n_vars)?;
        let words = (1usize << n_vars).div_ceil(64);
        Ok(TruthTable {
            n_vars,
            bits: vec![0; words],
        })
    }

    pub fn from_fn(n_vars: usize, f: impl Fn(usize) -> bool) -> Result<Self> {
        let mut t = TruthTable::zero(n_vars)?;
        for x in 0..t.len() {
            if f(x) {
                t.set(x, true);
            }
        }
        Ok(t)
    }

    pub fn from_bits(n_vars: usize, bits: &[bool]) -> Result<Self> {
        check_vars(n_vars)?;
        if bits.len() != 1 << n_vars {
            return Err(Error::BooleanParameters(format!(
                "table of {} entries for {n_vars} variables",
                bits.len()
            )));
        }
        TruthTable::from_fn(n_vars, |x| bits[x])
    }

    pub fn n_vars(&self) -> usize {
        self.n_vars
    }

    /// Number of entries, `2^n`.
    pub fn len(&self) -> usize {
        1 << self.n_vars
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    #[inline]
    pub fn get(&self, x: usize) -> bool {
        (self.bits[x >> 6] >> (x & 63)) & 1 == 1
    }

    pub fn set(&mut self, x: usize, value: bool) {
        let mask = 1u64 << (x & 63);
        if value {
            self.bits[x >> 6] |= mask;
        } else {
            self.bits[x >> 6] &= !mask;
        }
    }

    /// Hamming weight (number of ones).
    pub fn weight(&self) -> usize {
        self.bits.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn to_bits(&self) -> Vec<bool> {
        (0..self.len()).map(|x| self.get(x)).collect()
    }

    pub fn to_anf(&self) -> Anf {
        Anf::from_truth_table(self)
    }

    /// Relabels inputs so that variable `i` of `self` becomes variable
    /// `perm[i]` of the result.
    pub fn permute_vars(&self, perm: &[usize]) -> TruthTable {
        assert_eq!(perm.len(), self.n_vars);
        TruthTable::from_fn(self.n_vars, |x| {
            let y = (0..self.n_vars).fold(0usize, |acc, i| acc | (((x >> perm[i]) & 1) << i));
            self.get(y)
        })
        .expect("same variable count")
    }

    /// Hex rendering of the table read as a big-endian integer whose bit `x`
    /// is `f(x)`; one hex digit per four entries (at least one digit).
    pub fn to_hex(&self) -> String {
        let digits = (self.len() / 4).max(1);
        (0..digits)
            .rev()
            .map(|d| {
                let nib = (0..4)
                    .filter(|&b| d * 4 + b < self.len() && self.get(d * 4 + b))
                    .fold(0u32, |acc, b| acc | (1 << b));
                char::from_digit(nib, 16).expect("nibble")
            })
            .collect()
    }

    pub fn from_hex(n_vars: usize, hex: &str) -> Result<Self> {
        let mut t = TruthTable::zero(n_vars)?;
        let digits = (t.len() / 4).max(1);
        let hex = hex.trim();
        if hex.len() != digits {
            return Err(Error::BooleanParameters(format!(
                "expected {digits} hex digits, found {}",
                hex.len()
            )));
        }
        for (i, c) in hex.chars().rev().enumerate() {
            let nib = c
                .to_digit(16)
                .ok_or_else(|| Error::BooleanParameters(format!("bad hex digit {c:?}")))?;
            for b in 0..4 {
                if (nib >> b) & 1 == 1 {
                    let x = i * 4 + b;
                    if x >= t.len() {
                        return Err(Error::BooleanParameters("bits beyond the table".into()));
                    }
                    t.set(x, true);
                }
            }
        }
        Ok(t)
    }

    /// Fixture file form: `n=<n>` on the first line, the hex table on the
    /// second.
    pub fn to_fixture(&self) -> String {
        format!("n={}\n{}\n", self.n_vars, self.to_hex())
    }

    pub fn parse_fixture(text: &str) -> Result<Self> {
        let mut lines = text
            .lines()
            .map(str::trim)
            .filter(|l| !l.is_empty() && !l.starts_with('#'));
        let header = lines
            .next()
            .ok_or_else(|| Error::parse("truth table", 1, "empty file"))?;
        let n: usize = header
            .strip_prefix("n=")
            .and_then(|v| v.trim().parse().ok())
            .ok_or_else(|| Error::parse("truth table", 1, "expected `n=<vars>`"))?;
        let hex: String = lines.collect();
        TruthTable::from_hex(n, &hex).map_err(|e| Error::parse("truth table", 2, e.to_string()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn hex_convention() {
        // x1 xor x2: f(1) = f(2) = 1 -> bits 0b0110 -> "6"
        let t = TruthTable::from_fn(2, |x| (x & 1) ^ (x >> 1) == 1).unwrap();
        assert_eq!(t.to_hex(), "6");
        let maj = TruthTable::from_fn(3, |x| x.count_ones() >= 2).unwrap();
        assert_eq!(maj.to_hex(), "e8");
        assert_eq!(TruthTable::from_hex(3, "e8").unwrap(), maj);
        assert!(TruthTable::from_hex(3, "e").is_err());
        assert!(TruthTable::from_hex(3, "g8").is_err());
    }

    #[test]
    fn fixture_roundtrip() {
        let t = TruthTable::from_fn(9, |x| (x * 2654435761) >> 7 & 1 == 1).unwrap();
        assert_eq!(TruthTable::parse_fixture(&t.to_fixture()).unwrap(), t);
        assert!(TruthTable::parse_fixture("9\nff").is_err());
    }

    #[test]
    fn too_many_vars() {
        assert!(TruthTable::zero(21).is_err());
        assert!(TruthTable::zero(20).is_ok());
    }

    #[test]
    fn permute_vars_moves_inputs() {
        // f = x1; moving variable 0 to position 2 gives x3
        let f = TruthTable::from_fn(3, |x| x & 1 == 1).unwrap();
        let g = f.permute_vars(&[2, 0, 1]);
        assert_eq!(g, TruthTable::from_fn(3, |x| (x >> 2) & 1 == 1).unwrap());
    }
}
