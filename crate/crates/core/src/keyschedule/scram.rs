use std::fmt::Write as _;

use crate::nums::ConstantStream;
use crate::{Error, Result};

pub const ROUNDS: usize = 5;

/// Parameters of the 32-bit substitution–permutation network.
///
/// Bit positions are numbered from the most significant bit (position 0);
/// the P-box sends input position `p` to output position `pbox[p]`, and
/// nibble `i` (nibble 0 is the most significant) goes through `sboxes[i]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpnParams {
    pbox: [u8; 32],
    sboxes: [[u8; 16]; 8],
    inv_pbox: [u8; 32],
    inv_sboxes: [[u8; 16]; 8],
}

fn invert<const N: usize>(perm: &[u8; N], what: &str) -> Result<[u8; N]> {
    let mut inv = [0u8; N];
    let mut seen = [false; N];
    for (i, &p) in perm.iter().enumerate() {
        let p = p as usize;
        if p >= N || seen[p] {
            return Err(Error::NotBijective(what.to_string()));
        }
        seen[p] = true;
        inv[p] = i as u8;
    }
    Ok(inv)
}

/// The affine P-box `p -> (5p + 1) mod 32`, a single 32-cycle.
pub(crate) fn affine_pbox() -> [u8; 32] {
    std::array::from_fn(|p| ((5 * p + 1) % 32) as u8)
}

/// Differential uniformity of a 4-bit S-box.
fn differential_uniformity(s: &[u8; 16]) -> usize {
    (1..16)
        .map(|dx| {
            let mut counts = [0usize; 16];
            for x in 0..16 {
                counts[(s[x] ^ s[x ^ dx]) as usize] += 1;
            }
            counts.into_iter().max().unwrap_or(0)
        })
        .max()
        .unwrap_or(0)
}

/// Largest linear-approximation imbalance `|#{a.x = b.S(x)} - 8|`.
fn linearity(s: &[u8; 16]) -> usize {
    let dot = |a: usize, b: usize| (a & b).count_ones() & 1;
    (1..16)
        .flat_map(|b| (1..16).map(move |a| (a, b)))
        .map(|(a, b)| {
            let agree = (0..16)
                .filter(|&x| dot(a, x) == dot(b, s[x] as usize))
                .count();
            agree.abs_diff(8)
        })
        .max()
        .unwrap_or(0)
}

/// No single-bit input difference may produce a single-bit output
/// difference.
fn spreads_single_bits(s: &[u8; 16]) -> bool {
    (0..4).all(|i| (0..16).all(|x| (s[x] ^ s[x ^ (1 << i)]).count_ones() >= 2))
}

/// Selection rule for derived 4-bit S-boxes: optimal differential and
/// linear properties and full spreading of single-bit differences.
pub(crate) fn acceptable_sbox4(s: &[u8; 16]) -> bool {
    spreads_single_bits(s) && differential_uniformity(s) <= 4 && linearity(s) <= 4
}

impl SpnParams {
    pub fn new(pbox: [u8; 32], sboxes: [[u8; 16]; 8]) -> Result<Self> {
        let inv_pbox = invert(&pbox, "P-box")?;
        let mut inv_sboxes = [[0u8; 16]; 8];
        for (i, s) in sboxes.iter().enumerate() {
            inv_sboxes[i] = invert(s, &format!("4-bit S-box {}", i + 1))?;
        }
        Ok(SpnParams {
            pbox,
            sboxes,
            inv_pbox,
            inv_sboxes,
        })
    }

    /// Affine P-box plus eight S-boxes drawn by Fisher–Yates shuffles of
    /// `0..16` from the constant stream keyed by `label`, keeping the first
    /// eight shuffles that pass [`acceptable_sbox4`].
    pub fn derive(label: &[u8]) -> Self {
        let mut stream = ConstantStream::new(label);
        let mut sboxes = [[0u8; 16]; 8];
        for s in sboxes.iter_mut() {
            loop {
                let mut cand: [u8; 16] = std::array::from_fn(|i| i as u8);
                stream.shuffle(&mut cand);
                if acceptable_sbox4(&cand) {
                    *s = cand;
                    break;
                }
            }
        }
        SpnParams::new(affine_pbox(), sboxes).expect("shuffles are bijections")
    }

    pub fn pbox(&self) -> &[u8; 32] {
        &self.pbox
    }

    pub fn sboxes(&self) -> &[[u8; 16]; 8] {
        &self.sboxes
    }

    fn permute(w: u32, table: &[u8; 32]) -> u32 {
        let mut out = 0u32;
        for (p, &q) in table.iter().enumerate() {
            let bit = (w >> (31 - p)) & 1;
            out |= bit << (31 - q as u32);
        }
        out
    }

    fn substitute(w: u32, boxes: &[[u8; 16]; 8]) -> u32 {
        let mut out = 0u32;
        for (i, s) in boxes.iter().enumerate() {
            let shift = 28 - 4 * i as u32;
            let nib = ((w >> shift) & 0xf) as usize;
            out |= (s[nib] as u32) << shift;
        }
        out
    }

    /// One round: P-box, then the eight nibble S-boxes.
    pub fn round(&self, w: u32) -> u32 {
        Self::substitute(Self::permute(w, &self.pbox), &self.sboxes)
    }

    pub fn scram5(&self, w: u32) -> u32 {
        (0..ROUNDS).fold(w, |w, _| self.round(w))
    }

    pub fn scram5_inverse(&self, w: u32) -> u32 {
        (0..ROUNDS).fold(w, |w, _| {
            Self::permute(Self::substitute(w, &self.inv_sboxes), &self.inv_pbox)
        })
    }

    /// Fixture text: the 32 P-box entries on one line, then one line of 16
    /// hex digits per S-box.
    pub fn to_fixture(&self) -> String {
        let mut s = String::new();
        s.push_str("# P-box: output position of input bit p (p = 0 is the most significant)\n");
        let entries: Vec<String> = self.pbox.iter().map(|p| p.to_string()).collect();
        s.push_str(&entries.join(" "));
        s.push('\n');
        s.push_str("# 4-bit S-boxes 1..8: S[0] .. S[15] as hex digits\n");
        for sb in &self.sboxes {
            for v in sb {
                write!(s, "{v:x}").expect("string write");
            }
            s.push('\n');
        }
        s
    }

    pub fn parse_fixture(text: &str) -> Result<Self> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.trim()))
            .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
        let (ln, pline) = lines
            .next()
            .ok_or_else(|| Error::parse("SPN fixture", 1, "empty"))?;
        let entries = pline
            .split(|c: char| c.is_whitespace() || c == ',')
            .filter(|t| !t.is_empty())
            .map(|t| {
                t.parse::<u8>()
                    .map_err(|_| Error::parse("SPN fixture", ln, "bad P-box entry"))
            })
            .collect::<Result<Vec<_>>>()?;
        let pbox: [u8; 32] = entries
            .try_into()
            .map_err(|_| Error::parse("SPN fixture", ln, "P-box needs 32 entries"))?;
        let mut sboxes = [[0u8; 16]; 8];
        for sb in sboxes.iter_mut() {
            let (ln, l) = lines
                .next()
                .ok_or_else(|| Error::parse("SPN fixture", 0, "fewer than eight S-boxes"))?;
            let vals = l
                .chars()
                .map(|c| c.to_digit(16).map(|d| d as u8))
                .collect::<Option<Vec<u8>>>()
                .ok_or_else(|| Error::parse("SPN fixture", ln, "bad hex digit"))?;
            *sb = vals
                .try_into()
                .map_err(|_| Error::parse("SPN fixture", ln, "S-box needs 16 digits"))?;
        }
        if let Some((ln, _)) = lines.next() {
            return Err(Error::parse("SPN fixture", ln, "trailing data"));
        }
        SpnParams::new(pbox, sboxes)
    }
}
