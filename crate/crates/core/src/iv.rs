//! Expansion of the 256-bit session key into the 1600-bit initial vector.
//!
//! A 256-stage register runs eight steps at a time. On each byte-clock the
//! stages 128 and 129 (stage 128 as the high bit) pick one of four 8×8
//! S-boxes, the next eight feedback bits of the linear recurrence form a
//! byte `t`, and `S(t)` is shifted in (its most significant bit lands
//! deepest, as if it had been clocked in first) and emitted. The first 40
//! bytes are discarded and the next 200 form the vector.

use std::fmt;

use crate::bits::bytes_to_bits;
use crate::galois::{FeedbackPoly, Lfsr};
use crate::keyschedule::SessionKey;
use crate::nums::ConstantStream;
use crate::{Error, Result};

pub const IV_BITS: usize = 1600;
pub const IV_BYTES: usize = IV_BITS / 8;
pub const DISCARD_BYTES: usize = 40;
pub const SELECTOR_STAGES: (usize, usize) = (128, 129);

/// Four bijective 8-bit S-boxes, shared between the IV generator and the
/// keystream clock control.
#[derive(Clone, PartialEq, Eq)]
pub struct Sbox8Suite {
    boxes: [[u8; 256]; 4],
}

impl fmt::Debug for Sbox8Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Sbox8Suite({:02x?}..)", &self.boxes[0][..4])
    }
}

impl Sbox8Suite {
    pub fn new(boxes: [[u8; 256]; 4]) -> Result<Self> {
        for (i, b) in boxes.iter().enumerate() {
            let mut seen = [false; 256];
            for &v in b {
                if std::mem::replace(&mut seen[v as usize], true) {
                    return Err(Error::NotBijective(format!("8-bit S-box {}", i + 1)));
                }
            }
        }
        Ok(Sbox8Suite { boxes })
    }

    /// Four Fisher–Yates shuffles of `0..256` from the constant stream keyed
    /// by `label`.
    pub fn derive(label: &[u8]) -> Self {
        let mut stream = ConstantStream::new(label);
        let boxes = std::array::from_fn(|_| {
            let mut b: [u8; 256] = std::array::from_fn(|i| i as u8);
            stream.shuffle(&mut b);
            b
        });
        Sbox8Suite { boxes }
    }

    #[inline]
    pub fn apply(&self, index: usize, input: u8) -> u8 {
        self.boxes[index][input as usize]
    }

    pub fn boxes(&self) -> &[[u8; 256]; 4] {
        &self.boxes
    }

    /// Fixture text: four blocks, each 256 bytes as hex, 32 bytes per line.
    pub fn to_fixture(&self) -> String {
        let mut s = String::new();
        for (i, b) in self.boxes.iter().enumerate() {
            s.push_str(&format!("# S-box {}\n", i + 1));
            for row in b.chunks(32) {
                for v in row {
                    s.push_str(&format!("{v:02x}"));
                }
                s.push('\n');
            }
        }
        s
    }

    pub fn parse_fixture(text: &str) -> Result<Self> {
        let mut bytes = Vec::with_capacity(1024);
        for (i, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            if line.len() % 2 != 0 {
                return Err(Error::parse(
                    "S-box fixture",
                    i + 1,
                    "odd number of hex digits",
                ));
            }
            for k in (0..line.len()).step_by(2) {
                let v = u8::from_str_radix(&line[k..k + 2], 16)
                    .map_err(|_| Error::parse("S-box fixture", i + 1, "bad hex byte"))?;
                bytes.push(v);
            }
        }
        if bytes.len() != 1024 {
            return Err(Error::parse(
                "S-box fixture",
                0,
                format!("{} bytes, expected 1024", bytes.len()),
            ));
        }
        let boxes =
            std::array::from_fn(|i| bytes[i * 256..(i + 1) * 256].try_into().expect("256 bytes"));
        Sbox8Suite::new(boxes)
    }
}

#[derive(Clone, Debug)]
pub enum Substitution {
    Sboxes(Box<Sbox8Suite>),
    /// No substitution; the generator degenerates to a plain LFSR. Only
    /// useful for checking that the S-boxes are what makes it nonlinear.
    Identity,
}

#[derive(Clone, PartialEq, Eq)]
pub struct InitialVector([u8; IV_BYTES]);

impl InitialVector {
    pub fn from_bytes(bytes: [u8; IV_BYTES]) -> Self {
        InitialVector(bytes)
    }

    pub fn as_bytes(&self) -> &[u8; IV_BYTES] {
        &self.0
    }

    pub fn bits(&self) -> Vec<bool> {
        bytes_to_bits(&self.0)
    }
}

impl fmt::Debug for InitialVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("InitialVector(..)")
    }
}

#[derive(Clone, Debug)]
pub struct IvGenerator {
    poly: FeedbackPoly,
    substitution: Substitution,
    selector: (usize, usize),
    discard_bytes: usize,
    output_bytes: usize,
}

impl IvGenerator {
    /// The production generator: degree-256 register, stages 128/129 as
    /// selector, 40 discarded bytes, 200 emitted.
    pub fn new(poly: FeedbackPoly, sboxes: Sbox8Suite) -> Result<Self> {
        if poly.degree() != 256 {
            return Err(Error::InvalidPolynomial(format!(
                "IV register needs degree 256, got {}",
                poly.degree()
            )));
        }
        Ok(IvGenerator {
            poly,
            substitution: Substitution::Sboxes(Box::new(sboxes)),
            selector: SELECTOR_STAGES,
            discard_bytes: DISCARD_BYTES,
            output_bytes: IV_BYTES,
        })
    }

    /// A generator of any size; the selector reads stages `L/2` and
    /// `L/2 + 1`.
    pub fn custom(
        poly: FeedbackPoly,
        substitution: Substitution,
        discard_bytes: usize,
        output_bytes: usize,
    ) -> Result<Self> {
        let l = poly.degree();
        if !(8..=crate::galois::MAX_STAGES).contains(&l) {
            return Err(Error::InvalidPolynomial(format!(
                "degree {l} outside 8..=256"
            )));
        }
        Ok(IvGenerator {
            poly,
            substitution,
            selector: (l / 2, l / 2 + 1),
            discard_bytes,
            output_bytes,
        })
    }

    /// Byte-clocks per generated vector.
    pub fn byte_clocks(&self) -> usize {
        self.discard_bytes + self.output_bytes
    }

    /// Runs `clocks` byte-clocks from `seed`, calling `visit(selector, byte)`
    /// after each one.
    pub(crate) fn run(
        &self,
        seed: &[bool],
        clocks: usize,
        mut visit: impl FnMut(usize, u8),
    ) -> Result<()> {
        let mut reg = Lfsr::new(self.poly.clone(), seed).map_err(|e| match e {
            Error::ZeroState => Error::ZeroSessionKey,
            other => other,
        })?;
        for _ in 0..clocks {
            let sel = 2 * reg.stage(self.selector.0) as usize + reg.stage(self.selector.1) as usize;
            let t = reg.peek_feedback(8) as u8;
            let s = match &self.substitution {
                Substitution::Sboxes(boxes) => boxes.apply(sel, t),
                Substitution::Identity => t,
            };
            for i in (0..8).rev() {
                reg.shift_in((s >> i) & 1 == 1);
            }
            visit(sel, s);
        }
        Ok(())
    }

    /// Output bytes after the discard, seeded with `seed` (stage 1 first).
    pub fn generate_bytes(&self, seed: &[bool]) -> Result<Vec<u8>> {
        let mut out = Vec::with_capacity(self.output_bytes);
        let mut n = 0;
        self.run(seed, self.byte_clocks(), |_, b| {
            if n >= self.discard_bytes {
                out.push(b);
            }
            n += 1;
        })?;
        Ok(out)
    }

    /// S-box selector values over `clocks` byte-clocks.
    pub fn selector_trace(&self, seed: &[bool], clocks: usize) -> Result<Vec<u8>> {
        let mut out = Vec::with_capacity(clocks);
        self.run(seed, clocks, |sel, _| out.push(sel as u8))?;
        Ok(out)
    }

    pub fn generate_iv(&self, sk: &SessionKey) -> Result<InitialVector> {
        if self.output_bytes != IV_BYTES || self.poly.degree() != 256 {
            return Err(Error::InvalidArgument(
                "not a production IV generator".into(),
            ));
        }
        let bytes = self.generate_bytes(&sk.bits())?;
        Ok(InitialVector(bytes.try_into().expect("200 output bytes")))
    }
}
