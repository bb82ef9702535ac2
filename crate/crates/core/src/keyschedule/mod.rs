//! Message keys, the Scram-5 scrambler and session-key derivation.

mod keyfile;
mod message_key;
mod scram;

pub use keyfile::KeyFile;
pub use message_key::{MessageKeyState, MESSAGE_KEY_TAPS};
pub use scram::{SpnParams, ROUNDS};

use std::fmt;

use crate::bits::bytes_to_bits;
use crate::{Error, Result};

/// The long-term 256-bit secret.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct MainKey([u8; 32]);

impl MainKey {
    pub fn new(bytes: [u8; 32]) -> Result<Self> {
        if bytes.iter().all(|&b| b == 0) {
            return Err(Error::ZeroMainKey);
        }
        Ok(MainKey(bytes))
    }

    pub fn as_bytes(&self) -> &[u8; 32] {
        &self.0
    }

    pub fn bits(&self) -> Vec<bool> {
        bytes_to_bits(&self.0)
    }
}

impl fmt::Debug for MainKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("MainKey(..)")
    }
}

/// Per-message 32-bit value; travels in clear next to the ciphertext.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MessageKey(pub u32);

/// 256-bit per-message working key.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct SessionKey([u8; 32]);

impl SessionKey {
    pub fn from_bytes(bytes: [u8; 32]) -> Self {
        SessionKey(bytes)
    }

    pub fn as_bytes(&self) -> &[u8; 32] {
        &self.0
    }

    /// Bits MSB-first; index 0 is "bit 1" of the key.
    pub fn bits(&self) -> Vec<bool> {
        bytes_to_bits(&self.0)
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&b| b == 0)
    }
}

impl fmt::Debug for SessionKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("SessionKey(..)")
    }
}

/// Expands a message key into 256 bits by chaining Scram-5 with round
/// constants `1..=8`: `w_i = scram5(w_{i-1} ^ i)`, `w_0 = mk`.
pub fn expand_message_key(mk: MessageKey, spn: &SpnParams) -> [u8; 32] {
    let mut out = [0u8; 32];
    let mut w = mk.0;
    for (i, chunk) in out.chunks_exact_mut(4).enumerate() {
        w = spn.scram5(w ^ (i as u32 + 1));
        chunk.copy_from_slice(&w.to_be_bytes());
    }
    out
}

/// Session key = expanded message key XOR main key.
pub fn derive_session_key(mk: MessageKey, main: &MainKey, spn: &SpnParams) -> SessionKey {
    let mut out = expand_message_key(mk, spn);
    for (o, k) in out.iter_mut().zip(main.as_bytes()) {
        *o ^= k;
    }
    SessionKey(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn zero_main_key_rejected() {
        assert_eq!(MainKey::new([0; 32]), Err(Error::ZeroMainKey));
    }

    #[test]
    fn expansion_words_differ() {
        let spn = &fixtures::bundled().spn;
        let e = expand_message_key(MessageKey(0x1234_5678), spn);
        let words: Vec<&[u8]> = e.chunks(4).collect();
        for i in 0..8 {
            for j in 0..i {
                assert_ne!(words[i], words[j]);
            }
        }
    }

    #[test]
    fn session_key_minus_main_is_expansion() {
        let spn = &fixtures::bundled().spn;
        let mk = MessageKey(0xdead_beef);
        let expanded = expand_message_key(mk, spn);
        for seed in [1u8, 7, 200] {
            let main = MainKey::new([seed; 32]).unwrap();
            let sk = derive_session_key(mk, &main, spn);
            let back: Vec<u8> = sk
                .as_bytes()
                .iter()
                .zip(main.as_bytes())
                .map(|(a, b)| a ^ b)
                .collect();
            assert_eq!(back, expanded);
        }
    }
}
