use super::MessageKey;
use crate::bits::u32_to_bits;
use crate::galois::{FeedbackPoly, Lfsr};
use crate::{Error, Result};

/// Exponents of the message-key register's feedback polynomial
/// `x^32 + x^29 + x^24 + ... + x^3 + 1`.
pub const MESSAGE_KEY_TAPS: [usize; 15] = [32, 29, 24, 23, 21, 19, 17, 16, 14, 13, 11, 9, 6, 3, 0];

/// Clocks per issued key.
const CLOCKS_PER_KEY: u64 = 32;

/// Message-key issuer: a maximum-length register clocked 32 times per key,
/// whose state after those clocks is the key (stage 1 = most significant
/// bit).
///
/// Since 32 is coprime to `2^L - 1`, successive keys run through all
/// `2^L - 1` nonzero states before repeating. The counter stops one short
/// of the period so no key is ever issued twice.
#[derive(Clone, Debug)]
pub struct MessageKeyState {
    register: Lfsr,
    seed: Vec<bool>,
    counter: u64,
}

impl MessageKeyState {
    pub fn message_key_poly() -> FeedbackPoly {
        FeedbackPoly::new(MESSAGE_KEY_TAPS).expect("constant polynomial is well formed")
    }

    /// Production register seeded from a 32-bit nonzero word.
    pub fn new(seed: u32) -> Result<Self> {
        Self::resume(seed, 0)
    }

    /// Rebuilds the issuer after `counter` keys have been handed out.
    pub fn resume(seed: u32, counter: u64) -> Result<Self> {
        Self::with_register(Self::message_key_poly(), &u32_to_bits(seed), counter)
    }

    /// Any register of up to 64 stages; used for reduced-size models.
    pub fn with_register(poly: FeedbackPoly, seed: &[bool], counter: u64) -> Result<Self> {
        if poly.degree() > 64 {
            return Err(Error::DegreeTooLarge(poly.degree()));
        }
        let mut register = Lfsr::new(poly, seed)?;
        let limit = Self::limit_for(register.len());
        if counter > limit {
            return Err(Error::RekeyRequired);
        }
        register.advance(counter * CLOCKS_PER_KEY);
        Ok(MessageKeyState {
            register,
            seed: seed.to_vec(),
            counter,
        })
    }

    fn limit_for(len: usize) -> u64 {
        // keys may be issued while counter < 2^L - 2
        ((1u128 << len) - 2) as u64
    }

    pub fn counter(&self) -> u64 {
        self.counter
    }

    /// Keys that may still be issued under the current main key.
    pub fn remaining(&self) -> u64 {
        Self::limit_for(self.register.len()) - self.counter
    }

    pub fn register(&self) -> &Lfsr {
        &self.register
    }

    pub fn seed(&self) -> &[bool] {
        &self.seed
    }

    /// Advances 32 clocks and returns the register state packed with stage 1
    /// as the most significant of `L` bits.
    pub fn next_word(&mut self) -> Result<u64> {
        if self.remaining() == 0 {
            return Err(Error::RekeyRequired);
        }
        self.register.advance(CLOCKS_PER_KEY);
        self.counter += 1;
        Ok(self
            .register
            .stages()
            .iter()
            .fold(0u64, |acc, &b| (acc << 1) | b as u64))
    }

    pub fn next_message_key(&mut self) -> Result<MessageKey> {
        if self.register.len() != 32 {
            return Err(Error::InvalidArgument(
                "message keys need a 32-stage register".into(),
            ));
        }
        self.next_word().map(|w| MessageKey(w as u32))
    }

    /// The key the next call would return, without issuing it.
    pub fn peek_message_key(&self) -> Result<MessageKey> {
        self.clone().next_message_key()
    }
}
