use std::sync::Arc;

use crate::fixtures::{self, Fixtures};
use crate::galois::FeedbackPoly;
use crate::iv::{InitialVector, IvGenerator};
use crate::keyschedule::{derive_session_key, MainKey, MessageKey, SessionKey, SpnParams};
use crate::keystream::{GeneratorState, KeystreamTables};
use crate::Result;

/// The full pipeline: message key -> session key -> IV -> generator.
///
/// Cheap to clone; all tables are shared.
#[derive(Clone, Debug)]
pub struct Pals {
    spn: SpnParams,
    iv: Arc<IvGenerator>,
    polys: Arc<[FeedbackPoly]>,
    tables: Arc<KeystreamTables>,
}

impl Pals {
    pub fn from_fixtures(f: &Fixtures) -> Self {
        Pals {
            spn: f.spn.clone(),
            iv: Arc::new(f.iv_generator()),
            polys: f.production_polys().into(),
            tables: f.keystream_tables(),
        }
    }

    /// The cipher over the bundled constants.
    pub fn bundled() -> Self {
        Pals::from_fixtures(fixtures::bundled())
    }

    pub fn spn(&self) -> &SpnParams {
        &self.spn
    }

    pub fn session_key(&self, main: &MainKey, mk: MessageKey) -> SessionKey {
        derive_session_key(mk, main, &self.spn)
    }

    pub fn initial_vector(&self, sk: &SessionKey) -> Result<InitialVector> {
        self.iv.generate_iv(sk)
    }

    /// Generator loaded for one message. Fails only when the session key is
    /// zero, which leaves the IV register without a seed.
    pub fn generator(&self, main: &MainKey, mk: MessageKey) -> Result<GeneratorState> {
        let sk = self.session_key(main, mk);
        self.generator_for_session(&sk)
    }

    pub fn generator_for_session(&self, sk: &SessionKey) -> Result<GeneratorState> {
        let iv = self.initial_vector(sk)?;
        let (state, _) =
            GeneratorState::load_initial_state(&self.polys, Arc::clone(&self.tables), sk, &iv)?;
        Ok(state)
    }

    /// XORs the message's keystream into `data`; encryption and decryption
    /// are the same operation.
    pub fn apply(&self, main: &MainKey, mk: MessageKey, data: &mut [u8]) -> Result<()> {
        self.generator(main, mk)?.apply_keystream(data);
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn apply_is_an_involution() {
        let pals = Pals::bundled();
        let main = MainKey::new([7; 32]).unwrap();
        let plain: Vec<u8> = (0..300u32).map(|i| (i * 31) as u8).collect();
        let mut data = plain.clone();
        pals.apply(&main, MessageKey(42), &mut data).unwrap();
        assert_ne!(data, plain);
        pals.apply(&main, MessageKey(42), &mut data).unwrap();
        assert_eq!(data, plain);
    }

    #[test]
    fn message_keys_separate_streams() {
        let pals = Pals::bundled();
        let main = MainKey::new([7; 32]).unwrap();
        let a = pals
            .generator(&main, MessageKey(1))
            .unwrap()
            .keystream_bytes(32);
        let b = pals
            .generator(&main, MessageKey(2))
            .unwrap()
            .keystream_bytes(32);
        assert_ne!(a, b);
    }
}
