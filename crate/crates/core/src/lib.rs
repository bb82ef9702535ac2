//! PALS: a clock-controlled combination generator with memory.
//!
//! The crate is organized bottom-up:
//!
//! - [`galois`]: GF(2) polynomials, Fibonacci LFSRs, primitivity certificates
//!   and a seeded search for dense primitive feedback polynomials.
//! - [`boolefn`]: truth tables, algebraic normal form, Walsh spectra and the
//!   resilient-function construction used for the filter functions.
//! - [`keyschedule`]: the 32-bit message-key register, the Scram-5 SPN and
//!   session-key derivation.
//! - [`iv`]: expansion of a session key into the 1600-bit initial vector.
//! - [`keystream`]: the eight irregularly clocked registers and the
//!   memory combiner.
//! - [`analysis`]: linear complexity, randomness tests, avalanche matrices and
//!   attack cost calculators.
//!
//! [`fixtures`] bundles the constants (polynomials, S-boxes, Boolean tables)
//! that the cipher needs, and [`Pals`] ties everything together.

pub mod analysis;
pub mod bits;
pub mod boolefn;
mod cipher;
mod error;
pub mod fixtures;
pub mod galois;
pub mod iv;
pub mod keyschedule;
pub mod keystream;
pub mod nums;

pub use cipher::Pals;
pub use error::{Error, Result};
