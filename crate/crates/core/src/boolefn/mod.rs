//! Boolean functions: truth tables, algebraic normal form, Walsh spectra
//! and certification of the usual cryptographic criteria.
//!
//! Input vectors are read as unsigned integers with `x_1` in the least
//! significant bit, so a table of `n` variables is indexed by
//! `x_1 + 2 x_2 + ... + 2^(n-1) x_n`.

mod anf;
mod resilient;
mod spectrum;
mod truth_table;

pub use anf::Anf;
pub use resilient::{construct_resilient, CONSTRUCTION_TRIALS};
pub use spectrum::{certify, walsh_spectrum, SpectralReport};
pub use truth_table::{TruthTable, MAX_VARS};
