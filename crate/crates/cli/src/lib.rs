//! Command implementations and the ciphertext file format behind the `pals`
//! binary.

pub mod commands;
pub mod format;
