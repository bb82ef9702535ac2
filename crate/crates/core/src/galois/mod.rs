//! GF(2)[x] services and the bit-exact LFSR engine.
//!
//! Registers use the Fibonacci convention: stage 1 receives the feedback
//! bit, stage L is the output, and a feedback polynomial
//! `C(x) = 1 + c_1 x + ... + x^L` XORs stage `e` into the feedback whenever
//! `c_e = 1`. This is the connection-polynomial form that Berlekamp–Massey
//! returns, so a register and its measured linear complexity line up.

mod factor;
mod lfsr;
mod poly;
mod primitive;

pub use factor::{mersenne, FactorSet, FactorTable};
pub use lfsr::{Lfsr, MAX_STAGES};
pub use poly::{FeedbackPoly, Gf2Poly};
pub use primitive::{find_dense_primitive, is_primitive, primitive_count, SEARCH_TRIALS};
