//! Bit-string conventions shared by every module.
//!
//! Bit strings are `[bool]` slices indexed from 0; "bit 1" of a key in the
//! cipher description is index 0 here. When bits are packed into bytes or
//! words the first bit is the most significant one.

/// Unpacks bytes MSB-first.
pub fn bytes_to_bits(bytes: &[u8]) -> Vec<bool> {
    bytes
        .iter()
        .flat_map(|&b| (0..8).rev().map(move |i| (b >> i) & 1 == 1))
        .collect()
}

/// Packs bits MSB-first; a trailing partial byte is zero-padded.
pub fn bits_to_bytes(bits: &[bool]) -> Vec<u8> {
    bits.chunks(8)
        .map(|chunk| {
            chunk
                .iter()
                .enumerate()
                .fold(0u8, |acc, (i, &b)| acc | ((b as u8) << (7 - i)))
        })
        .collect()
}

pub fn u32_to_bits(word: u32) -> [bool; 32] {
    std::array::from_fn(|i| (word >> (31 - i)) & 1 == 1)
}

pub fn bits_to_u32(bits: &[bool]) -> u32 {
    debug_assert_eq!(bits.len(), 32);
    bits.iter().fold(0u32, |acc, &b| (acc << 1) | b as u32)
}

pub fn hamming_distance(a: &[bool], b: &[bool]) -> usize {
    a.iter().zip(b).filter(|(x, y)| x != y).count()
}

/// Renders bits as a `0`/`1` string.
pub fn to_bit_string(bits: &[bool]) -> String {
    bits.iter().map(|&b| if b { '1' } else { '0' }).collect()
}
