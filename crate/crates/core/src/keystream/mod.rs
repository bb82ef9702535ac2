//! The keystream generator: eight irregularly clocked registers, S-box
//! driven majority clock control, filter functions F1..F8 and the
//! memory combiner `g`/`h`.
//!
//! One step, from a snapshot of the register outputs `o1..o8`:
//!
//! 1. `o1..o8` form a byte with register 1 as the most significant bit;
//! 2. `o1^o3^o5^o7` and `o2^o4^o6^o8` select one of the four S-boxes;
//! 3. the S-box maps the output byte to a control byte `c`;
//! 4. the registers whose bit of `c` equals the majority bit of `c` are
//!    clocked (all eight on a 4–4 tie);
//! 5. `F_i` reads eight stages of register `i` plus bit `i - 1` of `c`
//!    (counted from the least significant end);
//! 6. the keystream bit is `F_1 ^ ... ^ F_8 ^ h_prev`;
//! 7. `h_prev` becomes `h(F_1, ..., F_8, h_prev)`.

mod combiner;
mod state;

pub use combiner::{g_table, h_anf, h_table};
pub use state::{GeneratorState, KeystreamTables, PlacementPlan, PLACEMENT_WINDOWS};

/// Register lengths, register 1 first.
pub const REGISTER_LENGTHS: [usize; 8] = [239, 163, 223, 181, 199, 173, 193, 229];

/// Lengths of the reduced model used for exhaustive cross-checks.
pub const TOY_REGISTER_LENGTHS: [usize; 8] = [5, 7, 11, 13, 17, 19, 23, 29];

/// Stages feeding the filter function of a register of length `len`:
/// `ceil(k * len / 9)` for `k = 1..=8`.
pub fn filter_taps(len: usize) -> [usize; 8] {
    std::array::from_fn(|k| ((k + 1) * len).div_ceil(9))
}

/// Registers chosen for clocking, bit 7 = register 1 … bit 0 = register 8.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct ClockSet(pub u8);

impl ClockSet {
    /// `register` is 1-based.
    pub fn contains(&self, register: usize) -> bool {
        (1..=8).contains(&register) && (self.0 >> (8 - register)) & 1 == 1
    }

    pub fn registers(&self) -> Vec<usize> {
        (1..=8).filter(|&r| self.contains(r)).collect()
    }

    pub fn len(&self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(&self) -> bool {
        self.0 == 0
    }
}

/// S-box index from the eight register outputs (register 1 in bit 7).
#[inline]
pub fn select_sbox(outputs: u8) -> usize {
    let left = (outputs & 0b1010_1010).count_ones() & 1;
    let right = (outputs & 0b0101_0101).count_ones() & 1;
    (2 * left + right) as usize
}

/// Majority clock control: clock the registers whose control bit equals
/// the majority value; a 4–4 tie clocks everything.
#[inline]
pub fn clock_control(control: u8) -> ClockSet {
    match control.count_ones() {
        4 => ClockSet(0xff),
        n if n > 4 => ClockSet(control),
        _ => ClockSet(!control),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn byte(bits: [u8; 8]) -> u8 {
        bits.iter().fold(0, |acc, &b| (acc << 1) | b)
    }

    #[test]
    fn sbox_selection_examples() {
        assert_eq!(select_sbox(byte([1, 0, 1, 0, 1, 0, 1, 0])), 0);
        assert_eq!(select_sbox(byte([1, 0, 0, 0, 0, 0, 0, 0])), 2);
        assert_eq!(select_sbox(0), 0);
        assert_eq!(select_sbox(byte([0, 1, 0, 0, 0, 0, 0, 0])), 1);
        assert_eq!(select_sbox(byte([0, 0, 0, 0, 0, 0, 1, 1])), 3);
    }

    #[test]
    fn worked_clock_example() {
        assert_eq!(clock_control(0b1011_1001).registers(), vec![1, 3, 4, 5, 8]);
        assert_eq!(clock_control(0b1111_0000), ClockSet(0xff));
        assert_eq!(clock_control(0), ClockSet(0xff));
        assert_eq!(
            clock_control(0b0000_0001).registers(),
            vec![1, 2, 3, 4, 5, 6, 7]
        );
    }

    #[test]
    fn clock_sets_are_never_small() {
        for c in 0..=255u8 {
            let set = clock_control(c);
            assert!(set.len() >= 5 || set.len() == 8, "{c:08b}");
        }
    }

    #[test]
    fn taps_spread_evenly() {
        assert_eq!(filter_taps(239), [27, 54, 80, 107, 133, 160, 186, 213]);
        assert_eq!(filter_taps(9), [1, 2, 3, 4, 5, 6, 7, 8]);
        for len in REGISTER_LENGTHS {
            let t = filter_taps(len);
            assert!(t.windows(2).all(|w| w[0] < w[1]) && t[7] <= len);
        }
    }

    #[test]
    fn register_lengths_are_distinct_primes_summing_to_1600() {
        assert_eq!(REGISTER_LENGTHS.iter().sum::<usize>(), 1600);
        let is_prime = |n: usize| {
            n > 1
                && (2..n)
                    .take_while(|d| d * d <= n)
                    .all(|d| !n.is_multiple_of(d))
        };
        assert!(REGISTER_LENGTHS.iter().all(|&l| is_prime(l)));
        let mut sorted = REGISTER_LENGTHS;
        sorted.sort_unstable();
        assert!(sorted.windows(2).all(|w| w[0] < w[1]));
    }
}
