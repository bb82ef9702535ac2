use std::sync::Arc;

use super::{clock_control, filter_taps, select_sbox};
use crate::bits::bits_to_bytes;
use crate::boolefn::TruthTable;
use crate::galois::{FeedbackPoly, Lfsr};
use crate::iv::{InitialVector, Sbox8Suite, IV_BITS};
use crate::keyschedule::SessionKey;
use crate::{Error, Result};

/// Number of overlapping 3-bit session-key windows used for placement.
pub const PLACEMENT_WINDOWS: usize = 163;

/// Immutable lookup tables shared by any number of generator states.
#[derive(Debug)]
pub struct KeystreamTables {
    sboxes: Sbox8Suite,
    f_tables: [TruthTable; 8],
    h_table: TruthTable,
    f_packed: [[u64; 8]; 8],
    h_packed: [u64; 8],
}

fn pack9(t: &TruthTable) -> [u64; 8] {
    let mut out = [0u64; 8];
    for x in 0..512 {
        if t.get(x) {
            out[x >> 6] |= 1 << (x & 63);
        }
    }
    out
}

#[inline]
fn lookup9(table: &[u64; 8], x: usize) -> bool {
    (table[x >> 6] >> (x & 63)) & 1 == 1
}

impl KeystreamTables {
    /// `f_tables[i]` is F_{i+1}: inputs x1..x8 are its register's taps in
    /// increasing stage order, x9 is the control bit. `h_table` takes
    /// X0..X7 = F1..F8 and X8 = the previous `h` output.
    pub fn new(sboxes: Sbox8Suite, f_tables: [TruthTable; 8], h_table: TruthTable) -> Result<Self> {
        if f_tables.iter().chain([&h_table]).any(|t| t.n_vars() != 9) {
            return Err(Error::BooleanParameters(
                "keystream functions take 9 inputs".into(),
            ));
        }
        let f_packed = std::array::from_fn(|i| pack9(&f_tables[i]));
        let h_packed = pack9(&h_table);
        Ok(KeystreamTables {
            sboxes,
            f_tables,
            h_table,
            f_packed,
            h_packed,
        })
    }

    pub fn sboxes(&self) -> &Sbox8Suite {
        &self.sboxes
    }

    pub fn f_tables(&self) -> &[TruthTable; 8] {
        &self.f_tables
    }

    pub fn h_table(&self) -> &TruthTable {
        &self.h_table
    }
}

/// Where the first 163 IV bits go: window `j` of the session key (bits
/// `j, j+1, j+2`, first bit most significant) names the register, and the
/// bit takes that register's lowest unfilled stage.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PlacementPlan {
    assignments: Vec<u8>,
    fill_order: Vec<usize>,
}

impl PlacementPlan {
    pub fn from_session_key(sk: &SessionKey) -> Self {
        let bits = sk.bits();
        let mut next = [0usize; 8];
        let mut assignments = Vec::with_capacity(PLACEMENT_WINDOWS);
        let mut fill_order = Vec::with_capacity(PLACEMENT_WINDOWS);
        for w in bits[..PLACEMENT_WINDOWS + 2].windows(3) {
            let r = (4 * w[0] as usize) + (2 * w[1] as usize) + w[2] as usize;
            next[r] += 1;
            assignments.push(r as u8);
            fill_order.push(next[r]);
        }
        PlacementPlan {
            assignments,
            fill_order,
        }
    }

    /// Register index (0-based) chosen for each of the first 163 IV bits.
    pub fn assignments(&self) -> &[u8] {
        &self.assignments
    }

    /// Stage (1-based) each of those bits lands in.
    pub fn fill_order(&self) -> &[usize] {
        &self.fill_order
    }

    /// `(register index, 1-based stage)` for every IV bit: the planned 163
    /// first, then the rest filling the empty stages of registers 1..8 in
    /// increasing stage order.
    pub fn destinations(&self, lens: &[usize]) -> Vec<(usize, usize)> {
        let mut filled = vec![0usize; lens.len()];
        let mut out: Vec<(usize, usize)> = self
            .assignments
            .iter()
            .zip(&self.fill_order)
            .map(|(&r, &stage)| {
                filled[r as usize] = stage;
                (r as usize, stage)
            })
            .collect();
        for (r, &len) in lens.iter().enumerate() {
            out.extend((filled[r] + 1..=len).map(|stage| (r, stage)));
        }
        out
    }
}

/// Running generator: eight registers, their filter taps, the shared
/// tables and one memory bit.
#[derive(Clone, Debug)]
pub struct GeneratorState {
    registers: Vec<Lfsr>,
    taps: [[usize; 8]; 8],
    tables: Arc<KeystreamTables>,
    h_prev: bool,
}

/// Builds registers from stage vectors, forcing stage L of any all-zero
/// register to 1. Returns the 1-based numbers of repaired registers.
fn build_registers(
    polys: &[FeedbackPoly],
    mut stages: Vec<Vec<bool>>,
) -> Result<(Vec<Lfsr>, Vec<usize>)> {
    let mut repaired = Vec::new();
    let mut regs = Vec::with_capacity(8);
    for (i, (poly, st)) in polys.iter().zip(stages.iter_mut()).enumerate() {
        if st.iter().all(|&b| !b) {
            *st.last_mut().expect("nonempty register") = true;
            repaired.push(i + 1);
        }
        regs.push(Lfsr::new(poly.clone(), st)?);
    }
    Ok((regs, repaired))
}

impl GeneratorState {
    fn assemble(
        polys: &[FeedbackPoly],
        tables: Arc<KeystreamTables>,
        stages: Vec<Vec<bool>>,
    ) -> Result<(Self, Vec<usize>)> {
        let (registers, repaired) = build_registers(polys, stages)?;
        let taps = std::array::from_fn(|i| filter_taps(registers[i].len()));
        Ok((
            GeneratorState {
                registers,
                taps,
                tables,
                h_prev: false,
            },
            repaired,
        ))
    }

    fn check_polys(polys: &[FeedbackPoly]) -> Result<()> {
        if polys.len() != 8 {
            return Err(Error::InvalidArgument(format!(
                "need 8 registers, got {}",
                polys.len()
            )));
        }
        Ok(())
    }

    /// Initial load from a session key and a 1600-bit IV. Returns the state
    /// and the registers whose all-zero contents had to be repaired.
    pub fn load_initial_state(
        polys: &[FeedbackPoly],
        tables: Arc<KeystreamTables>,
        sk: &SessionKey,
        iv: &InitialVector,
    ) -> Result<(Self, Vec<usize>)> {
        Self::check_polys(polys)?;
        let lens: Vec<usize> = polys.iter().map(|p| p.degree()).collect();
        if lens.iter().sum::<usize>() != IV_BITS || lens.iter().any(|&l| l < PLACEMENT_WINDOWS) {
            return Err(Error::InvalidArgument(
                "registers must total 1600 stages, each at least 163 long".into(),
            ));
        }
        let ivb = iv.bits();
        let plan = PlacementPlan::from_session_key(sk);
        let mut stages: Vec<Vec<bool>> = lens.iter().map(|&l| vec![false; l]).collect();
        for (bit, (r, stage)) in ivb.iter().zip(plan.destinations(&lens)) {
            stages[r][stage - 1] = *bit;
        }
        Self::assemble(polys, tables, stages)
    }

    /// Fills registers 1..8 in order, stage 1 first, from `bits`; used for
    /// reduced models that have no IV of their own.
    pub fn from_stages(
        polys: &[FeedbackPoly],
        tables: Arc<KeystreamTables>,
        bits: &[bool],
    ) -> Result<(Self, Vec<usize>)> {
        Self::check_polys(polys)?;
        let total: usize = polys.iter().map(|p| p.degree()).sum();
        if bits.len() != total {
            return Err(Error::StateLength {
                expected: total,
                got: bits.len(),
            });
        }
        let mut rest = bits;
        let stages = polys
            .iter()
            .map(|p| {
                let (head, tail) = rest.split_at(p.degree());
                rest = tail;
                head.to_vec()
            })
            .collect();
        Self::assemble(polys, tables, stages)
    }

    /// Resynchronization: XOR the IV into registers 1..8 in order, reset the
    /// memory bit, repair all-zero registers.
    pub fn resync(&mut self, iv: &InitialVector) -> Vec<usize> {
        self.resync_bits(&iv.bits())
            .expect("IV length matches production registers")
    }

    pub fn resync_bits(&mut self, bits: &[bool]) -> Result<Vec<usize>> {
        let total = self.total_stages();
        if bits.len() != total {
            return Err(Error::StateLength {
                expected: total,
                got: bits.len(),
            });
        }
        let mut rest = bits;
        let mut repaired = Vec::new();
        for (i, reg) in self.registers.iter_mut().enumerate() {
            let (head, tail) = rest.split_at(reg.len());
            rest = tail;
            if reg.xor_stages(head) {
                repaired.push(i + 1);
            }
        }
        self.h_prev = false;
        Ok(repaired)
    }

    pub fn total_stages(&self) -> usize {
        self.registers.iter().map(Lfsr::len).sum()
    }

    /// All register stages, register 1 stage 1 first.
    pub fn serialize_registers(&self) -> Vec<bool> {
        self.registers.iter().flat_map(|r| r.stages()).collect()
    }

    pub fn registers(&self) -> &[Lfsr] {
        &self.registers
    }

    pub fn h_prev(&self) -> bool {
        self.h_prev
    }

    pub fn tables(&self) -> &Arc<KeystreamTables> {
        &self.tables
    }

    /// Output bits of all registers, register 1 in the most significant bit.
    #[inline]
    pub fn output_byte(&self) -> u8 {
        self.registers
            .iter()
            .fold(0u8, |acc, r| (acc << 1) | r.output() as u8)
    }

    /// Control byte for the current state (steps 1–3).
    #[inline]
    pub fn control_byte(&self) -> u8 {
        let outs = self.output_byte();
        self.tables.sboxes.apply(select_sbox(outs), outs)
    }

    #[inline]
    pub fn next_bit(&mut self) -> bool {
        let c = self.control_byte();
        let clocks = clock_control(c).0;
        for (i, reg) in self.registers.iter_mut().enumerate() {
            if (clocks >> (7 - i)) & 1 == 1 {
                reg.clock();
            }
        }
        let mut fx = 0usize;
        for i in 0..8 {
            let reg = &self.registers[i];
            let mut x = (((c >> i) & 1) as usize) << 8;
            for (k, &t) in self.taps[i].iter().enumerate() {
                x |= (reg.stage(t) as usize) << k;
            }
            fx |= (lookup9(&self.tables.f_packed[i], x) as usize) << i;
        }
        let z = (fx.count_ones() & 1 == 1) ^ self.h_prev;
        self.h_prev = lookup9(&self.tables.h_packed, fx | (self.h_prev as usize) << 8);
        z
    }

    pub fn keystream(&mut self, n: usize) -> Vec<bool> {
        (0..n).map(|_| self.next_bit()).collect()
    }

    #[inline]
    pub fn next_byte(&mut self) -> u8 {
        (0..8).fold(0u8, |acc, _| (acc << 1) | self.next_bit() as u8)
    }

    /// Keystream packed MSB-first.
    pub fn keystream_bytes(&mut self, n_bytes: usize) -> Vec<u8> {
        (0..n_bytes).map(|_| self.next_byte()).collect()
    }

    /// XORs the keystream into `data` in place.
    pub fn apply_keystream(&mut self, data: &mut [u8]) {
        for b in data {
            *b ^= self.next_byte();
        }
    }

    /// Packs `n` keystream bits MSB-first.
    pub fn keystream_packed(&mut self, n: usize) -> Vec<u8> {
        bits_to_bytes(&self.keystream(n))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    fn sk_with_prefix(prefix: &[bool]) -> SessionKey {
        let mut bits = vec![false; 256];
        bits[..prefix.len()].copy_from_slice(prefix);
        SessionKey::from_bytes(bits_to_bytes(&bits).try_into().unwrap())
    }

    #[test]
    fn first_window_five_goes_to_register_six() {
        let sk = sk_with_prefix(&[true, false, true]);
        let plan = PlacementPlan::from_session_key(&sk);
        assert_eq!(plan.assignments()[0], 5);
        assert_eq!(plan.fill_order()[0], 1);
        assert_eq!(plan.assignments().len(), PLACEMENT_WINDOWS);
    }

    #[test]
    fn zero_key_sends_every_window_to_register_one() {
        let f = fixtures::bundled();
        let sk = SessionKey::from_bytes([0; 32]);
        let plan = PlacementPlan::from_session_key(&sk);
        assert!(plan.assignments().iter().all(|&r| r == 0));
        assert_eq!(plan.fill_order(), (1..=163).collect::<Vec<_>>());

        let ivb: Vec<bool> = (0..1600).map(|i| (i * 37 + 11) % 7 < 3).collect();
        let iv = InitialVector::from_bytes(bits_to_bytes(&ivb).try_into().unwrap());
        let (st, repaired) = GeneratorState::load_initial_state(
            &f.production_polys(),
            f.keystream_tables(),
            &sk,
            &iv,
        )
        .unwrap();
        assert!(repaired.is_empty());
        // with every window on register 1 the whole load is sequential
        assert_eq!(st.serialize_registers(), ivb);
    }

    #[test]
    fn every_stage_written_exactly_once() {
        let lens = super::super::REGISTER_LENGTHS;
        for byte in [0x00u8, 0x9c, 0xff, 0x5a] {
            let plan = PlacementPlan::from_session_key(&SessionKey::from_bytes([byte; 32]));
            let dest = plan.destinations(&lens);
            assert_eq!(dest.len(), 1600);
            let mut seen = std::collections::HashSet::new();
            for &(r, stage) in &dest {
                assert!((1..=lens[r]).contains(&stage));
                assert!(seen.insert((r, stage)));
            }
        }
    }

    fn some_state() -> GeneratorState {
        let f = fixtures::bundled();
        let sk = SessionKey::from_bytes([0x42; 32]);
        let iv = f.iv_generator().generate_iv(&sk).unwrap();
        GeneratorState::load_initial_state(&f.production_polys(), f.keystream_tables(), &sk, &iv)
            .unwrap()
            .0
    }

    #[test]
    fn resync_with_zero_iv_keeps_registers() {
        let mut st = some_state();
        st.keystream(100);
        let before = st.serialize_registers();
        let repaired = st.resync(&InitialVector::from_bytes([0; 200]));
        assert!(repaired.is_empty());
        assert_eq!(st.serialize_registers(), before);
        assert!(!st.h_prev());
    }

    #[test]
    fn resync_is_an_involution() {
        let mut st = some_state();
        let before = st.serialize_registers();
        let iv = InitialVector::from_bytes(std::array::from_fn(|i| (i * 29 + 3) as u8));
        st.resync(&iv);
        assert_ne!(st.serialize_registers(), before);
        st.resync(&iv);
        assert_eq!(st.serialize_registers(), before);
    }

    #[test]
    fn self_cancelling_iv_repairs_all_registers() {
        let mut st = some_state();
        let current = st.serialize_registers();
        let iv = InitialVector::from_bytes(bits_to_bytes(&current).try_into().unwrap());
        assert_eq!(st.resync(&iv), vec![1, 2, 3, 4, 5, 6, 7, 8]);
        for r in st.registers() {
            let stages = r.stages();
            assert!(stages[..r.len() - 1].iter().all(|&b| !b) && stages[r.len() - 1]);
        }
    }

    #[test]
    fn zero_keystream_request() {
        let mut st = some_state();
        let before = st.serialize_registers();
        assert!(st.keystream(0).is_empty());
        assert_eq!(st.serialize_registers(), before);
    }

    #[test]
    fn batch_equals_single_steps() {
        let mut a = some_state();
        let mut b = a.clone();
        let batch = a.keystream(64);
        let single: Vec<bool> = (0..64).map(|_| b.next_bit()).collect();
        assert_eq!(batch, single);
        let mut c = b.clone();
        let mut d = b.clone();
        let bytes = c.keystream_bytes(16);
        assert_eq!(bytes, d.keystream_packed(128));
    }

    #[test]
    fn wrong_register_set_rejected() {
        let f = fixtures::bundled();
        let sk = SessionKey::from_bytes([1; 32]);
        let iv = InitialVector::from_bytes([1; 200]);
        let toy = f.toy_polys();
        assert!(GeneratorState::load_initial_state(&toy, f.keystream_tables(), &sk, &iv).is_err());
        assert!(GeneratorState::from_stages(&toy, f.keystream_tables(), &[true; 10]).is_err());
    }
}
