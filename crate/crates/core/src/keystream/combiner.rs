use crate::boolefn::{Anf, TruthTable};

/// Monomials of the memory update function `h(X0..X8)`, variable `Xk` in
/// bit `k`.
const H_MONOMIALS: [&[u8]; 33] = [
    &[1],
    &[2],
    &[5],
    &[5, 3],
    &[6, 4],
    &[7, 0],
    &[7, 1],
    &[7, 5],
    &[8, 0],
    &[8, 2],
    &[8, 7, 0],
    &[8, 7, 1],
    &[8, 7, 3, 2],
    &[8, 7, 4, 2],
    &[8, 7, 4, 3, 2],
    &[8, 7, 5, 2],
    &[8, 7, 5, 3, 2],
    &[8, 7, 5, 4, 2],
    &[8, 7, 5, 4, 3, 2],
    &[8, 7, 6, 2],
    &[8, 7, 6, 3, 2],
    &[8, 7, 6, 4],
    &[8, 7, 6, 4, 2],
    &[8, 7, 6, 4, 3],
    &[8, 7, 6, 4, 3, 2],
    &[8, 7, 6, 5],
    &[8, 7, 6, 5, 2],
    &[8, 7, 6, 5, 3],
    &[8, 7, 6, 5, 3, 2],
    &[8, 7, 6, 5, 4],
    &[8, 7, 6, 5, 4, 2],
    &[8, 7, 6, 5, 4, 3],
    &[8, 7, 6, 5, 4, 3, 2],
];

pub fn h_anf() -> Anf {
    let masks = H_MONOMIALS
        .iter()
        .map(|vars| vars.iter().fold(0u32, |acc, &v| acc | 1 << v));
    Anf::new(9, masks).expect("nine-variable monomials")
}

pub fn h_table() -> TruthTable {
    h_anf().to_truth_table()
}

/// The output function `g = X0 ^ ... ^ X7 ^ X8` (X8 is the previous `h`).
pub fn g_table() -> TruthTable {
    TruthTable::from_fn(9, |x| x.count_ones() & 1 == 1).expect("nine variables")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::boolefn::certify;

    #[test]
    fn h_roundtrips_through_its_table() {
        let a = h_anf();
        assert_eq!(a.monomials().len(), 33);
        assert_eq!(h_table().to_anf(), a);
    }

    #[test]
    fn h_is_balanced_degree_seven() {
        let t = h_table();
        assert_eq!(t.weight(), 256);
        let r = certify(&t);
        assert!(r.balanced);
        assert_eq!(r.algebraic_degree, 7);
    }

    #[test]
    fn g_is_8_resilient() {
        let r = certify(&g_table());
        assert!(r.balanced);
        assert_eq!(r.resiliency_order, 8);
    }
}
