use super::TruthTable;

/// Walsh–Hadamard spectrum `W(a) = sum_x (-1)^(f(x) + a.x)`.
pub fn walsh_spectrum(t: &TruthTable) -> Vec<i32> {
    let mut w: Vec<i32> = (0..t.len())
        .map(|x| if t.get(x) { -1 } else { 1 })
        .collect();
    let mut h = 1;
    while h < w.len() {
        for block in w.chunks_mut(2 * h) {
            let (lo, hi) = block.split_at_mut(h);
            for (a, b) in lo.iter_mut().zip(hi.iter_mut()) {
                let (x, y) = (*a, *b);
                *a = x + y;
                *b = x - y;
            }
        }
        h *= 2;
    }
    w
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SpectralReport {
    pub n_vars: usize,
    pub nonlinearity: u32,
    pub algebraic_degree: usize,
    /// Largest `m` with `W(a) = 0` for every `1 <= wt(a) <= m`.
    pub ci_order: usize,
    pub balanced: bool,
    /// `ci_order` for balanced functions, -1 otherwise.
    pub resiliency_order: i32,
}

impl SpectralReport {
    /// Siegenthaler: an `m`-resilient function has degree at most
    /// `n - m - 1` (degree 1 when `m = n - 1`); an unbalanced `m`-th order
    /// correlation-immune one has degree at most `n - m`.
    pub fn satisfies_siegenthaler(&self) -> bool {
        let (n, m, d) = (self.n_vars, self.ci_order, self.algebraic_degree);
        if m == 0 {
            return true;
        }
        if self.balanced {
            if m + 1 >= n {
                d <= 1
            } else {
                d + m < n
            }
        } else {
            d + m <= n
        }
    }
}

pub fn certify(t: &TruthTable) -> SpectralReport {
    let n = t.n_vars();
    let w = walsh_spectrum(t);
    let max_abs = w.iter().map(|v| v.unsigned_abs()).max().unwrap_or(0);
    let nonlinearity = (1u32 << n) / 2 - max_abs / 2;
    let balanced = w[0] == 0;
    let ci_order = (1..w.len())
        .filter(|&a| w[a] != 0)
        .map(|a| a.count_ones() as usize - 1)
        .min()
        .unwrap_or(n);
    SpectralReport {
        n_vars: n,
        nonlinearity,
        algebraic_degree: t.to_anf().degree(),
        ci_order,
        balanced,
        resiliency_order: if balanced { ci_order as i32 } else { -1 },
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::boolefn::Anf;

    fn direct_walsh(t: &TruthTable, a: usize) -> i32 {
        (0..t.len())
            .map(|x| {
                let e = t.get(x) as u32 + (a & x).count_ones();
                if e.is_multiple_of(2) {
                    1
                } else {
                    -1
                }
            })
            .sum()
    }

    #[test]
    fn constant_zero() {
        let w = walsh_spectrum(&TruthTable::zero(3).unwrap());
        assert_eq!(w, vec![8, 0, 0, 0, 0, 0, 0, 0]);
    }

    #[test]
    fn xor3_spectrum() {
        let t = TruthTable::from_fn(3, |x| x.count_ones() % 2 == 1).unwrap();
        let w = walsh_spectrum(&t);
        assert_eq!(w[7].abs(), 8);
        assert!(w[..7].iter().all(|&v| v == 0));
    }

    #[test]
    fn majority3() {
        let t = TruthTable::from_fn(3, |x| x.count_ones() >= 2).unwrap();
        let w = walsh_spectrum(&t);
        for (a, &v) in w.iter().enumerate() {
            assert_eq!(v, direct_walsh(&t, a));
        }
        assert_eq!(w.iter().map(|v| v.abs()).max(), Some(4));
        let r = certify(&t);
        assert_eq!(r.nonlinearity, 2);
        assert!(r.balanced);
        assert_eq!(r.ci_order, 0);
        assert_eq!(r.algebraic_degree, 2);
    }

    #[test]
    fn xor9_is_8_resilient() {
        let t = TruthTable::from_fn(9, |x| x.count_ones() % 2 == 1).unwrap();
        let r = certify(&t);
        assert!(r.balanced);
        assert_eq!(r.ci_order, 8);
        assert_eq!(r.resiliency_order, 8);
        assert_eq!(r.nonlinearity, 0);
        assert_eq!(r.algebraic_degree, 1);
        assert!(r.satisfies_siegenthaler());
    }

    #[test]
    fn unbalanced_has_no_resiliency() {
        let t = Anf::from_terms(4, [&[1, 2][..]]).unwrap().to_truth_table();
        let r = certify(&t);
        assert!(!r.balanced);
        assert_eq!(r.resiliency_order, -1);
        assert!(r.satisfies_siegenthaler());
    }

    #[test]
    fn siegenthaler_flags_impossible_reports() {
        let bogus = SpectralReport {
            n_vars: 9,
            nonlinearity: 240,
            algebraic_degree: 7,
            ci_order: 2,
            balanced: true,
            resiliency_order: 2,
        };
        assert!(!bogus.satisfies_siegenthaler());
    }
}
