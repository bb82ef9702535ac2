use std::collections::BTreeSet;
use std::fmt;

use super::truth_table::{TruthTable, MAX_VARS};
use crate::{Error, Result};

/// Algebraic normal form: the set of monomials with coefficient 1. A
/// monomial is a bit mask over the variables (bit `i - 1` for `x_i`); the
/// empty mask is the constant term.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Anf {
    n_vars: usize,
    monomials: BTreeSet<u32>,
}

impl Anf {
    pub fn new(n_vars: usize, monomials: impl IntoIterator<Item = u32>) -> Result<Self> {
        if n_vars > MAX_VARS {
            return Err(Error::BooleanParameters(format!("{n_vars} variables")));
        }
        let mut set = BTreeSet::new();
        for m in monomials {
            if n_vars < 32 && m >> n_vars != 0 {
                return Err(Error::BooleanParameters(format!(
                    "monomial {m:#x} uses a variable beyond x{n_vars}"
                )));
            }
            // x ^ x = 0: a repeated monomial cancels
            if !set.insert(m) {
                set.remove(&m);
            }
        }
        Ok(Anf {
            n_vars,
            monomials: set,
        })
    }

    /// Builds from monomials given as lists of 1-based variable indices.
    pub fn from_terms<'a>(
        n_vars: usize,
        terms: impl IntoIterator<Item = &'a [usize]>,
    ) -> Result<Self> {
        let masks = terms
            .into_iter()
            .map(|vars| {
                vars.iter().try_fold(0u32, |acc, &v| {
                    if v == 0 || v > n_vars {
                        Err(Error::BooleanParameters(format!(
                            "variable x{v} out of range"
                        )))
                    } else {
                        Ok(acc | 1 << (v - 1))
                    }
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Anf::new(n_vars, masks)
    }

    pub fn n_vars(&self) -> usize {
        self.n_vars
    }

    pub fn monomials(&self) -> &BTreeSet<u32> {
        &self.monomials
    }

    /// Largest monomial size; 0 for constants (including the zero function).
    pub fn degree(&self) -> usize {
        self.monomials
            .iter()
            .map(|m| m.count_ones() as usize)
            .max()
            .unwrap_or(0)
    }

    pub fn eval(&self, x: usize) -> bool {
        let x = x as u32;
        self.monomials.iter().filter(|&&m| x & m == m).count() & 1 == 1
    }

    /// Binary Möbius transform from coefficients to values.
    pub fn to_truth_table(&self) -> TruthTable {
        let mut a = vec![0u8; 1 << self.n_vars];
        for &m in &self.monomials {
            a[m as usize] = 1;
        }
        moebius(&mut a, self.n_vars);
        TruthTable::from_fn(self.n_vars, |x| a[x] == 1).expect("n_vars validated")
    }

    pub fn from_truth_table(t: &TruthTable) -> Anf {
        let mut a: Vec<u8> = t.to_bits().into_iter().map(u8::from).collect();
        moebius(&mut a, t.n_vars());
        Anf {
            n_vars: t.n_vars(),
            monomials: (0..a.len() as u32)
                .filter(|&m| a[m as usize] == 1)
                .collect(),
        }
    }
}

/// In-place Möbius transform; it is its own inverse over GF(2).
fn moebius(a: &mut [u8], n_vars: usize) {
    for i in 0..n_vars {
        let bit = 1 << i;
        for x in 0..a.len() {
            if x & bit != 0 {
                a[x] ^= a[x ^ bit];
            }
        }
    }
}

impl fmt::Debug for Anf {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Anf(n={}, {self})", self.n_vars)
    }
}

impl fmt::Display for Anf {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.monomials.is_empty() {
            return f.write_str("0");
        }
        let terms: Vec<String> = self
            .monomials
            .iter()
            .map(|&m| {
                if m == 0 {
                    "1".to_string()
                } else {
                    (0..32)
                        .filter(|i| (m >> i) & 1 == 1)
                        .map(|i| format!("x{}", i + 1))
                        .collect::<Vec<_>>()
                        .join("*")
                }
            })
            .collect();
        f.write_str(&terms.join(" + "))
    }
}
