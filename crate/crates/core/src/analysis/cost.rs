use num_bigint::BigUint;

use crate::galois::{mersenne, primitive_count, FactorSet};
use crate::{Error, Result};

/// The published lower bound on the sum-form key count, in bits.
pub const KEYSPACE_CLAIM_LOG2: f64 = 477.0;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Formula {
    Keyspace,
    Tmto,
    Cube,
}

impl Formula {
    pub fn id(self) -> &'static str {
        match self {
            Formula::Keyspace => "keyspace",
            Formula::Tmto => "tmto",
            Formula::Cube => "cube",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CostReport {
    pub formula: Formula,
    pub log2_time: f64,
    pub log2_memory: f64,
}

/// Per-register count: `U = phi(2^L - 1) / L` primitive polynomials, each
/// with `2^L - 1` nonzero initial states.
#[derive(Clone, Debug, PartialEq)]
pub struct RegisterCount {
    pub length: usize,
    pub primitive_polys: BigUint,
    pub log2_polys: f64,
    /// `log2(U * (2^L - 1))`.
    pub log2_configurations: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct KeyspaceReport {
    pub registers: Vec<RegisterCount>,
    /// log2 of the product of the per-register configuration counts.
    pub log2_product: f64,
    /// log2 of their sum.
    pub log2_sum: f64,
}

impl KeyspaceReport {
    pub fn meets_claim(&self) -> bool {
        self.log2_sum > KEYSPACE_CLAIM_LOG2
    }

    /// Cost view; the time field carries the sum form.
    pub fn cost(&self) -> CostReport {
        CostReport {
            formula: Formula::Keyspace,
            log2_time: self.log2_sum,
            log2_memory: 0.0,
        }
    }
}

/// log2 of a positive big integer, accurate to double precision.
pub fn log2_biguint(x: &BigUint) -> f64 {
    let bits = x.bits();
    if bits <= 64 {
        return (x.iter_u64_digits().next().unwrap_or(0) as f64).log2();
    }
    let shift = bits - 64;
    let top = (x >> shift).iter_u64_digits().next().expect("nonzero");
    (top as f64).log2() + shift as f64
}

/// `log2(2^a + 2^b)` without overflow.
fn log2_add(a: f64, b: f64) -> f64 {
    let (hi, lo) = if a >= b { (a, b) } else { (b, a) };
    hi + (1.0 + (lo - hi).exp2()).log2()
}

pub fn keyspace_log2(lengths: &[usize], factors: &[&FactorSet]) -> Result<KeyspaceReport> {
    if lengths.len() != factors.len() {
        return Err(Error::InvalidArgument(format!(
            "{} lengths but {} factor sets",
            lengths.len(),
            factors.len()
        )));
    }
    let mut registers = Vec::with_capacity(lengths.len());
    let mut sum = BigUint::from(0u32);
    for (&l, f) in lengths.iter().zip(factors) {
        if f.exponent() != l {
            return Err(Error::MissingFactorization(l));
        }
        let u = primitive_count(f);
        let configs = &u * mersenne(l);
        sum += &configs;
        registers.push(RegisterCount {
            length: l,
            log2_polys: log2_biguint(&u),
            log2_configurations: log2_biguint(&configs),
            primitive_polys: u,
        });
    }
    let log2_product = registers.iter().map(|r| r.log2_configurations).sum();
    let log2_sum = if registers.is_empty() {
        0.0
    } else {
        log2_biguint(&sum)
    };
    Ok(KeyspaceReport {
        registers,
        log2_product,
        log2_sum,
    })
}

/// Time-memory tradeoff with `m = n/2`:
/// `T = (n + m^2)(2^m + 2^(n-m))`, `M = (n + m) 2^m`.
pub fn tmto_cost(n: usize) -> Result<CostReport> {
    if n < 2 || !n.is_multiple_of(2) {
        return Err(Error::InvalidArgument(format!(
            "state size {n} must be even and at least 2"
        )));
    }
    let (nf, m) = (n as f64, (n / 2) as f64);
    Ok(CostReport {
        formula: Formula::Tmto,
        log2_time: (nf + m * m).log2() + log2_add(m, nf - m),
        log2_memory: (nf + m).log2() + m,
    })
}

/// Cube attack: `2^(d-1) n + n^2` bit operations.
pub fn cube_cost(d: usize, n: usize) -> Result<CostReport> {
    if d == 0 || n == 0 {
        return Err(Error::InvalidArgument(
            "degree and variable count must be positive".into(),
        ));
    }
    let log_n = (n as f64).log2();
    Ok(CostReport {
        formula: Formula::Cube,
        log2_time: log2_add((d - 1) as f64 + log_n, 2.0 * log_n),
        log2_memory: 0.0,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fs(l: usize, primes: &[u64]) -> FactorSet {
        FactorSet::new(l, primes.iter().map(|&p| BigUint::from(p)).collect()).unwrap()
    }

    #[test]
    fn degree_four_count() {
        let f = fs(4, &[3, 5]);
        let r = keyspace_log2(&[4], &[&f]).unwrap();
        assert_eq!(r.registers[0].primitive_polys, BigUint::from(2u32));
        assert!((r.log2_sum - 30f64.log2()).abs() < 1e-12);
    }

    #[test]
    fn degree_two_count() {
        let f = fs(2, &[3]);
        let r = keyspace_log2(&[2], &[&f]).unwrap();
        assert_eq!(r.registers[0].primitive_polys, BigUint::from(1u32));
    }

    #[test]
    fn mismatched_factor_set_rejected() {
        let f = fs(4, &[3, 5]);
        assert_eq!(
            keyspace_log2(&[5], &[&f]),
            Err(Error::MissingFactorization(5))
        );
        assert!(keyspace_log2(&[4, 5], &[&f]).is_err());
    }

    #[test]
    fn product_dominates_sum() {
        let (a, b) = (fs(4, &[3, 5]), fs(5, &[31]));
        let r = keyspace_log2(&[4, 5], &[&a, &b]).unwrap();
        // 30 * 186 versus 30 + 186
        assert!((r.log2_product - (30f64 * 186.0).log2()).abs() < 1e-9);
        assert!((r.log2_sum - 216f64.log2()).abs() < 1e-9);
    }

    #[test]
    fn tmto_small_and_large() {
        let r = tmto_cost(2).unwrap();
        assert!((r.log2_time - (3f64.log2() + 2.0)).abs() < 1e-12);
        assert!((r.log2_memory - (1.0 + 3f64.log2())).abs() < 1e-12);
        let r = tmto_cost(1600).unwrap();
        assert!((r.log2_time - 820.29).abs() < 0.01, "{}", r.log2_time);
        assert!((r.log2_memory - 811.23).abs() < 0.01, "{}", r.log2_memory);
        assert!(tmto_cost(3).is_err());
        assert!(tmto_cost(0).is_err());
    }

    #[test]
    fn cube_values() {
        assert_eq!(cube_cost(1, 1).unwrap().log2_time, 1.0);
        assert!((cube_cost(2, 4).unwrap().log2_time - 24f64.log2()).abs() < 1e-12);
        assert!(cube_cost(163, 256).unwrap().log2_time >= 162.0);
        assert!(cube_cost(0, 4).is_err());
    }

    #[test]
    fn log2_of_large_integers() {
        assert_eq!(log2_biguint(&(BigUint::from(1u32) << 500u32)), 500.0);
        assert!((log2_biguint(&mersenne(239)) - 239.0).abs() < 1e-12);
        assert_eq!(log2_biguint(&BigUint::from(8u32)), 3.0);
    }
}
