use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use num_traits::{One, Zero};

use crate::{Error, Result};

/// Prime factorization of `2^L - 1`, repeated primes listed once per
/// multiplicity.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FactorSet {
    exponent: usize,
    primes: Vec<BigUint>,
}

/// `2^L - 1`.
pub fn mersenne(exponent: usize) -> BigUint {
    (BigUint::one() << exponent) - BigUint::one()
}

const WITNESSES: [u32; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];

/// Miller–Rabin with the first twelve primes as witnesses: deterministic
/// below 3.3e24 and a strong sanity check above.
pub(crate) fn is_probable_prime(n: &BigUint) -> bool {
    let two = BigUint::from(2u32);
    if *n < two {
        return false;
    }
    for &p in &WITNESSES {
        let p = BigUint::from(p);
        if *n == p {
            return true;
        }
        if (n % &p).is_zero() {
            return false;
        }
    }
    let n1 = n - 1u32;
    let s = n1.trailing_zeros().unwrap_or(0);
    let d = &n1 >> s;
    'witness: for &a in &WITNESSES {
        let mut x = BigUint::from(a).modpow(&d, n);
        if x.is_one() || x == n1 {
            continue;
        }
        for _ in 1..s {
            x = x.modpow(&two, n);
            if x == n1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

impl FactorSet {
    /// Validates that the primes multiply to `2^exponent - 1` and that each
    /// one passes a primality check.
    pub fn new(exponent: usize, mut primes: Vec<BigUint>) -> Result<Self> {
        let fail = |reason: String| Error::FactorSet { exponent, reason };
        if exponent == 0 {
            return Err(fail("exponent must be positive".into()));
        }
        primes.sort();
        let product: BigUint = primes.iter().product();
        if product != mersenne(exponent) {
            return Err(fail("product of factors differs from 2^L - 1".into()));
        }
        if let Some(q) = primes.iter().find(|q| !is_probable_prime(q)) {
            return Err(fail(format!("{q} is not prime")));
        }
        Ok(FactorSet { exponent, primes })
    }

    pub fn exponent(&self) -> usize {
        self.exponent
    }

    /// Primes with multiplicity, ascending.
    pub fn primes(&self) -> &[BigUint] {
        &self.primes
    }

    pub fn distinct_primes(&self) -> Vec<BigUint> {
        let mut d = self.primes.clone();
        d.dedup();
        d
    }

    /// Euler's totient of `2^L - 1`.
    pub fn totient(&self) -> BigUint {
        let mut phi = mersenne(self.exponent);
        for q in self.distinct_primes() {
            phi = phi / &q * (&q - 1u32);
        }
        phi
    }
}

impl fmt::Display for FactorSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let qs: Vec<String> = self.primes.iter().map(|q| q.to_string()).collect();
        write!(f, "{}: {}", self.exponent, qs.join(","))
    }
}

impl FromStr for FactorSet {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = |reason: &str| Error::parse("factor set", 0, reason);
        let (l, rest) = s.split_once(':').ok_or_else(|| bad("missing ':'"))?;
        let exponent: usize = l.trim().parse().map_err(|_| bad("bad exponent"))?;
        let primes = rest
            .split(',')
            .map(str::trim)
            .filter(|t| !t.is_empty())
            .map(|t| t.parse::<BigUint>().map_err(|_| bad("bad prime")))
            .collect::<Result<Vec<_>>>()?;
        FactorSet::new(exponent, primes)
    }
}

/// Factor sets keyed by exponent, in the `L: q1,q2,...` file format.
#[derive(Clone, Debug, Default)]
pub struct FactorTable {
    sets: BTreeMap<usize, FactorSet>,
}

impl FactorTable {
    pub fn parse(text: &str) -> Result<Self> {
        let mut sets = BTreeMap::new();
        for (i, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let set: FactorSet = line.parse().map_err(|e| match e {
                Error::Parse { what, reason, .. } => Error::Parse {
                    what,
                    line: i + 1,
                    reason,
                },
                other => other,
            })?;
            sets.insert(set.exponent, set);
        }
        Ok(FactorTable { sets })
    }

    pub fn get(&self, exponent: usize) -> Result<&FactorSet> {
        self.sets
            .get(&exponent)
            .ok_or(Error::MissingFactorization(exponent))
    }

    pub fn insert(&mut self, set: FactorSet) {
        self.sets.insert(set.exponent, set);
    }

    pub fn iter(&self) -> impl Iterator<Item = &FactorSet> {
        self.sets.values()
    }
}

impl fmt::Display for FactorTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for set in self.sets.values() {
            writeln!(f, "{set}")?;
        }
        Ok(())
    }
}
