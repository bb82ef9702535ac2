use num_bigint::BigUint;

use super::factor::mersenne;
use super::{FactorSet, FeedbackPoly, Gf2Poly};
use crate::nums::ConstantStream;
use crate::{Error, Result};

/// Candidate budget for [`find_dense_primitive`].
pub const SEARCH_TRIALS: usize = 100_000;

fn prime_divisors(mut n: usize) -> Vec<usize> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            while n.is_multiple_of(d) {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

fn is_irreducible(m: &Gf2Poly, degree: usize) -> bool {
    // Rabin: x^(2^L) = x mod m, and gcd(x^(2^(L/r)) - x, m) = 1 for each
    // prime r dividing L.
    let x = Gf2Poly::x().rem(m);
    if Gf2Poly::x_pow_two_pow_mod(degree, m) != x {
        return false;
    }
    prime_divisors(degree).into_iter().all(|r| {
        let t = Gf2Poly::x_pow_two_pow_mod(degree / r, m).add(&x);
        t.gcd(m).degree() == Some(0)
    })
}

/// True iff `p` is irreducible and `x` has order exactly `2^L - 1` modulo
/// `p`, certified with the complete factorization `factors`.
pub fn is_primitive(p: &FeedbackPoly, factors: &FactorSet) -> Result<bool> {
    let degree = p.degree();
    if factors.exponent() != degree {
        return Err(Error::FactorSet {
            exponent: factors.exponent(),
            reason: format!("factor set does not belong to degree {degree}"),
        });
    }
    let m = p.to_gf2();
    if !is_irreducible(&m, degree) {
        return Ok(false);
    }
    let order = mersenne(degree);
    Ok(factors
        .distinct_primes()
        .iter()
        .all(|q| !Gf2Poly::x_pow_mod(&(&order / q), &m).is_one()))
}

/// Term counts the search may draw: odd (an even-weight polynomial is
/// divisible by `x + 1`), between 3 and `L + 1`, and within 10% of the
/// target. If the window holds no such weight, every feasible weight at the
/// minimum distance is used: degree 2 still yields `x^2 + x + 1`, and degree
/// 8, which has no irreducible trinomial, also draws weight 5.
fn allowed_weights(degree: usize, target: usize) -> Vec<usize> {
    let feasible: Vec<usize> = (3..=degree + 1).step_by(2).collect();
    let window: Vec<usize> = feasible
        .iter()
        .copied()
        .filter(|&w| w.abs_diff(target) * 10 <= target)
        .collect();
    if !window.is_empty() {
        return window;
    }
    let best = feasible
        .iter()
        .map(|&w| w.abs_diff(target))
        .min()
        .expect("degree >= 2 admits weight 3");
    feasible
        .into_iter()
        .filter(|&w| w.abs_diff(target) == best)
        .collect()
}

/// Seeded search for a primitive polynomial of the given degree with about
/// `target_weight` terms. The candidate stream is [`ConstantStream`] keyed
/// by `seed`, so equal inputs always return the same polynomial.
pub fn find_dense_primitive(
    degree: usize,
    target_weight: usize,
    factors: &FactorSet,
    seed: &[u8],
) -> Result<FeedbackPoly> {
    if degree < 2 {
        return Err(Error::InvalidArgument("degree must be at least 2".into()));
    }
    if factors.exponent() != degree {
        return Err(Error::FactorSet {
            exponent: factors.exponent(),
            reason: format!("factor set does not belong to degree {degree}"),
        });
    }
    let weights = allowed_weights(degree, target_weight);
    let mut stream = ConstantStream::new(seed);
    let mut middle: Vec<usize> = (1..degree).collect();
    for _ in 0..SEARCH_TRIALS {
        let w = weights[stream.below(weights.len() as u32) as usize];
        let k = w - 2;
        // partial Fisher–Yates: the first k slots become the chosen exponents
        for i in 0..k {
            let j = i + stream.below((middle.len() - i) as u32) as usize;
            middle.swap(i, j);
        }
        let taps = [degree, 0].into_iter().chain(middle[..k].iter().copied());
        let candidate = FeedbackPoly::new(taps)?;
        if is_primitive(&candidate, factors)? {
            return Ok(candidate);
        }
    }
    Err(Error::NotFound {
        trials: SEARCH_TRIALS,
    })
}

/// Number of primitive polynomials of degree `L`: `phi(2^L - 1) / L`.
pub fn primitive_count(factors: &FactorSet) -> BigUint {
    factors.totient() / BigUint::from(factors.exponent())
}
