//! Contrast of XOR-combined shares in the evolving random-grid scheme.
//!
//! A kernel output with `n0` zeros is hit by each group through a
//! hypergeometric draw; the XOR is white when the total number of ones drawn
//! is even.

use crate::error::{param, Result};
use crate::rational::{binomial, int, Rational};
use crate::theory::partition::{group_shape, valid_partitions, weight_partition, Partition};
use num_bigint::BigInt;
use num_traits::{One, Zero};

/// Probability that the XOR of the selected bits is 0 when the kernel output
/// holds `n0` zeros.
pub fn pr_even(mu: &Partition, k: usize, n0: usize) -> Result<Rational> {
    if n0 > k {
        return Err(param(format!("n0={n0} exceeds k={k}")));
    }
    mu.check_parts(k)?;
    let ones = (k - n0) as u64;
    let mut prod = Rational::one();
    for &m in mu.parts() {
        // E[(-1)^o] for o ones among m draws without replacement.
        let mut signed = BigInt::zero();
        for h in 0..=m as u64 {
            let term = binomial(ones, h) * binomial(n0 as u64, m as u64 - h);
            if h % 2 == 0 {
                signed += term;
            } else {
                signed -= term;
            }
        }
        prod *= Rational::new(signed, binomial(k as u64, m as u64));
    }
    Ok((Rational::one() + prod) / int(2))
}

/// White and black light transmissions of the XOR of class `mu`.
pub fn xor_transmissions(mu: &Partition, k: usize) -> Result<(Rational, Rational)> {
    let outcomes = Rational::from_integer(BigInt::one() << (k - 1));
    let mut l = [Rational::zero(), Rational::zero()];
    for n0 in 0..=k {
        // Outcomes with n0 zeros come from s=0 when n0 and k share parity.
        let s = (k - n0) % 2;
        l[s] += Rational::from_integer(binomial(k as u64, n0 as u64)) / &outcomes * pr_even(mu, k, n0)?;
    }
    let [l0, l1] = l;
    Ok((l0, l1))
}

pub fn alpha_xor_partition(mu: &Partition, k: usize) -> Result<Rational> {
    if k < 2 {
        return Err(param(format!("k must be at least 2, got {k}")));
    }
    let (l0, l1) = xor_transmissions(mu, k)?;
    Ok((l0 - &l1) / (Rational::one() + l1))
}

/// Closed-form limit with `f(n0) = C(k,n0)((2n0-k)/k)^k`.
pub fn alpha_xor_infinity(k: usize) -> Result<Rational> {
    if k < 2 {
        return Err(param(format!("k must be at least 2, got {k}")));
    }
    let f = |n0: usize| {
        let base = Rational::new(BigInt::from(2 * n0 as i64 - k as i64), BigInt::from(k));
        Rational::from_integer(binomial(k as u64, n0 as u64)) * num_traits::pow(base, k)
    };
    let same: Rational = (0..=k).filter(|n0| (k - n0).is_multiple_of(2)).map(f).sum();
    let other: Rational = (0..=k).filter(|n0| (k - n0) % 2 == 1).map(f).sum();
    let denom = Rational::from_integer(BigInt::from(3) << (k - 1)) + &other;
    Ok((same - other) / denom)
}

/// Expected XOR contrast of `k` shares drawn from the first `n`.
pub fn sigma_xor(k: usize, n: usize) -> Result<Rational> {
    if k < 2 || n < k {
        return Err(param(format!("need 2 <= k <= n, got k={k}, n={n}")));
    }
    let (m, u) = group_shape(k, n);
    let mut total = Rational::zero();
    for mu in valid_partitions(k, k, m, u)? {
        total += weight_partition(&mu, k, n, k)? * alpha_xor_partition(&mu, k)?;
    }
    Ok(total)
}
