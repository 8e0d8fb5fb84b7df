//! Contrast of OR-stacked shares in the k-grouped and evolving schemes.

use crate::error::{param, Result};
use crate::rational::Rational;
use crate::theory::matrix::pr_distinct;
use crate::theory::partition::{group_shape, valid_partitions, weight_partition, Partition};
use num_bigint::BigInt;
use num_traits::{One, Zero};

fn pow2(e: usize) -> Rational {
    Rational::from_integer(BigInt::one() << e)
}

/// Contrast of stacking shares of occupancy class `mu` with threshold `k`.
/// Classes touching fewer than `k` distinct indices leak nothing, so any
/// `mu` with `t < k` gives 0.
pub fn alpha_or_partition(mu: &Partition, k: usize) -> Result<Rational> {
    let pr = pr_distinct(mu, k)?;
    let numer = &pr[k] / pow2(k - 1);
    if numer.is_zero() {
        return Ok(Rational::zero());
    }
    let denom = Rational::one() + (1..k).map(|j| &pr[j] / pow2(j)).sum::<Rational>();
    Ok(numer / denom)
}

/// Expected contrast over all `t`-subsets of `n` shares.
pub fn sigma_or(k: usize, n: usize, t: usize) -> Result<Rational> {
    if k < 2 || n < k || t == 0 || t > n {
        return Err(param(format!("need 2 <= k <= n and 1 <= t <= n; got k={k}, n={n}, t={t}")));
    }
    let (m, u) = group_shape(k, n);
    let mut total = Rational::zero();
    for mu in valid_partitions(t, k, m, u)? {
        let alpha = alpha_or_partition(&mu, k)?;
        if !alpha.is_zero() {
            total += weight_partition(&mu, k, n, t)? * alpha;
        }
    }
    Ok(total)
}

/// Limit of `sigma_or(k, n, k)` as `n` grows: all `k` shares from
/// different groups.
pub fn alpha_or_infinity(k: usize) -> Result<Rational> {
    if k < 2 {
        return Err(param(format!("k must be at least 2, got {k}")));
    }
    alpha_or_partition(&Partition::ones(k), k)
}

/// Limit contrast when stacking `t >= k` shares.
pub fn alpha_or_stack_t(k: usize, t: usize) -> Result<Rational> {
    if k < 2 || t < k {
        return Err(param(format!("need 2 <= k <= t, got k={k}, t={t}")));
    }
    alpha_or_partition(&Partition::ones(t), k)
}
