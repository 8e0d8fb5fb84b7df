//! Counting partition-based binary matrices and the distribution of the
//! number of distinct kernel indices a stack touches.
//!
//! Row `p` of a matrix marks which of `d` columns (distinct indices) group
//! `p` contributes; it has exactly `μ_p` ones, every column is covered, and
//! the last row is pinned to a fixed pattern `F` with `μ_last` ones.

use crate::error::{param, Result};
use crate::rational::{binomial, binomial_i, Rational};
use crate::theory::partition::Partition;
use num_bigint::BigInt;
use num_traits::{One, Zero};

/// `|𝒜^μ_d(F)|` with `F` the smallest part of `mu`.
///
/// Rows are placed one at a time, tracking only how many columns are still
/// uncovered; that count is all the remaining rows can see.
pub fn count_matrices(mu: &Partition, d: usize, k: usize) -> BigInt {
    if d == 0 || d > k || mu.largest() > d {
        return BigInt::zero();
    }
    let (free_rows, f) = split_fixed(mu);
    // ways[c] = number of partial matrices leaving c columns uncovered.
    let mut ways = vec![BigInt::zero(); d + 1];
    ways[d - f] = BigInt::one();
    for &r in free_rows {
        let mut next = vec![BigInt::zero(); d + 1];
        for (unc, w) in ways.iter().enumerate() {
            if w.is_zero() {
                continue;
            }
            for j in 0..=unc.min(r) {
                let ways_row = binomial(unc as u64, j as u64) * binomial((d - unc) as u64, (r - j) as u64);
                if !ways_row.is_zero() {
                    next[unc - j] += w * ways_row;
                }
            }
        }
        ways = next;
    }
    ways.swap_remove(0)
}

/// Independent evaluation of [`count_matrices`] by inclusion-exclusion over
/// the non-`F` columns left uncovered. Kept as a cross-check.
pub fn count_matrices_inclusion_exclusion(mu: &Partition, d: usize) -> BigInt {
    let (free_rows, f) = split_fixed(mu);
    if d < f {
        return BigInt::zero();
    }
    let open = d - f;
    let mut total = BigInt::zero();
    for i in 0..=open {
        let term: BigInt = binomial(open as u64, i as u64)
            * free_rows
                .iter()
                .map(|&r| binomial_i((d - i) as i64, r as i64))
                .product::<BigInt>();
        if i % 2 == 0 {
            total += term;
        } else {
            total -= term;
        }
    }
    total
}

fn split_fixed(mu: &Partition) -> (&[usize], usize) {
    let (last, rest) = mu.parts().split_last().expect("nonempty partition");
    (rest, *last)
}

/// `Pr(#B(μ) = d)` for `d = 0..=k`: the chance that the stacked shares of
/// class `mu` carry exactly `d` distinct kernel indices.
pub fn pr_distinct(mu: &Partition, k: usize) -> Result<Vec<Rational>> {
    if k < 2 {
        return Err(param(format!("k must be at least 2, got {k}")));
    }
    mu.check_parts(k)?;
    let (free_rows, f) = split_fixed(mu);
    let denom: BigInt = free_rows.iter().map(|&r| binomial(k as u64, r as u64)).product();
    Ok((0..=k)
        .map(|d| {
            if d < f {
                return Rational::zero();
            }
            let numer = binomial((k - f) as u64, (d - f) as u64) * count_matrices(mu, d, k);
            Rational::new(numer, denom.clone())
        })
        .collect())
}
