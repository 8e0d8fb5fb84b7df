//! Valid partitions and their occurrence weights.
//!
//! Stacking `t` of `n` shares spreads the chosen indices over the `m =
//! ⌈n/k⌉` groups (the last one holding `u` shares). The per-group counts,
//! sorted, form the partition that decides the recovered contrast.

use crate::error::{param, Error, Result};
use crate::rational::{binomial, factorial, Rational};
use num_bigint::BigInt;
use num_traits::Zero;
use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

/// Nonzero group occupancies, sorted descending.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Partition(Vec<usize>);

impl Partition {
    /// Builds the canonical form of `parts`; zeros are dropped and order is
    /// irrelevant. At least one part must be positive.
    pub fn new(parts: impl Into<Vec<usize>>) -> Result<Self> {
        let mut parts: Vec<usize> = parts.into();
        parts.retain(|&p| p > 0);
        if parts.is_empty() {
            return Err(param("a partition needs at least one positive part"));
        }
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Ok(Self(parts))
    }

    /// `⟨1^t⟩`: every index from a different group.
    pub fn ones(t: usize) -> Self {
        assert!(t > 0);
        Self(vec![1; t])
    }

    /// A single part.
    pub fn single(t: usize) -> Self {
        assert!(t > 0);
        Self(vec![t])
    }

    pub fn parts(&self) -> &[usize] {
        &self.0
    }

    /// Number of selected shares `t`.
    pub fn total(&self) -> usize {
        self.0.iter().sum()
    }

    /// Number of occupied groups.
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn largest(&self) -> usize {
        self.0[0]
    }

    pub fn smallest(&self) -> usize {
        *self.0.last().expect("nonempty")
    }

    /// Checks that every part fits in a group of `k`.
    pub(crate) fn check_parts(&self, k: usize) -> Result<()> {
        if self.largest() > k {
            return Err(Error::InfeasiblePartition {
                partition: self.to_string(),
                reason: format!("part {} exceeds group size {k}", self.largest()),
            });
        }
        Ok(())
    }

    /// Whether the partition can occur among `m` groups of which the last
    /// holds only `u` shares.
    pub fn realizable(&self, k: usize, m: usize, u: usize) -> bool {
        self.largest() <= k && (self.len() < m || (self.len() == m && self.smallest() <= u))
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for (i, p) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{p}")?;
        }
        f.write_str("]")
    }
}

/// Accepts `2,1,1` or `[2,1,1]`; parts must be positive and nonincreasing.
impl FromStr for Partition {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let body = s.trim().trim_start_matches('[').trim_end_matches(']');
        let parts = body
            .split(',')
            .map(|p| {
                p.trim()
                    .parse::<usize>()
                    .map_err(|_| param(format!("partition part `{}` is not a positive integer", p.trim())))
            })
            .collect::<Result<Vec<_>>>()?;
        if parts.contains(&0) {
            return Err(param("partition parts must be positive"));
        }
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(param(format!("partition `{s}` is not nonincreasing")));
        }
        Partition::new(parts)
    }
}

/// Group count `m` and last-group size `u` for `n` shares in groups of `k`.
pub fn group_shape(k: usize, n: usize) -> (usize, usize) {
    let m = n.div_ceil(k);
    (m, n - (m - 1) * k)
}

/// Partitions of `t` with parts at most `max_part` and at most `max_len`
/// parts, each listed descending.
pub fn partitions_of(t: usize, max_part: usize, max_len: usize) -> Vec<Vec<usize>> {
    fn go(rest: usize, cap: usize, left: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if rest == 0 {
            out.push(cur.clone());
            return;
        }
        if left == 0 {
            return;
        }
        for p in (1..=cap.min(rest)).rev() {
            cur.push(p);
            go(rest - p, p, left - 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(t, max_part, max_len, &mut Vec::new(), &mut out);
    out
}

/// Equivalence classes of valid partitions of `t` over `m` groups whose last
/// group has capacity `u`.
pub fn valid_partitions(t: usize, k: usize, m: usize, u: usize) -> Result<Vec<Partition>> {
    if t == 0 || k < 2 || m == 0 || u == 0 || u > k {
        return Err(param(format!(
            "need t >= 1, k >= 2, m >= 1, 1 <= u <= k; got t={t}, k={k}, m={m}, u={u}"
        )));
    }
    Ok(partitions_of(t, k, m)
        .into_iter()
        .map(Partition)
        .filter(|p| p.realizable(k, m, u))
        .collect())
}

/// Every ordered occupancy vector `(μ_1..μ_m)` with `μ_i <= k` for full
/// groups and `μ_m <= u`, summing to `t`.
pub fn raw_partitions(t: usize, k: usize, m: usize, u: usize) -> Vec<Vec<usize>> {
    fn go(i: usize, rest: usize, caps: &[usize], cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if i == caps.len() {
            if rest == 0 {
                out.push(cur.clone());
            }
            return;
        }
        for v in 0..=caps[i].min(rest) {
            cur.push(v);
            go(i + 1, rest - v, caps, cur, out);
            cur.pop();
        }
    }
    let mut caps = vec![k; m.saturating_sub(1)];
    caps.push(u);
    let mut out = Vec::new();
    go(0, t, &caps, &mut Vec::new(), &mut out);
    out
}

/// Probability that a uniformly random `t`-subset of the `n` shares has
/// occupancy class `mu`.
pub fn weight_partition(mu: &Partition, k: usize, n: usize, t: usize) -> Result<Rational> {
    if k < 2 || t == 0 || t > n {
        return Err(param(format!("need k >= 2 and 1 <= t <= n; got k={k}, n={n}, t={t}")));
    }
    if mu.total() != t {
        return Err(param(format!("partition {mu} does not sum to t={t}")));
    }
    let (m, u) = group_shape(k, n);
    if mu.len() > m {
        return Ok(Rational::zero());
    }
    let mut padded = mu.parts().to_vec();
    padded.resize(m, 0);
    let mut mult: BTreeMap<usize, u64> = BTreeMap::new();
    for &p in &padded {
        *mult.entry(p).or_default() += 1;
    }

    let mut count = BigInt::zero();
    for &v in mult.keys() {
        // Value `v` sits in the last group; the rest fill the m-1 full groups.
        let mut rest = mult.clone();
        *rest.get_mut(&v).unwrap() -= 1;
        let arrangements =
            factorial(m as u64 - 1) / rest.values().map(|&c| factorial(c)).product::<BigInt>();
        let fills: BigInt = rest
            .iter()
            .map(|(&part, &c)| num_traits::pow(binomial(k as u64, part as u64), c as usize))
            .product();
        count += binomial(u as u64, v as u64) * arrangements * fills;
    }
    Ok(Rational::new(count, binomial(n as u64, t as u64)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::ratio;
    use num_traits::One;

    #[test]
    fn parse_and_display() {
        let p: Partition = "2,1,1".parse().unwrap();
        assert_eq!(p.parts(), &[2, 1, 1]);
        assert_eq!(p.to_string(), "[2,1,1]");
        assert_eq!("[3]".parse::<Partition>().unwrap(), Partition::single(3));
        assert!("1,2".parse::<Partition>().is_err());
        assert!("2,0".parse::<Partition>().is_err());
        assert!("a".parse::<Partition>().is_err());
        assert_eq!(Partition::new(vec![0, 1, 3]).unwrap().parts(), &[3, 1]);
    }

    #[test]
    fn raw_and_class_counts_for_ten_shares() {
        // k=4, n=10 gives m=3, u=2.
        assert_eq!(group_shape(4, 10), (3, 2));
        let raw = raw_partitions(3, 4, 3, 2);
        assert_eq!(raw.len(), 9);
        let classes = valid_partitions(3, 4, 3, 2).unwrap();
        let shown: Vec<String> = classes.iter().map(|c| c.to_string()).collect();
        assert_eq!(shown, ["[3]", "[2,1]", "[1,1,1]"]);
        for r in &raw {
            assert!(classes.contains(&Partition::new(r.clone()).unwrap()));
        }
    }

    #[test]
    fn class_edge_cases() {
        assert_eq!(valid_partitions(1, 3, 4, 3).unwrap(), vec![Partition::ones(1)]);
        assert!(valid_partitions(4, 3, 10, 3).unwrap().contains(&Partition::ones(4)));
        assert!(valid_partitions(9, 3, 2, 2).unwrap().is_empty());
        assert!(valid_partitions(0, 3, 2, 2).is_err());
        // m=2, u=1: both groups used means one part must fit the single slot.
        let c = valid_partitions(3, 2, 2, 1).unwrap();
        assert_eq!(c, vec![Partition::new(vec![2, 1]).unwrap()]);
    }

    #[test]
    fn weights_sum_to_one() {
        for k in 2..=5 {
            for n in k..=12 {
                for t in 1..=n {
                    let (m, u) = group_shape(k, n);
                    let total: Rational = valid_partitions(t, k, m, u)
                        .unwrap()
                        .iter()
                        .map(|p| weight_partition(p, k, n, t).unwrap())
                        .sum();
                    assert!(total.is_one(), "k={k} n={n} t={t}: {total}");
                }
            }
        }
    }

    #[test]
    fn weight_examples() {
        assert_eq!(weight_partition(&Partition::single(3), 4, 4, 3).unwrap(), ratio(1, 1));
        assert_eq!(weight_partition(&Partition::single(2), 2, 3, 2).unwrap(), ratio(1, 3));
        assert_eq!(weight_partition(&Partition::ones(2), 2, 3, 2).unwrap(), ratio(2, 3));
        assert!(weight_partition(&Partition::ones(2), 2, 3, 3).is_err());
    }
}
