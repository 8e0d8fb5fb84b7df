//! Contrast of the better (2,∞) and (3,∞) schemes.

use crate::better::{BasisMatrices, LAMBDA};
use crate::error::{param, Error, Result};
use crate::rational::{binomial, int, ratio, Rational};
use crate::theory::matrix::pr_distinct;
use crate::theory::partition::{group_shape, valid_partitions, weight_partition, Partition};
use num_traits::{One, Zero};
use std::fmt;

/// A number `(a + b√2) / c`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Sqrt2Surd {
    pub a: i64,
    pub b: i64,
    pub c: i64,
}

impl Sqrt2Surd {
    pub fn value(&self) -> f64 {
        (self.a as f64 + self.b as f64 * std::f64::consts::SQRT_2) / self.c as f64
    }
}

impl fmt::Display for Sqrt2Surd {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}√2{:+})/{}", self.b, self.a, self.c)
    }
}

/// Contrast when both stacked shares come from different pairs.
pub fn better2_cross_pair_alpha() -> f64 {
    (LAMBDA - LAMBDA * LAMBDA) / (1.0 + LAMBDA * LAMBDA)
}

/// Contrast of two stacked shares: `λ` for a same-pair class `[2]`,
/// `(λ−λ²)/(1+λ²)` for `[1,1]`.
pub fn better2_alpha_partition(mu: &Partition) -> Result<f64> {
    match mu.parts() {
        [2] => Ok(LAMBDA),
        [1, 1] => Ok(better2_cross_pair_alpha()),
        [1] => Ok(0.0),
        _ => Err(Error::InfeasiblePartition {
            partition: mu.to_string(),
            reason: "better2 contrast is defined for stacks of one or two shares".into(),
        }),
    }
}

/// Expected two-share contrast among the first `n` shares.
pub fn better2_alpha(n: usize) -> Result<f64> {
    if n < 2 {
        return Err(param(format!("better2 contrast needs n >= 2, got {n}")));
    }
    let n = n as f64;
    // Probability that the two shares lie in different pairs.
    let cross = if (n as u64).is_multiple_of(2) { (n - 2.0) / (n - 1.0) } else { (n - 1.0) / n };
    Ok(better2_cross_pair_alpha() * cross + LAMBDA * (1.0 - cross))
}

/// `(√2−1)/2`.
pub fn better2_alpha_infinity() -> Sqrt2Surd {
    Sqrt2Surd { a: -1, b: 1, c: 2 }
}

/// Fraction of basis-matrix rows whose OR over `d` columns is white.
fn column_transmission(s: u8, d: usize) -> Rational {
    let cols: Vec<usize> = (0..d).collect();
    ratio(BasisMatrices::zero_rows(s, &cols) as i64, 6)
}

/// Contrast of OR-stacking shares of class `mu` (groups of four). The
/// visible columns are a uniform `d`-subset, and both matrices' zero counts
/// depend only on `d`.
pub fn better3_alpha_partition(mu: &Partition) -> Result<Rational> {
    let pr = pr_distinct(mu, 4)?;
    let mut l = [Rational::zero(), Rational::zero()];
    for (s, slot) in l.iter_mut().enumerate() {
        for (d, p) in pr.iter().enumerate().skip(1) {
            *slot += p * column_transmission(s as u8, d);
        }
    }
    let [l0, l1] = l;
    Ok((l0 - &l1) / (Rational::one() + l1))
}

/// `[α₁, α₂, α₃]` for classes `[3]`, `[2,1]`, `[1,1,1]`.
pub fn better3_class_alphas() -> [Rational; 3] {
    ["3", "2,1", "1,1,1"].map(|s| better3_alpha_partition(&s.parse().expect("literal")).expect("valid"))
}

/// Closed-form class weights `[w₁, w₂, w₃]` for three of `n` shares.
pub fn better3_weights(n: usize) -> Result<[Rational; 3]> {
    if n < 3 {
        return Err(param(format!("better3 contrast needs n >= 3, got {n}")));
    }
    let m = n.div_ceil(4) as i64;
    let u = ((n - 1) % 4 + 1) as i64;
    let c = Rational::from_integer(binomial(n as u64, 3));
    let bu = |r: u64| Rational::from_integer(binomial(u as u64, r));
    let w1 = (bu(3) + int(4 * (m - 1))) / &c;
    let w2 = int(m - 1) * (int(4) * bu(2) + int(6 * u + 24 * (m - 2))) / &c;
    let w3 = int(8 * (m - 1) * (m - 2) * (3 * u + 4 * (m - 3))) / (int(3) * &c);
    Ok([w1, w2, w3])
}

/// Expected three-share contrast among the first `n` shares.
pub fn better3_alpha(n: usize) -> Result<Rational> {
    let w = better3_weights(n)?;
    Ok(w.iter().zip(better3_class_alphas()).map(|(w, a)| w * a).sum())
}

pub fn better3_alpha_infinity() -> Rational {
    ratio(2, 41)
}

/// Same as [`better3_alpha`] but weighting every class through the generic
/// partition weights with groups of four.
pub fn better3_alpha_by_classes(n: usize) -> Result<Rational> {
    if n < 3 {
        return Err(param(format!("better3 contrast needs n >= 3, got {n}")));
    }
    let (m, u) = group_shape(4, n);
    let mut total = Rational::zero();
    for mu in valid_partitions(3, 4, m, u)? {
        total += weight_partition(&mu, 4, n, 3)? * better3_alpha_partition(&mu)?;
    }
    Ok(total)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::to_f64;

    #[test]
    fn better2_values() {
        assert!((better2_alpha(2).unwrap() - LAMBDA).abs() < 1e-15);
        let lim = better2_alpha_infinity();
        assert!((lim.value() - better2_cross_pair_alpha()).abs() < 1e-15);
        assert!((lim.value() - 0.20710678).abs() < 1e-8);
        assert!((better2_alpha(100_000).unwrap() - lim.value()).abs() < 1e-5);
        assert!((better2_alpha(43).unwrap() - lim.value()).abs() < 0.005);
        assert!(better2_alpha(1).is_err());
        assert_eq!(lim.to_string(), "(1√2-1)/2");
    }

    #[test]
    fn better2_matches_class_weights() {
        for n in 2..40 {
            let mut sum = 0.0;
            for mu in ["2", "1,1"] {
                let mu: Partition = mu.parse().unwrap();
                let w = weight_partition(&mu, 2, n, 2).unwrap();
                sum += to_f64(&w) * better2_alpha_partition(&mu).unwrap();
            }
            assert!((sum - better2_alpha(n).unwrap()).abs() < 1e-14, "n={n}");
        }
    }

    #[test]
    fn better3_class_values() {
        assert_eq!(better3_class_alphas(), [ratio(1, 7), ratio(1, 15), ratio(2, 41)]);
        assert_eq!(better3_alpha_partition(&Partition::ones(2)).unwrap(), Rational::zero());
        assert_eq!(better3_alpha_partition(&Partition::single(2)).unwrap(), Rational::zero());
        assert_eq!(better3_alpha_partition(&Partition::ones(1)).unwrap(), Rational::zero());
    }

    #[test]
    fn better3_weights_agree_with_generic_formula() {
        for n in 3..=60 {
            let w = better3_weights(n).unwrap();
            let (m, u) = group_shape(4, n);
            let classes = valid_partitions(3, 4, m, u).unwrap();
            for (i, name) in ["3", "2,1", "1,1,1"].iter().enumerate() {
                let mu: Partition = name.parse().unwrap();
                let generic = if classes.contains(&mu) {
                    weight_partition(&mu, 4, n, 3).unwrap()
                } else {
                    Rational::zero()
                };
                assert_eq!(w[i], generic, "n={n} class {name}");
            }
            assert_eq!(better3_alpha(n).unwrap(), better3_alpha_by_classes(n).unwrap());
        }
        assert_eq!(better3_weights(8).unwrap().iter().sum::<Rational>(), Rational::one());
        assert_eq!(better3_alpha(4).unwrap(), ratio(1, 7));
    }
}
