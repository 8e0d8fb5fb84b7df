//! Contrast-versus-participants curves, the convergence search and the
//! scheme comparator.

use crate::error::{param, Error, Result};
use crate::rational::{display, to_f64, Rational};
use crate::theory::better::{better2_alpha, better2_alpha_infinity, better3_alpha, better3_alpha_infinity};
use crate::theory::or_contrast::{alpha_or_infinity, alpha_or_partition};
use crate::theory::partition::{group_shape, partitions_of, valid_partitions, weight_partition, Partition};
use crate::theory::xor_contrast::{alpha_xor_infinity, alpha_xor_partition};
use num_traits::{FromPrimitive, Signed, Zero};
use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

/// Largest `n` the convergence search visits.
pub const SEARCH_BOUND: usize = 10_000;

/// Values closer than this count as equal when either side is a float.
pub const FLOAT_TOLERANCE: f64 = 1e-12;

#[derive(Clone, Debug, PartialEq)]
pub enum ContrastValue {
    Exact(Rational),
    /// Values involving `√2`.
    Approx(f64),
}

impl ContrastValue {
    pub fn to_f64(&self) -> f64 {
        match self {
            ContrastValue::Exact(r) => to_f64(r),
            ContrastValue::Approx(x) => *x,
        }
    }

    pub fn as_exact(&self) -> Option<&Rational> {
        match self {
            ContrastValue::Exact(r) => Some(r),
            ContrastValue::Approx(_) => None,
        }
    }

    /// Exact when both sides are rational, tolerant otherwise.
    pub fn compare(&self, other: &ContrastValue) -> Ordering {
        match (self, other) {
            (ContrastValue::Exact(a), ContrastValue::Exact(b)) => a.cmp(b),
            _ => {
                let (a, b) = (self.to_f64(), other.to_f64());
                if (a - b).abs() <= FLOAT_TOLERANCE {
                    Ordering::Equal
                } else {
                    a.total_cmp(&b)
                }
            }
        }
    }

    /// Whether `|self - other| < epsilon`.
    pub fn within(&self, other: &ContrastValue, epsilon: f64) -> bool {
        match (self, other) {
            (ContrastValue::Exact(a), ContrastValue::Exact(b)) => {
                let eps = Rational::from_f64(epsilon).expect("finite epsilon");
                (a - b).abs() < eps
            }
            _ => (self.to_f64() - other.to_f64()).abs() < epsilon,
        }
    }
}

impl fmt::Display for ContrastValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ContrastValue::Exact(r) => f.write_str(&display(r)),
            ContrastValue::Approx(x) => write!(f, "{x:.6}"),
        }
    }
}

type Evaluator = Arc<dyn Fn(usize) -> Result<ContrastValue> + Send + Sync>;

/// Contrast of a `(k,∞)` scheme when `n` participants have arrived, plus
/// its limit.
#[derive(Clone)]
pub struct ContrastCurve {
    name: String,
    k: usize,
    eval: Evaluator,
    limit: ContrastValue,
}

impl fmt::Debug for ContrastCurve {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("ContrastCurve")
            .field("name", &self.name)
            .field("k", &self.k)
            .field("limit", &self.limit)
            .finish()
    }
}

/// Averages per-class contrasts over the classes of `k` of `n` shares.
fn class_average(k: usize, alphas: &HashMap<Partition, Rational>, n: usize) -> Result<ContrastValue> {
    if n < k {
        return Err(param(format!("curve is defined from n={k}, got n={n}")));
    }
    let (m, u) = group_shape(k, n);
    let mut total = Rational::zero();
    for mu in valid_partitions(k, k, m, u)? {
        let alpha = &alphas[&mu];
        if !alpha.is_zero() {
            total += weight_partition(&mu, k, n, k)? * alpha;
        }
    }
    Ok(ContrastValue::Exact(total))
}

fn class_table(k: usize, f: impl Fn(&Partition, usize) -> Result<Rational>) -> Result<HashMap<Partition, Rational>> {
    partitions_of(k, k, k)
        .into_iter()
        .map(|p| {
            let mu = Partition::new(p)?;
            let a = f(&mu, k)?;
            Ok((mu, a))
        })
        .collect()
}

impl ContrastCurve {
    /// `(k,∞)` random-grid scheme with OR recovery of `k` shares.
    pub fn rgvcs_or(k: usize) -> Result<Self> {
        let alphas = class_table(k, alpha_or_partition)?;
        Ok(Self {
            name: format!("rgvcs-or(k={k})"),
            k,
            limit: ContrastValue::Exact(alpha_or_infinity(k)?),
            eval: Arc::new(move |n| class_average(k, &alphas, n)),
        })
    }

    /// `(k,∞)` random-grid scheme with XOR recovery of `k` shares.
    pub fn rgvcs_xor(k: usize) -> Result<Self> {
        let alphas = class_table(k, alpha_xor_partition)?;
        Ok(Self {
            name: format!("rgvcs-xor(k={k})"),
            k,
            limit: ContrastValue::Exact(alpha_xor_infinity(k)?),
            eval: Arc::new(move |n| class_average(k, &alphas, n)),
        })
    }

    pub fn better2() -> Self {
        Self {
            name: "better2".into(),
            k: 2,
            limit: ContrastValue::Approx(better2_alpha_infinity().value()),
            eval: Arc::new(|n| better2_alpha(n).map(ContrastValue::Approx)),
        }
    }

    pub fn better3() -> Self {
        Self {
            name: "better3".into(),
            k: 3,
            limit: ContrastValue::Exact(better3_alpha_infinity()),
            eval: Arc::new(|n| better3_alpha(n).map(ContrastValue::Exact)),
        }
    }

    /// The better scheme for threshold `k` (2 or 3).
    pub fn better(k: usize) -> Result<Self> {
        match k {
            2 => Ok(Self::better2()),
            3 => Ok(Self::better3()),
            _ => Err(param(format!("better schemes exist for k=2 and k=3 only, got k={k}"))),
        }
    }

    /// A user-defined curve, e.g. for comparisons against tabulated values.
    pub fn custom(
        name: impl Into<String>,
        k: usize,
        limit: ContrastValue,
        eval: impl Fn(usize) -> Result<ContrastValue> + Send + Sync + 'static,
    ) -> Self {
        Self {
            name: name.into(),
            k,
            limit,
            eval: Arc::new(eval),
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn limit(&self) -> &ContrastValue {
        &self.limit
    }

    pub fn at(&self, n: usize) -> Result<ContrastValue> {
        (self.eval)(n)
    }
}

/// Smallest `n >= k` with `|α(n) − α∞| < epsilon`.
pub fn find_convergence_n(curve: &ContrastCurve, epsilon: f64) -> Result<usize> {
    if !(epsilon > 0.0 && epsilon.is_finite()) {
        return Err(param(format!("epsilon must be positive, got {epsilon}")));
    }
    for n in curve.k()..=SEARCH_BOUND {
        if curve.at(n)?.within(curve.limit(), epsilon) {
            return Ok(n);
        }
    }
    Err(Error::NoConvergence {
        curve: curve.name().to_string(),
        epsilon,
        bound: SEARCH_BOUND as u64,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Classification {
    StrictlyBetter,
    Better,
    RelativelyBetter,
    Inconclusive,
}

impl fmt::Display for Classification {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Classification::StrictlyBetter => "strictly_better",
            Classification::Better => "better",
            Classification::RelativelyBetter => "relatively_better",
            Classification::Inconclusive => "inconclusive",
        })
    }
}

#[derive(Clone, Debug)]
pub struct Comparison {
    pub classification: Classification,
    /// Inclusive range of `t` on which the finite-`t` clauses were checked.
    pub checked: (usize, usize),
    /// Order of the limits, A against B.
    pub limit_order: Ordering,
    /// Whether A ≥ B held at every checked `t`.
    pub dominates: bool,
    /// Checked `t` where A > B strictly.
    pub witnesses: Vec<usize>,
    /// First checked `t` where A < B, if any.
    pub counterexample: Option<usize>,
}

/// Ranks curve `a` against `b`. The clauses quantified over every `t >= k`
/// are only checked on `[k, t_max]`.
pub fn compare_curves(a: &ContrastCurve, b: &ContrastCurve, t_max: usize) -> Result<Comparison> {
    let start = a.k().max(b.k());
    if t_max < start {
        return Err(param(format!("t_max={t_max} is below the threshold {start}")));
    }
    let limit_order = a.limit().compare(b.limit());
    let mut witnesses = Vec::new();
    let mut counterexample = None;
    for t in start..=t_max {
        match a.at(t)?.compare(&b.at(t)?) {
            Ordering::Greater => witnesses.push(t),
            Ordering::Less => {
                counterexample.get_or_insert(t);
            }
            Ordering::Equal => {}
        }
    }
    let dominates = counterexample.is_none();
    let classification = match limit_order {
        Ordering::Greater if dominates && !witnesses.is_empty() => Classification::StrictlyBetter,
        Ordering::Greater => Classification::Better,
        Ordering::Equal if dominates && !witnesses.is_empty() => Classification::RelativelyBetter,
        _ => Classification::Inconclusive,
    };
    Ok(Comparison {
        classification,
        checked: (start, t_max),
        limit_order,
        dominates,
        witnesses,
        counterexample,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::ratio;

    #[test]
    fn or_curve_matches_table_entries() {
        let c = ContrastCurve::rgvcs_or(3).unwrap();
        assert_eq!(c.at(4).unwrap(), ContrastValue::Exact(ratio(13, 112)));
        assert_eq!(c.limit(), &ContrastValue::Exact(ratio(1, 22)));
        assert!(c.at(2).is_err());
    }

    #[test]
    fn convergence_points() {
        let or: Vec<usize> = (2..=6)
            .map(|k| find_convergence_n(&ContrastCurve::rgvcs_or(k).unwrap(), 0.005).unwrap())
            .collect();
        assert_eq!(or, [61, 34, 17, 11, 8]);
        let xor: Vec<usize> = (2..=6)
            .map(|k| find_convergence_n(&ContrastCurve::rgvcs_xor(k).unwrap(), 0.05).unwrap())
            .collect();
        assert_eq!(xor, [15, 13, 13, 11, 10]);
        assert_eq!(find_convergence_n(&ContrastCurve::better2(), 0.005).unwrap(), 43);
        assert_eq!(find_convergence_n(&ContrastCurve::better3(), 0.005).unwrap(), 34);
        assert!(find_convergence_n(&ContrastCurve::better3(), 0.0).is_err());
    }

    #[test]
    fn non_convergent_curve_reports_bound() {
        let c = ContrastCurve::custom("flat", 2, ContrastValue::Exact(ratio(1, 2)), |_| {
            Ok(ContrastValue::Exact(Rational::zero()))
        });
        assert!(matches!(find_convergence_n(&c, 0.1), Err(Error::NoConvergence { bound: 10_000, .. })));
    }

    #[test]
    fn comparator_cases() {
        let b2 = ContrastCurve::better2();
        let or2 = ContrastCurve::rgvcs_or(2).unwrap();
        let r = compare_curves(&b2, &or2, 200).unwrap();
        assert_eq!(r.limit_order, Ordering::Greater);
        assert_eq!(r.classification, Classification::Better);
        assert_eq!(r.counterexample, Some(2));

        let b3 = ContrastCurve::better3();
        let same = compare_curves(&b3, &b3, 60).unwrap();
        assert_eq!(same.classification, Classification::Inconclusive);
        assert!(same.witnesses.is_empty());

        let dip = ContrastCurve::custom("better3-dip", 3, ContrastValue::Exact(ratio(2, 41)), |n| {
            let v = better3_alpha(n)?;
            Ok(ContrastValue::Exact(if n == 10 { v - ratio(1, 1000) } else { v }))
        });
        let r = compare_curves(&b3, &dip, 60).unwrap();
        assert_eq!(r.classification, Classification::RelativelyBetter);
        assert_eq!(r.witnesses, vec![10]);
        assert_eq!(r.checked, (3, 60));
        assert_eq!(compare_curves(&dip, &b3, 60).unwrap().classification, Classification::Inconclusive);
    }
}
