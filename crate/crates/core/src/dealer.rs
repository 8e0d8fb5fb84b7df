//! One handle over the three evolving dealers.

use crate::better::{Better2Dealer, Better3Dealer};
use crate::error::{param, Result};
use crate::evolving::EvolvingDealer;
use crate::image::BinaryImage;
use std::fmt;
use std::str::FromStr;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum SchemeKind {
    /// The `(k,∞)` random-grid scheme.
    KGrouped,
    Better2,
    Better3,
}

impl SchemeKind {
    /// Tag stored in dealer manifests.
    pub fn tag(self) -> &'static str {
        match self {
            SchemeKind::KGrouped => "kgrouped-evolving",
            SchemeKind::Better2 => "better2",
            SchemeKind::Better3 => "better3",
        }
    }

    /// Shares per group.
    pub fn group_size(self, k: usize) -> usize {
        match self {
            SchemeKind::KGrouped => k,
            SchemeKind::Better2 => 2,
            SchemeKind::Better3 => 4,
        }
    }
}

impl fmt::Display for SchemeKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

impl FromStr for SchemeKind {
    type Err = crate::error::Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "kgrouped" | "kgrouped-evolving" | "rgvcs" => Ok(SchemeKind::KGrouped),
            "better2" => Ok(SchemeKind::Better2),
            "better3" => Ok(SchemeKind::Better3),
            other => Err(param(format!("unknown scheme `{other}`"))),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Dealer {
    KGrouped(EvolvingDealer),
    Better2(Better2Dealer),
    Better3(Better3Dealer),
}

impl Dealer {
    /// Starts a dealer and issues shares `1..=n`. The better schemes fix
    /// their thresholds at 2 and 3; a different `k` is rejected.
    pub fn init(kind: SchemeKind, secret: &BinaryImage, k: usize, n: usize, seed: u64) -> Result<(Self, Vec<BinaryImage>)> {
        match kind {
            SchemeKind::KGrouped => {
                let (d, shadows) = EvolvingDealer::init(secret, k, n, seed)?;
                Ok((Dealer::KGrouped(d), shadows))
            }
            SchemeKind::Better2 => {
                check_fixed(kind, k, 2, n, 2)?;
                let (d, first) = Better2Dealer::init(secret, seed);
                let mut dealer = Dealer::Better2(d);
                let mut shadows = vec![first];
                for _ in 1..n {
                    shadows.push(dealer.extend()?);
                }
                Ok((dealer, shadows))
            }
            SchemeKind::Better3 => {
                check_fixed(kind, k, 3, n, 4)?;
                let (d, mut shadows) = Better3Dealer::init(secret, seed);
                let mut dealer = Dealer::Better3(d);
                for _ in 4..n {
                    shadows.push(dealer.extend()?);
                }
                Ok((dealer, shadows))
            }
        }
    }

    pub fn extend(&mut self) -> Result<BinaryImage> {
        match self {
            Dealer::KGrouped(d) => d.extend(),
            Dealer::Better2(d) => d.extend(),
            Dealer::Better3(d) => d.extend(),
        }
    }

    pub fn kind(&self) -> SchemeKind {
        match self {
            Dealer::KGrouped(_) => SchemeKind::KGrouped,
            Dealer::Better2(_) => SchemeKind::Better2,
            Dealer::Better3(_) => SchemeKind::Better3,
        }
    }

    /// Recovery threshold.
    pub fn k(&self) -> usize {
        match self {
            Dealer::KGrouped(d) => d.k(),
            Dealer::Better2(_) => 2,
            Dealer::Better3(_) => 3,
        }
    }

    pub fn group_size(&self) -> usize {
        self.kind().group_size(self.k())
    }

    pub fn next_t(&self) -> u64 {
        match self {
            Dealer::KGrouped(d) => d.next_t(),
            Dealer::Better2(d) => d.next_t(),
            Dealer::Better3(d) => d.next_t(),
        }
    }

    pub fn seed(&self) -> u64 {
        match self {
            Dealer::KGrouped(d) => d.seed(),
            Dealer::Better2(d) => d.seed(),
            Dealer::Better3(d) => d.seed(),
        }
    }

    pub fn dims(&self) -> (usize, usize) {
        match self {
            Dealer::KGrouped(d) => d.dims(),
            Dealer::Better2(d) => d.dims(),
            Dealer::Better3(d) => d.dims(),
        }
    }

    pub fn issued_digests(&self) -> &[u32] {
        match self {
            Dealer::KGrouped(d) => d.issued_digests(),
            Dealer::Better2(d) => d.issued_digests(),
            Dealer::Better3(d) => d.issued_digests(),
        }
    }

    pub fn validate(&self) -> Result<()> {
        match self {
            Dealer::KGrouped(d) => d.validate(),
            Dealer::Better2(d) => d.validate(),
            Dealer::Better3(d) => d.validate(),
        }
    }
}

fn check_fixed(kind: SchemeKind, k: usize, expect_k: usize, n: usize, min_n: usize) -> Result<()> {
    if k != expect_k {
        return Err(param(format!("{kind} has threshold {expect_k}, got k={k}")));
    }
    if n < min_n {
        return Err(param(format!("{kind} needs n >= {min_n}, got n={n}")));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::image::patterns;

    #[test]
    fn scheme_tags_round_trip() {
        for kind in [SchemeKind::KGrouped, SchemeKind::Better2, SchemeKind::Better3] {
            assert_eq!(kind.tag().parse::<SchemeKind>().unwrap(), kind);
        }
        assert!("better4".parse::<SchemeKind>().is_err());
    }

    #[test]
    fn first_phase_lengths() {
        let s = patterns::checkerboard(6, 6).unwrap();
        let (d, shadows) = Dealer::init(SchemeKind::Better2, &s, 2, 5, 1).unwrap();
        assert_eq!((shadows.len(), d.next_t()), (5, 6));
        let (d, shadows) = Dealer::init(SchemeKind::Better3, &s, 3, 6, 1).unwrap();
        assert_eq!((shadows.len(), d.next_t()), (6, 7));
        assert!(Dealer::init(SchemeKind::Better3, &s, 3, 3, 1).is_err());
        assert!(Dealer::init(SchemeKind::Better2, &s, 3, 3, 1).is_err());
    }
}
