//! Stacking, light transmission and measured contrast.

use crate::error::{param, Error, Result};
use crate::evolving::ShareGroupLayout;
use crate::image::{regions, BinaryImage, RegionMask};
use crate::theory::partition::Partition;
use rand::seq::index::sample;
use rand::seq::SliceRandom;
use rand::Rng;
use std::fmt;

fn combine<'a>(
    shadows: impl IntoIterator<Item = &'a BinaryImage>,
    op: impl Fn(u8, u8) -> u8,
) -> Result<BinaryImage> {
    let mut it = shadows.into_iter();
    let first = it.next().ok_or_else(|| param("at least one shadow is required"))?;
    let mut acc = first.bits().to_vec();
    for img in it {
        first.ensure_same_dims(img)?;
        for (a, &b) in acc.iter_mut().zip(img.bits()) {
            *a = op(*a, b);
        }
    }
    let (h, w) = first.dims();
    Ok(BinaryImage::from_raw(h, w, acc))
}

/// Pixelwise OR, i.e. physically stacking transparencies.
pub fn stack_or<'a>(shadows: impl IntoIterator<Item = &'a BinaryImage>) -> Result<BinaryImage> {
    combine(shadows, |a, b| a | b)
}

/// Pixelwise XOR.
pub fn stack_xor<'a>(shadows: impl IntoIterator<Item = &'a BinaryImage>) -> Result<BinaryImage> {
    combine(shadows, |a, b| a ^ b)
}

/// Fraction of transparent pixels of `img` inside `mask`.
pub fn light_transmission(img: &BinaryImage, mask: &RegionMask) -> Result<f64> {
    let (clear, total) = transmission_counts(img, mask)?;
    Ok(clear as f64 / total as f64)
}

fn transmission_counts(img: &BinaryImage, mask: &RegionMask) -> Result<(usize, usize)> {
    if mask.dims() != img.dims() {
        return Err(Error::DimensionMismatch {
            expected: img.dims(),
            found: mask.dims(),
        });
    }
    let total = mask.count();
    if total == 0 {
        return Err(Error::DegenerateRegion);
    }
    let clear = img
        .bits()
        .iter()
        .zip(mask.flags())
        .filter(|(&b, &m)| m && b == 0)
        .count();
    Ok((clear, total))
}

/// Measured light transmissions over the white and black regions of the
/// secret and the resulting contrast.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ContrastReport {
    pub l0: f64,
    pub l1: f64,
    pub alpha: f64,
    pub white_pixels: usize,
    pub black_pixels: usize,
    /// Binomial standard errors of `l0` and `l1`.
    pub se_l0: f64,
    pub se_l1: f64,
    /// First-order standard error of `alpha`.
    pub se_alpha: f64,
}

impl ContrastReport {
    fn from_counts(clear0: usize, white: usize, clear1: usize, black: usize) -> Self {
        let l0 = clear0 as f64 / white as f64;
        let l1 = clear1 as f64 / black as f64;
        let se_l0 = (l0 * (1.0 - l0) / white as f64).sqrt();
        let se_l1 = (l1 * (1.0 - l1) / black as f64).sqrt();
        let d0 = 1.0 / (1.0 + l1);
        let d1 = (1.0 + l0) / (1.0 + l1).powi(2);
        Self {
            l0,
            l1,
            alpha: (l0 - l1) / (1.0 + l1),
            white_pixels: white,
            black_pixels: black,
            se_l0,
            se_l1,
            se_alpha: ((d0 * se_l0).powi(2) + (d1 * se_l1).powi(2)).sqrt(),
        }
    }

    /// Flat `key=value` lines.
    pub fn to_key_values(&self) -> String {
        self.to_string()
    }
}

impl fmt::Display for ContrastReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "l0={:.6}", self.l0)?;
        writeln!(f, "l1={:.6}", self.l1)?;
        writeln!(f, "alpha={:.6}", self.alpha)?;
        writeln!(f, "white_pixels={}", self.white_pixels)?;
        writeln!(f, "black_pixels={}", self.black_pixels)?;
        writeln!(f, "se_l0={:.6}", self.se_l0)?;
        writeln!(f, "se_l1={:.6}", self.se_l1)?;
        writeln!(f, "se_alpha={:.6}", self.se_alpha)
    }
}

/// Contrast of `recovered` measured against the regions of `secret`.
pub fn empirical_contrast(recovered: &BinaryImage, secret: &BinaryImage) -> Result<ContrastReport> {
    secret.ensure_same_dims(recovered)?;
    let (white, black) = regions(secret);
    if white.is_empty() || black.is_empty() {
        return Err(Error::DegenerateSecret);
    }
    let (c0, n0) = transmission_counts(recovered, &white)?;
    let (c1, n1) = transmission_counts(recovered, &black)?;
    Ok(ContrastReport::from_counts(c0, n0, c1, n1))
}

/// Share indices realizing one member of a partition class.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PartitionSelection {
    pub partition: Partition,
    /// Chosen share numbers (1-based), ascending.
    pub indices: Vec<usize>,
    /// Selected count per group, in group order.
    pub occupancy: Vec<usize>,
}

impl PartitionSelection {
    /// Nonzero occupancies sorted descending; equals the partition's parts.
    pub fn sorted_occupancy(&self) -> Vec<usize> {
        let mut occ: Vec<usize> = self.occupancy.iter().copied().filter(|&c| c > 0).collect();
        occ.sort_unstable_by(|a, b| b.cmp(a));
        occ
    }
}

/// Picks shares whose per-group counts form `mu`. Parts are placed largest
/// first into randomly chosen groups with room, then a random subset is
/// taken inside each group.
pub fn select_by_partition<R: Rng + ?Sized>(
    layout: &ShareGroupLayout,
    mu: &Partition,
    rng: &mut R,
) -> Result<PartitionSelection> {
    let infeasible = |reason: String| Error::InfeasiblePartition {
        partition: mu.to_string(),
        reason,
    };
    let groups = layout.group_count();
    if mu.len() > groups {
        return Err(infeasible(format!("{} parts but only {groups} groups", mu.len())));
    }
    if mu.largest() > layout.group_size() {
        return Err(infeasible(format!(
            "part {} exceeds group size {}",
            mu.largest(),
            layout.group_size()
        )));
    }
    let mut free: Vec<usize> = (1..=groups).collect();
    free.shuffle(rng);
    let mut occupancy = vec![0usize; groups];
    for &part in mu.parts() {
        let pos = free
            .iter()
            .position(|&g| layout.capacity(g) >= part)
            .ok_or_else(|| infeasible(format!("no remaining group can hold {part} shares")))?;
        let g = free.swap_remove(pos);
        occupancy[g - 1] = part;
    }
    let mut indices = Vec::with_capacity(mu.total());
    for (i, &c) in occupancy.iter().enumerate() {
        if c > 0 {
            let members: Vec<usize> = layout.group(i + 1).collect();
            indices.extend(sample(rng, members.len(), c).into_iter().map(|j| members[j]));
        }
    }
    indices.sort_unstable();
    Ok(PartitionSelection {
        partition: mu.clone(),
        indices,
        occupancy,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::image::patterns;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn p(s: &str) -> Partition {
        s.parse().unwrap()
    }

    #[test]
    fn or_and_xor_identities() {
        let x = patterns::ring(9).unwrap();
        let white = BinaryImage::filled(9, 9, 0).unwrap();
        let black = BinaryImage::filled(9, 9, 1).unwrap();
        assert_eq!(stack_or([&x, &white]).unwrap(), x);
        assert_eq!(stack_or([&x, &black]).unwrap(), black);
        assert_eq!(stack_xor([&x, &x]).unwrap(), white);
        assert_eq!(stack_xor([&x, &white]).unwrap(), x);
        assert!(stack_or(std::iter::empty()).is_err());
        let small = BinaryImage::filled(2, 2, 0).unwrap();
        assert!(matches!(stack_xor([&x, &small]), Err(Error::DimensionMismatch { .. })));
    }

    #[test]
    fn transmission_cases() {
        let img = patterns::checkerboard(4, 4).unwrap();
        let full = RegionMask::full(4, 4);
        assert_eq!(light_transmission(&img, &full).unwrap(), 0.5);
        assert_eq!(light_transmission(&BinaryImage::filled(4, 4, 0).unwrap(), &full).unwrap(), 1.0);
        assert_eq!(light_transmission(&BinaryImage::filled(4, 4, 1).unwrap(), &full).unwrap(), 0.0);
        let empty = RegionMask::from_flags(4, 4, vec![false; 16]).unwrap();
        assert!(matches!(light_transmission(&img, &empty), Err(Error::DegenerateRegion)));
    }

    #[test]
    fn perfect_recovery_and_degenerate_secret() {
        let s = patterns::half_and_half(6, 6).unwrap();
        let r = empirical_contrast(&s, &s).unwrap();
        assert_eq!((r.l0, r.l1, r.alpha), (1.0, 0.0, 1.0));
        let text = r.to_key_values();
        assert!(text.contains("alpha=1.000000"));
        let flat = BinaryImage::filled(6, 6, 1).unwrap();
        assert!(matches!(empirical_contrast(&s, &flat), Err(Error::DegenerateSecret)));
    }

    #[test]
    fn selections_follow_the_partition() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let layout = ShareGroupLayout::new(4, 12).unwrap();
        let sel = select_by_partition(&layout, &p("2,1,1"), &mut rng).unwrap();
        assert_eq!(sel.sorted_occupancy(), vec![2, 1, 1]);
        assert_eq!(sel.occupancy.len(), 3);
        assert_eq!(sel.indices.len(), 4);

        let pairs = ShareGroupLayout::new(2, 6).unwrap();
        let sel = select_by_partition(&pairs, &p("1,1"), &mut rng).unwrap();
        assert_ne!(pairs.group_of(sel.indices[0]), pairs.group_of(sel.indices[1]));

        let sel = select_by_partition(&layout, &p("4"), &mut rng).unwrap();
        let g = layout.group_of(sel.indices[0]);
        assert_eq!(sel.indices, layout.group(g).collect::<Vec<_>>());
    }

    #[test]
    fn partial_last_group_is_respected() {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        // Groups of 3 over 7 shares: the last group holds one share.
        let layout = ShareGroupLayout::new(3, 7).unwrap();
        for _ in 0..50 {
            let sel = select_by_partition(&layout, &p("3,2,1"), &mut rng).unwrap();
            assert_eq!(sel.occupancy[2], 1);
            assert_eq!(sel.sorted_occupancy(), vec![3, 2, 1]);
        }
        assert!(select_by_partition(&layout, &p("3,3,2"), &mut rng).is_err());
        assert!(select_by_partition(&layout, &p("4"), &mut rng).is_err());
        assert!(select_by_partition(&layout, &p("1,1,1,1"), &mut rng).is_err());
    }
}
