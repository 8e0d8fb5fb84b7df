//! The k-grouped `(k,n)` random-grid scheme and the evolving `(k,∞)` dealer
//! built on it.
//!
//! Shares are numbered from 1. Shares `1..=k` carry the XOR kernel output;
//! every later share copies, pixel by pixel, one of those `k` bits chosen
//! without replacement inside its group of `k` consecutive shares.

use crate::error::{param, Error, Result};
use crate::image::BinaryImage;
use crate::kernel::fill_kk;
use crate::pbm::{save_pbm, PbmVariant};
use crate::rng::RandomSource;
use rayon::prelude::*;

/// Time index whose stream supplies first-group randomness. Share indices
/// start at 1, so it never collides with a selection stream.
pub(crate) const BASE_STREAM: u64 = 0;

/// Grouping of `total` issued shares into blocks of `group_size`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ShareGroupLayout {
    group_size: usize,
    total: usize,
}

impl ShareGroupLayout {
    pub fn new(group_size: usize, total: usize) -> Result<Self> {
        if group_size == 0 || total == 0 {
            return Err(param("group size and share count must be positive"));
        }
        Ok(Self { group_size, total })
    }

    pub fn group_size(&self) -> usize {
        self.group_size
    }

    pub fn total(&self) -> usize {
        self.total
    }

    pub fn group_count(&self) -> usize {
        self.total.div_ceil(self.group_size)
    }

    /// Share numbers of group `i` (1-based).
    pub fn group(&self, i: usize) -> std::ops::RangeInclusive<usize> {
        assert!(i >= 1 && i <= self.group_count(), "group {i} out of range");
        (i - 1) * self.group_size + 1..=(i * self.group_size).min(self.total)
    }

    pub fn capacity(&self, i: usize) -> usize {
        self.group(i).count()
    }

    /// Size of the last, possibly partial, group.
    pub fn last_capacity(&self) -> usize {
        self.capacity(self.group_count())
    }

    /// Group containing share `share` (1-based).
    pub fn group_of(&self, share: usize) -> usize {
        assert!(share >= 1 && share <= self.total, "share {share} out of range");
        (share - 1) / self.group_size + 1
    }

    pub fn is_complete(&self, i: usize) -> bool {
        self.capacity(i) == self.group_size
    }
}

/// CRC-32 of the canonical raw PBM encoding; used to pin issued shares.
pub fn share_digest(img: &BinaryImage) -> u32 {
    crc32fast::hash(&save_pbm(img, PbmVariant::P4))
}

/// Per-pixel without-replacement copier shared by the k-grouped dealer and
/// the better (3,∞) dealer.
#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) struct GroupedCopier {
    pub(crate) base: Vec<BinaryImage>,
    pub(crate) used: Vec<u64>,
}

impl GroupedCopier {
    pub(crate) fn new(base: Vec<BinaryImage>) -> Self {
        let pixels = base[0].len();
        Self {
            base,
            used: vec![0; pixels],
        }
    }

    /// Emits share `t`, updating the used-index masks.
    pub(crate) fn step(&mut self, t: u64, src: &RandomSource) -> BinaryImage {
        let g = self.base.len();
        let reset = (t - 1).is_multiple_of(g as u64);
        let (h, w) = self.base[0].dims();
        let base = &self.base;
        let mut out = vec![0u8; h * w];
        out.par_iter_mut()
            .zip(self.used.par_iter_mut())
            .enumerate()
            .for_each(|(p, (px, mask))| {
                if reset {
                    *mask = 0;
                }
                let free = g - mask.count_ones() as usize;
                let mut r = src.stream(p as u64, t).below(free);
                let q = (0..g)
                    .filter(|&i| *mask & (1 << i) == 0)
                    .find(|_| {
                        let hit = r == 0;
                        r = r.wrapping_sub(1);
                        hit
                    })
                    .expect("free index exists");
                *mask |= 1 << q;
                *px = base[q].bits()[p];
            });
        BinaryImage::from_raw(h, w, out)
    }

    pub(crate) fn validate(&self, next_t: u64) -> Result<()> {
        let g = self.base.len();
        let dims = self.base[0].dims();
        if self.base.iter().any(|b| b.dims() != dims) {
            return Err(Error::State("base shadows differ in size".into()));
        }
        if self.used.len() != self.base[0].len() {
            return Err(Error::State("index table does not match the image size".into()));
        }
        // Masks are cleared lazily when a group starts, so a finished group
        // still shows all `g` slots used.
        let expect = if next_t <= g as u64 + 1 { 0 } else { ((next_t - 2) % g as u64) as u32 + 1 };
        let allowed = if g == 64 { u64::MAX } else { (1u64 << g) - 1 };
        for (p, &mask) in self.used.iter().enumerate() {
            if mask & !allowed != 0 {
                return Err(Error::State(format!("pixel {p}: index mask {mask:#x} exceeds {g} slots")));
            }
            if mask.count_ones() != expect {
                return Err(Error::State(format!(
                    "pixel {p}: {} indices used, expected {expect} before share {next_t}",
                    mask.count_ones()
                )));
            }
        }
        Ok(())
    }
}

/// Output of the k-grouped `(k,n)` scheme.
#[derive(Clone, Debug)]
pub struct KGroupedShares {
    pub shadows: Vec<BinaryImage>,
    /// Used-index bitmask per pixel after share `n` (bit `i` is index `i+1`).
    pub q_table: Vec<u64>,
}

fn check_k_n(k: usize, n: usize) -> Result<()> {
    if k < 2 {
        return Err(param(format!("threshold k must be at least 2, got {k}")));
    }
    if k > 64 {
        return Err(param(format!("threshold k is limited to 64, got {k}")));
    }
    if n < k {
        return Err(param(format!("need n >= k, got k={k}, n={n}")));
    }
    Ok(())
}

/// Kernel outputs for every pixel, split into `k` shadows.
fn kernel_shadows(secret: &BinaryImage, k: usize, src: &RandomSource) -> Vec<BinaryImage> {
    let (h, w) = secret.dims();
    let mut flat = vec![0u8; h * w * k];
    flat.par_chunks_mut(k)
        .zip(secret.bits().par_iter())
        .enumerate()
        .for_each(|(p, (out, &s))| fill_kk(s, out, &mut src.stream(p as u64, BASE_STREAM)));
    (0..k)
        .map(|i| BinaryImage::from_raw(h, w, flat.iter().skip(i).step_by(k).copied().collect()))
        .collect()
}

/// Shares `secret` into `n` shadows, any `k` from one group recovering it.
pub fn share_kgrouped(secret: &BinaryImage, k: usize, n: usize, seed: u64) -> Result<KGroupedShares> {
    check_k_n(k, n)?;
    let src = RandomSource::new(seed);
    let base = kernel_shadows(secret, k, &src);
    let mut copier = GroupedCopier::new(base);
    let mut shadows = copier.base.clone();
    for t in k + 1..=n {
        shadows.push(copier.step(t as u64, &src));
    }
    Ok(KGroupedShares {
        shadows,
        q_table: copier.used,
    })
}

/// Resumable dealer of the evolving `(k,∞)` scheme.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EvolvingDealer {
    k: usize,
    n: usize,
    next_t: u64,
    seed: u64,
    copier: GroupedCopier,
    issued: Vec<u32>,
}

impl EvolvingDealer {
    /// Runs the first phase and returns the dealer with shares `1..=n`.
    pub fn init(secret: &BinaryImage, k: usize, n: usize, seed: u64) -> Result<(Self, Vec<BinaryImage>)> {
        let KGroupedShares { shadows, q_table } = share_kgrouped(secret, k, n, seed)?;
        let copier = GroupedCopier {
            base: shadows[..k].to_vec(),
            used: q_table,
        };
        let dealer = Self {
            k,
            n,
            next_t: n as u64 + 1,
            seed,
            copier,
            issued: shadows.iter().map(share_digest).collect(),
        };
        Ok((dealer, shadows))
    }

    /// Issues the next share.
    pub fn extend(&mut self) -> Result<BinaryImage> {
        self.validate()?;
        let t = self.next_t;
        let img = self.copier.step(t, &RandomSource::new(self.seed));
        self.issued.push(share_digest(&img));
        self.next_t += 1;
        Ok(img)
    }

    /// Rebuilds a dealer from stored parts, checking every invariant.
    pub fn from_parts(
        k: usize,
        n: usize,
        next_t: u64,
        seed: u64,
        base: Vec<BinaryImage>,
        q_table: Vec<u64>,
        issued: Vec<u32>,
    ) -> Result<Self> {
        check_k_n(k, n).map_err(|e| Error::State(e.to_string()))?;
        if base.len() != k {
            return Err(Error::State(format!("{} base shadows stored for k={k}", base.len())));
        }
        let dealer = Self {
            k,
            n,
            next_t,
            seed,
            copier: GroupedCopier { base, used: q_table },
            issued,
        };
        dealer.validate()?;
        Ok(dealer)
    }

    pub fn validate(&self) -> Result<()> {
        if self.next_t < self.n as u64 + 1 {
            return Err(Error::State(format!(
                "next share {} precedes the first phase of {} shares",
                self.next_t, self.n
            )));
        }
        if self.issued.len() as u64 != self.next_t - 1 {
            return Err(Error::State(format!(
                "{} share digests recorded but {} shares issued",
                self.issued.len(),
                self.next_t - 1
            )));
        }
        self.copier.validate(self.next_t)
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn next_t(&self) -> u64 {
        self.next_t
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    pub fn dims(&self) -> (usize, usize) {
        self.copier.base[0].dims()
    }

    /// Shadows `SC_1..SC_k`.
    pub fn base_shadows(&self) -> &[BinaryImage] {
        &self.copier.base
    }

    pub fn q_table(&self) -> &[u64] {
        &self.copier.used
    }

    pub fn issued_digests(&self) -> &[u32] {
        &self.issued
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::image::patterns;

    fn secret() -> BinaryImage {
        patterns::ring(24).unwrap()
    }

    #[test]
    fn layout_groups() {
        let l = ShareGroupLayout::new(4, 10).unwrap();
        assert_eq!(l.group_count(), 3);
        assert_eq!(l.group(3), 9..=10);
        assert_eq!(l.last_capacity(), 2);
        assert_eq!(l.group_of(5), 2);
        assert!(!l.is_complete(3));
        let covered: Vec<usize> = (1..=3).flat_map(|i| l.group(i)).collect();
        assert_eq!(covered, (1..=10).collect::<Vec<_>>());
    }

    #[test]
    fn two_of_two_pixels() {
        let s = secret();
        let out = share_kgrouped(&s, 2, 2, 1).unwrap();
        for p in 0..s.len() {
            let (a, b) = (out.shadows[0].bits()[p], out.shadows[1].bits()[p]);
            assert_eq!(a != b, s.bits()[p] == 1);
        }
    }

    #[test]
    fn later_groups_permute_the_kernel() {
        let s = secret();
        let out = share_kgrouped(&s, 3, 6, 4).unwrap();
        for p in 0..s.len() {
            let mut first: Vec<u8> = (0..3).map(|i| out.shadows[i].bits()[p]).collect();
            let mut second: Vec<u8> = (3..6).map(|i| out.shadows[i].bits()[p]).collect();
            first.sort_unstable();
            second.sort_unstable();
            assert_eq!(first, second);
        }
        assert!(out.q_table.iter().all(|&m| m == 0b111));
    }

    #[test]
    fn fourth_share_copies_one_of_three() {
        let s = secret();
        let out = share_kgrouped(&s, 3, 4, 8).unwrap();
        let mut hits = [0usize; 3];
        for p in 0..s.len() {
            let m = out.q_table[p];
            assert_eq!(m.count_ones(), 1);
            let q = m.trailing_zeros() as usize;
            assert_eq!(out.shadows[3].bits()[p], out.shadows[q].bits()[p]);
            hits[q] += 1;
        }
        assert!(hits.iter().all(|&h| h > s.len() / 5), "{hits:?}");
    }

    #[test]
    fn parameter_errors() {
        let s = secret();
        assert!(share_kgrouped(&s, 1, 3, 0).is_err());
        assert!(share_kgrouped(&s, 4, 3, 0).is_err());
        assert!(EvolvingDealer::init(&s, 3, 2, 0).is_err());
    }

    #[test]
    fn init_primes_state() {
        let s = secret();
        let (d, shadows) = EvolvingDealer::init(&s, 3, 3, 5).unwrap();
        assert_eq!(d.next_t(), 4);
        assert!(d.q_table().iter().all(|&m| m == 0));
        assert_eq!(shadows.len(), 3);
        let (d, _) = EvolvingDealer::init(&s, 3, 4, 5).unwrap();
        assert!(d.q_table().iter().all(|&m| m.count_ones() == 1));
    }

    #[test]
    fn extension_matches_longer_first_phase() {
        let s = secret();
        let long = share_kgrouped(&s, 3, 10, 21).unwrap();
        let (mut d, mut shadows) = EvolvingDealer::init(&s, 3, 3, 21).unwrap();
        for _ in 0..7 {
            shadows.push(d.extend().unwrap());
        }
        assert_eq!(shadows, long.shadows);
        assert_eq!(d.q_table(), &long.q_table[..]);
        assert_eq!(d.issued_digests().len(), 10);
    }

    #[test]
    fn example_one_trace() {
        // k=3: after share 4 used index q, share 5 picks among the other two.
        let s = secret();
        let (mut d, shadows) = EvolvingDealer::init(&s, 3, 4, 13).unwrap();
        let before: Vec<u64> = d.q_table().to_vec();
        let fifth = d.extend().unwrap();
        for p in 0..s.len() {
            let added = d.q_table()[p] & !before[p];
            assert_eq!(added.count_ones(), 1);
            assert_eq!(before[p] & added, 0);
            let q = added.trailing_zeros() as usize;
            assert_eq!(fifth.bits()[p], shadows[q].bits()[p]);
        }
    }

    #[test]
    fn corrupted_state_is_rejected() {
        let s = secret();
        let (d, _) = EvolvingDealer::init(&s, 3, 4, 2).unwrap();
        let mut q = d.q_table().to_vec();
        q[0] = 0b11;
        let r = EvolvingDealer::from_parts(3, 4, 5, 2, d.base_shadows().to_vec(), q, d.issued_digests().to_vec());
        assert!(matches!(r, Err(Error::State(_))));
        let mut q = d.q_table().to_vec();
        q[0] = 0b1000;
        let r = EvolvingDealer::from_parts(3, 4, 5, 2, d.base_shadows().to_vec(), q, d.issued_digests().to_vec());
        assert!(matches!(r, Err(Error::State(_))));
    }
}
