#![allow(dead_code)]

use evcs::recovery::select_by_partition;
use evcs::theory::partition::Partition;
use evcs::{empirical_contrast, stack_or, stack_xor, BinaryImage, ContrastReport, ShareGroupLayout};
use rand::Rng;

/// Side of the square secret used by the million-pixel checks.
pub const MC_SIDE: usize = 1024;

pub fn half_secret(side: usize) -> BinaryImage {
    evcs::image::patterns::half_and_half(side, side).unwrap()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Stack {
    Or,
    Xor,
}

/// Contrast of the shares at 1-based `indices`.
pub fn contrast_of(shares: &[BinaryImage], indices: &[usize], mode: Stack, secret: &BinaryImage) -> ContrastReport {
    let picked = indices.iter().map(|&i| &shares[i - 1]);
    let img = match mode {
        Stack::Or => stack_or(picked),
        Stack::Xor => stack_xor(picked),
    }
    .unwrap();
    empirical_contrast(&img, secret).unwrap()
}

/// Contrast of a random stack of class `mu`.
pub fn partition_contrast<R: Rng>(
    shares: &[BinaryImage],
    group_size: usize,
    mu: &Partition,
    mode: Stack,
    secret: &BinaryImage,
    rng: &mut R,
) -> (Vec<usize>, ContrastReport) {
    let layout = ShareGroupLayout::new(group_size, shares.len()).unwrap();
    let sel = select_by_partition(&layout, mu, rng).unwrap();
    let report = contrast_of(shares, &sel.indices, mode, secret);
    (sel.indices, report)
}

/// Simulated number of distinct indices covered when each part of `mu`
/// picks a uniform subset of that size from `k` slots. Returns counts by d.
pub fn simulate_distinct<R: Rng>(mu: &Partition, k: usize, samples: usize, rng: &mut R) -> Vec<u64> {
    let mut counts = vec![0u64; k + 1];
    for _ in 0..samples {
        let mut covered = 0u64;
        for &part in mu.parts() {
            for i in rand::seq::index::sample(rng, k, part) {
                covered |= 1 << i;
            }
        }
        counts[covered.count_ones() as usize] += 1;
    }
    counts
}
