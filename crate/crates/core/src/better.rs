//! Contrast-enhanced evolving schemes for thresholds 2 and 3.
//!
//! The threshold-2 scheme uses generalized random grids with transmission
//! `λ = √2−1`, pairing shares `(2i−1, 2i)`. The threshold-3 scheme draws the
//! first four shares from a row of a 6×4 basis matrix and then reuses them in
//! groups of four.

use crate::error::{Error, Result};
use crate::evolving::{share_digest, GroupedCopier, BASE_STREAM};
use crate::image::BinaryImage;
use crate::rng::RandomSource;
use rayon::prelude::*;

/// Light transmission of every threshold-2 share.
pub const LAMBDA: f64 = std::f64::consts::SQRT_2 - 1.0;

/// `λ/(1−λ)`, which simplifies to `1/√2`.
pub const LAMBDA_RATIO: f64 = std::f64::consts::FRAC_1_SQRT_2;

/// Rows of `B⁰` (white pixels) and `B¹` (black pixels).
pub struct BasisMatrices;

impl BasisMatrices {
    pub const B0: [[u8; 4]; 6] = [
        [0, 0, 0, 0],
        [0, 0, 0, 0],
        [0, 1, 1, 1],
        [1, 0, 1, 1],
        [1, 1, 0, 1],
        [1, 1, 1, 0],
    ];
    pub const B1: [[u8; 4]; 6] = [
        [1, 1, 1, 1],
        [1, 1, 1, 1],
        [0, 0, 0, 1],
        [0, 0, 1, 0],
        [0, 1, 0, 0],
        [1, 0, 0, 0],
    ];

    pub fn for_bit(s: u8) -> &'static [[u8; 4]; 6] {
        if s == 0 {
            &Self::B0
        } else {
            &Self::B1
        }
    }

    /// Rows whose OR over the columns in `cols` is 0.
    pub fn zero_rows(s: u8, cols: &[usize]) -> usize {
        Self::for_bit(s)
            .iter()
            .filter(|row| cols.iter().all(|&c| row[c] == 0))
            .count()
    }
}

/// Dealer of the better (2,∞) scheme. It keeps the secret because every
/// extension branches on it; the dealer is trusted.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Better2Dealer {
    secret: BinaryImage,
    p: Vec<u8>,
    next_t: u64,
    seed: u64,
    issued: Vec<u32>,
}

impl Better2Dealer {
    /// Issues `SC_1`, a random grid with transmission `λ`.
    pub fn init(secret: &BinaryImage, seed: u64) -> (Self, BinaryImage) {
        let src = RandomSource::new(seed);
        let (h, w) = secret.dims();
        let bits: Vec<u8> = (0..h * w)
            .into_par_iter()
            .map(|p| src.stream(p as u64, 1).bit(LAMBDA))
            .collect();
        let first = BinaryImage::from_raw(h, w, bits.clone());
        let dealer = Self {
            secret: secret.clone(),
            p: bits,
            next_t: 2,
            seed,
            issued: vec![share_digest(&first)],
        };
        (dealer, first)
    }

    pub fn extend(&mut self) -> Result<BinaryImage> {
        self.validate()?;
        let t = self.next_t;
        let odd = t % 2 == 1;
        let src = RandomSource::new(self.seed);
        let (h, w) = self.secret.dims();
        let mut out = vec![0u8; h * w];
        out.par_iter_mut()
            .zip(self.p.par_iter_mut())
            .zip(self.secret.bits().par_iter())
            .enumerate()
            .for_each(|(px, ((o, p), &s))| {
                *o = if s == 0 {
                    *p
                } else if odd {
                    *p = src.stream(px as u64, t).bit(LAMBDA);
                    *p
                } else if *p == 0 {
                    1
                } else {
                    src.stream(px as u64, t).bit(LAMBDA_RATIO)
                };
            });
        let img = BinaryImage::from_raw(h, w, out);
        self.issued.push(share_digest(&img));
        self.next_t += 1;
        Ok(img)
    }

    pub fn from_parts(secret: BinaryImage, p: Vec<u8>, next_t: u64, seed: u64, issued: Vec<u32>) -> Result<Self> {
        let dealer = Self {
            secret,
            p,
            next_t,
            seed,
            issued,
        };
        dealer.validate()?;
        Ok(dealer)
    }

    pub fn validate(&self) -> Result<()> {
        if self.next_t < 2 {
            return Err(Error::State("better2 dealer must have issued its first share".into()));
        }
        if self.p.len() != self.secret.len() {
            return Err(Error::State("table P does not match the secret size".into()));
        }
        if self.p.iter().any(|&b| b > 1) {
            return Err(Error::State("table P holds a non-bit value".into()));
        }
        if self.issued.len() as u64 != self.next_t - 1 {
            return Err(Error::State("share digest count disagrees with next_t".into()));
        }
        Ok(())
    }

    pub fn secret(&self) -> &BinaryImage {
        &self.secret
    }

    pub fn p_table(&self) -> &[u8] {
        &self.p
    }

    pub fn next_t(&self) -> u64 {
        self.next_t
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    pub fn dims(&self) -> (usize, usize) {
        self.secret.dims()
    }

    pub fn issued_digests(&self) -> &[u32] {
        &self.issued
    }
}

/// Dealer of the better (3,∞) scheme.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Better3Dealer {
    copier: GroupedCopier,
    next_t: u64,
    seed: u64,
    issued: Vec<u32>,
}

impl Better3Dealer {
    /// Issues the first group `SC_1..SC_4`.
    pub fn init(secret: &BinaryImage, seed: u64) -> (Self, Vec<BinaryImage>) {
        let src = RandomSource::new(seed);
        let (h, w) = secret.dims();
        let rows: Vec<[u8; 4]> = secret
            .bits()
            .par_iter()
            .enumerate()
            .map(|(p, &s)| BasisMatrices::for_bit(s)[src.stream(p as u64, BASE_STREAM).below(6)])
            .collect();
        let base: Vec<BinaryImage> = (0..4)
            .map(|c| BinaryImage::from_raw(h, w, rows.iter().map(|r| r[c]).collect()))
            .collect();
        let dealer = Self {
            issued: base.iter().map(share_digest).collect(),
            copier: GroupedCopier::new(base.clone()),
            next_t: 5,
            seed,
        };
        (dealer, base)
    }

    pub fn extend(&mut self) -> Result<BinaryImage> {
        self.validate()?;
        let img = self.copier.step(self.next_t, &RandomSource::new(self.seed));
        self.issued.push(share_digest(&img));
        self.next_t += 1;
        Ok(img)
    }

    pub fn from_parts(base: Vec<BinaryImage>, p: Vec<u64>, next_t: u64, seed: u64, issued: Vec<u32>) -> Result<Self> {
        if base.len() != 4 {
            return Err(Error::State(format!("better3 needs 4 base shadows, found {}", base.len())));
        }
        let dealer = Self {
            copier: GroupedCopier { base, used: p },
            next_t,
            seed,
            issued,
        };
        dealer.validate()?;
        Ok(dealer)
    }

    pub fn validate(&self) -> Result<()> {
        if self.next_t < 5 {
            return Err(Error::State("better3 dealer must have issued its first group".into()));
        }
        if self.issued.len() as u64 != self.next_t - 1 {
            return Err(Error::State("share digest count disagrees with next_t".into()));
        }
        self.copier.validate(self.next_t)
    }

    pub fn base_shadows(&self) -> &[BinaryImage] {
        &self.copier.base
    }

    pub fn p_table(&self) -> &[u64] {
        &self.copier.used
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

    pub fn issued_digests(&self) -> &[u32] {
        &self.issued
    }
}
