//! Binary rasters and the white/black region split of a secret.
//!
//! Pixel values follow the transparency convention used throughout the crate:
//! `0` is a transparent (white) pixel that lets light through, `1` is an
//! opaque (black) pixel.

use crate::error::{param, Error, Result};

/// An `height × width` raster of `{0,1}` pixels stored row-major.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BinaryImage {
    height: usize,
    width: usize,
    bits: Vec<u8>,
}

impl BinaryImage {
    /// Builds an image from row-major bits, rejecting anything but 0/1 values
    /// or a length that disagrees with the dimensions.
    pub fn new(height: usize, width: usize, bits: Vec<u8>) -> Result<Self> {
        check_dims(height, width)?;
        if bits.len() != height * width {
            return Err(param(format!(
                "{} bits supplied for a {height}x{width} image",
                bits.len()
            )));
        }
        if let Some(pos) = bits.iter().position(|&b| b > 1) {
            return Err(param(format!("pixel {pos} has value {}", bits[pos])));
        }
        Ok(Self {
            height,
            width,
            bits,
        })
    }

    pub fn filled(height: usize, width: usize, value: u8) -> Result<Self> {
        if value > 1 {
            return Err(param(format!("fill value {value} is not a bit")));
        }
        check_dims(height, width)?;
        Ok(Self {
            height,
            width,
            bits: vec![value; height * width],
        })
    }

    pub fn from_fn(height: usize, width: usize, mut f: impl FnMut(usize, usize) -> u8) -> Result<Self> {
        check_dims(height, width)?;
        let mut bits = Vec::with_capacity(height * width);
        for r in 0..height {
            for c in 0..width {
                bits.push(f(r, c));
            }
        }
        Self::new(height, width, bits)
    }

    /// Convenience constructor for small literal images.
    pub fn from_rows<R: AsRef<[u8]>>(rows: &[R]) -> Result<Self> {
        let height = rows.len();
        let width = rows.first().map_or(0, |r| r.as_ref().len());
        let mut bits = Vec::with_capacity(height * width);
        for (i, row) in rows.iter().enumerate() {
            let row = row.as_ref();
            if row.len() != width {
                return Err(param(format!("row {i} has {} pixels, expected {width}", row.len())));
            }
            bits.extend_from_slice(row);
        }
        Self::new(height, width, bits)
    }

    /// Only for bits produced inside the crate, already known to be 0/1.
    pub(crate) fn from_raw(height: usize, width: usize, bits: Vec<u8>) -> Self {
        debug_assert_eq!(bits.len(), height * width);
        debug_assert!(bits.iter().all(|&b| b <= 1));
        Self {
            height,
            width,
            bits,
        }
    }

    pub fn height(&self) -> usize {
        self.height
    }

    pub fn width(&self) -> usize {
        self.width
    }

    /// `(height, width)`.
    pub fn dims(&self) -> (usize, usize) {
        (self.height, self.width)
    }

    pub fn len(&self) -> usize {
        self.bits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bits.is_empty()
    }

    pub fn bits(&self) -> &[u8] {
        &self.bits
    }

    pub fn into_bits(self) -> Vec<u8> {
        self.bits
    }

    pub fn get(&self, row: usize, col: usize) -> u8 {
        self.bits[row * self.width + col]
    }

    pub fn count_zeros(&self) -> usize {
        self.bits.iter().filter(|&&b| b == 0).count()
    }

    pub fn count_ones(&self) -> usize {
        self.bits.len() - self.count_zeros()
    }

    pub(crate) fn ensure_same_dims(&self, other: &BinaryImage) -> Result<()> {
        if self.dims() != other.dims() {
            return Err(Error::DimensionMismatch {
                expected: self.dims(),
                found: other.dims(),
            });
        }
        Ok(())
    }
}

impl std::fmt::Debug for BinaryImage {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "BinaryImage({}x{}", self.height, self.width)?;
        if self.bits.len() <= 64 {
            f.write_str(", [")?;
            for (r, row) in self.bits.chunks(self.width).enumerate() {
                if r > 0 {
                    f.write_str("/")?;
                }
                for b in row {
                    write!(f, "{b}")?;
                }
            }
            f.write_str("]")?;
        }
        f.write_str(")")
    }
}

fn check_dims(height: usize, width: usize) -> Result<()> {
    if height == 0 || width == 0 {
        return Err(param(format!("image dimensions must be positive, got {height}x{width}")));
    }
    Ok(())
}

/// Membership flags over the pixels of a parent image.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RegionMask {
    height: usize,
    width: usize,
    members: Vec<bool>,
}

impl RegionMask {
    pub fn full(height: usize, width: usize) -> Self {
        Self {
            height,
            width,
            members: vec![true; height * width],
        }
    }

    pub fn from_flags(height: usize, width: usize, members: Vec<bool>) -> Result<Self> {
        check_dims(height, width)?;
        if members.len() != height * width {
            return Err(param("mask length does not match its dimensions"));
        }
        Ok(Self {
            height,
            width,
            members,
        })
    }

    pub fn dims(&self) -> (usize, usize) {
        (self.height, self.width)
    }

    pub fn flags(&self) -> &[bool] {
        &self.members
    }

    pub fn contains(&self, row: usize, col: usize) -> bool {
        self.members[row * self.width + col]
    }

    /// Number of member pixels.
    pub fn count(&self) -> usize {
        self.members.iter().filter(|&&m| m).count()
    }

    pub fn is_empty(&self) -> bool {
        !self.members.iter().any(|&m| m)
    }
}

/// Splits `img` into its white region (pixels equal to 0) and black region
/// (pixels equal to 1). The two masks are disjoint and cover every pixel.
pub fn regions(img: &BinaryImage) -> (RegionMask, RegionMask) {
    let white: Vec<bool> = img.bits.iter().map(|&b| b == 0).collect();
    let black: Vec<bool> = white.iter().map(|&w| !w).collect();
    (
        RegionMask {
            height: img.height,
            width: img.width,
            members: white,
        },
        RegionMask {
            height: img.height,
            width: img.width,
            members: black,
        },
    )
}

/// Synthetic secrets used by the examples and the measurement suites.
pub mod patterns {
    use super::BinaryImage;
    use crate::error::Result;

    /// Left half white, right half black.
    pub fn half_and_half(height: usize, width: usize) -> Result<BinaryImage> {
        BinaryImage::from_fn(height, width, |_, c| u8::from(c >= width / 2))
    }

    pub fn checkerboard(height: usize, width: usize) -> Result<BinaryImage> {
        BinaryImage::from_fn(height, width, |r, c| ((r + c) % 2) as u8)
    }

    /// A black ring on a white field; reads well when printed as ASCII art.
    pub fn ring(size: usize) -> Result<BinaryImage> {
        let centre = (size as f64 - 1.0) / 2.0;
        let outer = size as f64 * 0.42;
        let inner = size as f64 * 0.24;
        BinaryImage::from_fn(size, size, |r, c| {
            let d = ((r as f64 - centre).powi(2) + (c as f64 - centre).powi(2)).sqrt();
            u8::from(d <= outer && d >= inner)
        })
    }
}
