//! Netpbm PBM reading and writing, plain (`P1`) and raw (`P4`).
//!
//! A set PBM bit means black, which is also the opaque `1` of
//! [`BinaryImage`], so no inversion happens in either direction.

use crate::error::{Error, Result};
use crate::image::BinaryImage;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PbmVariant {
    /// ASCII digits.
    P1,
    /// Packed bits, rows padded to a byte boundary.
    P4,
}

/// Longest line the plain writer emits.
const PLAIN_LINE: usize = 70;

/// Parses a single PBM image from `bytes`. Trailing bytes after the raster
/// are ignored.
pub fn load_pbm(bytes: &[u8]) -> Result<BinaryImage> {
    let mut cur = Cursor { bytes, pos: 0 };
    if bytes.len() < 2 || bytes[0] != b'P' {
        return Err(cur.error("missing PBM magic number"));
    }
    let variant = match bytes[1] {
        b'1' => PbmVariant::P1,
        b'4' => PbmVariant::P4,
        other => {
            cur.pos = 1;
            return Err(cur.error(format!("unsupported magic P{}", other as char)));
        }
    };
    cur.pos = 2;
    if !cur.peek().is_some_and(is_pbm_space) && cur.peek() != Some(b'#') {
        return Err(cur.error("magic number must be followed by whitespace"));
    }
    let width = cur.header_number("width")?;
    let height = cur.header_number("height")?;

    match variant {
        PbmVariant::P1 => read_plain(&mut cur, height, width),
        PbmVariant::P4 => read_raw(&mut cur, height, width),
    }
}

/// Writes the canonical encoding: `P<n>\n<w> <h>\n` followed by the raster.
/// Plain rasters put each image row on its own line (wrapped at 70 digits);
/// raw rows are padded with zero bits.
pub fn save_pbm(img: &BinaryImage, variant: PbmVariant) -> Vec<u8> {
    let (h, w) = img.dims();
    let mut out = Vec::new();
    match variant {
        PbmVariant::P1 => {
            out.extend_from_slice(format!("P1\n{w} {h}\n").as_bytes());
            for row in img.bits().chunks(w) {
                for line in row.chunks(PLAIN_LINE) {
                    out.extend(line.iter().map(|&b| b'0' + b));
                    out.push(b'\n');
                }
            }
        }
        PbmVariant::P4 => {
            out.extend_from_slice(format!("P4\n{w} {h}\n").as_bytes());
            let row_bytes = w.div_ceil(8);
            out.reserve(row_bytes * h);
            for row in img.bits().chunks(w) {
                for chunk in row.chunks(8) {
                    let mut byte = 0u8;
                    for (i, &b) in chunk.iter().enumerate() {
                        byte |= b << (7 - i);
                    }
                    out.push(byte);
                }
            }
        }
    }
    out
}

fn is_pbm_space(b: u8) -> bool {
    matches!(b, b' ' | b'\t' | b'\n' | b'\r' | 0x0b | 0x0c)
}

struct Cursor<'a> {
    bytes: &'a [u8],
    pos: usize,
}

impl Cursor<'_> {
    fn error(&self, message: impl Into<String>) -> Error {
        Error::Parse {
            offset: self.pos,
            message: message.into(),
        }
    }

    fn peek(&self) -> Option<u8> {
        self.bytes.get(self.pos).copied()
    }

    /// Skips whitespace and `#` comments.
    fn skip_filler(&mut self) {
        while let Some(b) = self.peek() {
            if is_pbm_space(b) {
                self.pos += 1;
            } else if b == b'#' {
                while let Some(c) = self.peek() {
                    self.pos += 1;
                    if c == b'\n' || c == b'\r' {
                        break;
                    }
                }
            } else {
                break;
            }
        }
    }

    fn header_number(&mut self, what: &str) -> Result<usize> {
        self.skip_filler();
        let start = self.pos;
        while self.peek().is_some_and(|b| b.is_ascii_digit()) {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.error(match self.peek() {
                None => format!("truncated header: {what} missing"),
                Some(b'-') => format!("{what} must be positive"),
                Some(_) => format!("expected decimal {what}"),
            }));
        }
        let text = std::str::from_utf8(&self.bytes[start..self.pos]).expect("ascii digits");
        let value: usize = text.parse().map_err(|_| Error::Parse {
            offset: start,
            message: format!("{what} {text} is out of range"),
        })?;
        if value == 0 {
            return Err(Error::Parse {
                offset: start,
                message: format!("{what} must be positive"),
            });
        }
        Ok(value)
    }
}

fn read_plain(cur: &mut Cursor<'_>, height: usize, width: usize) -> Result<BinaryImage> {
    let total = checked_area(cur, height, width)?;
    let mut bits = Vec::with_capacity(total);
    while bits.len() < total {
        cur.skip_filler();
        match cur.peek() {
            Some(b @ (b'0' | b'1')) => {
                bits.push(b - b'0');
                cur.pos += 1;
            }
            Some(other) => {
                return Err(cur.error(format!("unexpected byte 0x{other:02x} in plain raster")));
            }
            None => {
                return Err(cur.error(format!(
                    "truncated raster: {} of {total} pixels present",
                    bits.len()
                )));
            }
        }
    }
    Ok(BinaryImage::from_raw(height, width, bits))
}

fn read_raw(cur: &mut Cursor<'_>, height: usize, width: usize) -> Result<BinaryImage> {
    let total = checked_area(cur, height, width)?;
    // Exactly one whitespace byte separates the header from the raster.
    match cur.peek() {
        Some(b) if is_pbm_space(b) => cur.pos += 1,
        Some(_) => return Err(cur.error("expected a single whitespace byte before the raster")),
        None => return Err(cur.error("truncated header: raster missing")),
    }
    let row_bytes = width.div_ceil(8);
    let needed = row_bytes * height;
    let available = cur.bytes.len() - cur.pos;
    if available < needed {
        cur.pos = cur.bytes.len();
        return Err(cur.error(format!("truncated raster: {available} of {needed} bytes present")));
    }
    let raster = &cur.bytes[cur.pos..cur.pos + needed];
    let mut bits = Vec::with_capacity(total);
    for row in raster.chunks(row_bytes) {
        for c in 0..width {
            bits.push((row[c / 8] >> (7 - c % 8)) & 1);
        }
    }
    Ok(BinaryImage::from_raw(height, width, bits))
}

fn checked_area(cur: &Cursor<'_>, height: usize, width: usize) -> Result<usize> {
    height
        .checked_mul(width)
        .filter(|&n| n <= 1 << 34)
        .ok_or_else(|| cur.error(format!("{width}x{height} image is too large")))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn plain_header_read() {
        let img = load_pbm(b"P1\n2 1\n1 0").unwrap();
        assert_eq!(img, BinaryImage::from_rows(&[[1u8, 0]]).unwrap());
    }

    #[test]
    fn raw_all_black_row() {
        let mut bytes = b"P4\n8 1\n".to_vec();
        bytes.push(0xFF);
        let img = load_pbm(&bytes).unwrap();
        assert_eq!(img.dims(), (1, 8));
        assert!(img.bits().iter().all(|&b| b == 1));
    }

    #[test]
    fn canonical_raw_round_trip_is_byte_identical() {
        let mut bytes = b"P4\n10 2\n".to_vec();
        bytes.extend_from_slice(&[0b1011_0010, 0b1100_0000, 0b0000_0001, 0b0100_0000]);
        let img = load_pbm(&bytes).unwrap();
        assert_eq!(save_pbm(&img, PbmVariant::P4), bytes);
    }

    #[test]
    fn single_white_pixel_plain() {
        let img = BinaryImage::filled(1, 1, 0).unwrap();
        assert_eq!(save_pbm(&img, PbmVariant::P1), b"P1\n1 1\n0\n");
    }

    #[test]
    fn full_byte_raw() {
        let img = BinaryImage::filled(1, 8, 1).unwrap();
        assert_eq!(save_pbm(&img, PbmVariant::P4), b"P4\n8 1\n\xFF");
    }

    #[test]
    fn raw_padding_rule() {
        let img = BinaryImage::from_rows(&[[1u8, 0, 1]]).unwrap();
        let out = save_pbm(&img, PbmVariant::P4);
        assert_eq!(out.last(), Some(&0b1010_0000));
    }

    #[test]
    fn comments_and_packed_plain_digits() {
        let img = load_pbm(b"P1 # a comment\n# another\n3 2\n101\n 0 1 0").unwrap();
        assert_eq!(img, BinaryImage::from_rows(&[[1u8, 0, 1], [0, 1, 0]]).unwrap());
    }

    #[test]
    fn errors_carry_offsets() {
        match load_pbm(b"P1\n0 3\n") {
            Err(Error::Parse { offset, .. }) => assert_eq!(offset, 3),
            other => panic!("expected parse error, got {other:?}"),
        }
        match load_pbm(b"P4\n16 2\n\x00\x00\x00") {
            Err(Error::Parse { offset, message }) => {
                assert_eq!(offset, 11);
                assert!(message.contains("truncated"));
            }
            other => panic!("expected parse error, got {other:?}"),
        }
        assert!(matches!(load_pbm(b"P2\n1 1\n0"), Err(Error::Parse { offset: 1, .. })));
        assert!(matches!(load_pbm(b"P1\n2 2\n0 1 x"), Err(Error::Parse { offset: 11, .. })));
        assert!(load_pbm(b"P1\n-2 2\n").is_err());
        assert!(load_pbm(b"P1\n2").is_err());
        assert!(load_pbm(b"").is_err());
    }

    fn arb_image() -> impl Strategy<Value = BinaryImage> {
        (1usize..12, 1usize..90).prop_flat_map(|(h, w)| {
            proptest::collection::vec(0u8..2, h * w)
                .prop_map(move |bits| BinaryImage::new(h, w, bits).unwrap())
        })
    }

    proptest! {
        #[test]
        fn round_trip_both_variants(img in arb_image()) {
            for variant in [PbmVariant::P1, PbmVariant::P4] {
                prop_assert_eq!(&load_pbm(&save_pbm(&img, variant)).unwrap(), &img);
            }
        }
    }
}
