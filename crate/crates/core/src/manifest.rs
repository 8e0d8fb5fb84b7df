//! Versioned JSON manifest for dealer state.
//!
//! Images are stored as base64 raw-PBM payloads. The per-pixel index table is
//! packed little-endian into `ceil(slots/8)` bytes per pixel, where `slots`
//! is `k` for the k-grouped dealer, 4 for better3 and 1 for better2's table
//! `P`. A CRC-32 over every payload guards against edits.
//!
//! A better2 manifest contains the secret image in the clear.

use crate::better::{Better2Dealer, Better3Dealer};
use crate::dealer::{Dealer, SchemeKind};
use crate::error::{Error, Result};
use crate::evolving::EvolvingDealer;
use crate::image::BinaryImage;
use crate::pbm::{load_pbm, save_pbm, PbmVariant};
use base64::engine::general_purpose::STANDARD as B64;
use base64::Engine;
use serde::{Deserialize, Serialize};

pub const MANIFEST_VERSION: u32 = 1;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Manifest {
    pub version: u32,
    pub scheme: String,
    pub k: usize,
    pub n: usize,
    pub next_t: u64,
    pub seed: u64,
    /// `[height, width]`.
    pub dims: [usize; 2],
    pub shadows: Vec<String>,
    pub q_table: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub secret: Option<String>,
    /// CRC-32 of every share issued so far, in order.
    pub issued: Vec<u32>,
    pub checksum: u32,
}

fn slots(kind: SchemeKind, k: usize) -> usize {
    match kind {
        SchemeKind::KGrouped => k,
        SchemeKind::Better2 => 1,
        SchemeKind::Better3 => 4,
    }
}

fn pack_table(values: impl Iterator<Item = u64>, width: usize) -> Vec<u8> {
    let bytes = width.div_ceil(8);
    values.flat_map(|v| v.to_le_bytes().into_iter().take(bytes)).collect()
}

fn unpack_table(raw: &[u8], width: usize, pixels: usize) -> Result<Vec<u64>> {
    let bytes = width.div_ceil(8);
    if raw.len() != bytes * pixels {
        return Err(Error::Manifest(format!(
            "index table holds {} bytes, expected {}",
            raw.len(),
            bytes * pixels
        )));
    }
    Ok(raw
        .chunks(bytes)
        .map(|c| {
            let mut le = [0u8; 8];
            le[..c.len()].copy_from_slice(c);
            u64::from_le_bytes(le)
        })
        .collect())
}

fn decode_b64(text: &str, what: &str) -> Result<Vec<u8>> {
    B64.decode(text)
        .map_err(|e| Error::Manifest(format!("{what} is not valid base64: {e}")))
}

fn checksum(m: &Manifest, shadows: &[Vec<u8>], q: &[u8], secret: Option<&[u8]>) -> u32 {
    let mut h = crc32fast::Hasher::new();
    let header = format!(
        "{}|{}|{}|{}|{}|{}|{}|{}",
        m.version, m.scheme, m.k, m.n, m.next_t, m.seed, m.dims[0], m.dims[1]
    );
    h.update(header.as_bytes());
    for s in shadows {
        h.update(&(s.len() as u64).to_le_bytes());
        h.update(s);
    }
    h.update(q);
    if let Some(s) = secret {
        h.update(s);
    }
    for d in &m.issued {
        h.update(&d.to_le_bytes());
    }
    h.finalize()
}

impl Manifest {
    pub fn from_dealer(dealer: &Dealer) -> Self {
        let kind = dealer.kind();
        let (h, w) = dealer.dims();
        let (n, shadows, table, secret): (usize, Vec<&BinaryImage>, Vec<u8>, Option<&BinaryImage>) = match dealer {
            Dealer::KGrouped(d) => (
                d.n(),
                d.base_shadows().iter().collect(),
                pack_table(d.q_table().iter().copied(), d.k()),
                None,
            ),
            Dealer::Better2(d) => (
                2,
                Vec::new(),
                pack_table(d.p_table().iter().map(|&b| u64::from(b)), 1),
                Some(d.secret()),
            ),
            Dealer::Better3(d) => (
                4,
                d.base_shadows().iter().collect(),
                pack_table(d.p_table().iter().copied(), 4),
                None,
            ),
        };
        let raw_shadows: Vec<Vec<u8>> = shadows.iter().map(|s| save_pbm(s, PbmVariant::P4)).collect();
        let raw_secret = secret.map(|s| save_pbm(s, PbmVariant::P4));
        let mut m = Manifest {
            version: MANIFEST_VERSION,
            scheme: kind.tag().to_string(),
            k: dealer.k(),
            n,
            next_t: dealer.next_t(),
            seed: dealer.seed(),
            dims: [h, w],
            shadows: raw_shadows.iter().map(|s| B64.encode(s)).collect(),
            q_table: B64.encode(&table),
            secret: raw_secret.as_ref().map(|s| B64.encode(s)),
            issued: dealer.issued_digests().to_vec(),
            checksum: 0,
        };
        m.checksum = checksum(&m, &raw_shadows, &table, raw_secret.as_deref());
        m
    }

    pub fn into_dealer(self) -> Result<Dealer> {
        if self.version != MANIFEST_VERSION {
            return Err(Error::Version {
                found: self.version,
                expected: MANIFEST_VERSION,
            });
        }
        let kind: SchemeKind = self
            .scheme
            .parse()
            .map_err(|_| Error::Manifest(format!("unknown scheme tag `{}`", self.scheme)))?;
        let expected_k = match kind {
            SchemeKind::KGrouped => None,
            SchemeKind::Better2 => Some(2),
            SchemeKind::Better3 => Some(3),
        };
        if self.k < 2 || self.k > 64 || expected_k.is_some_and(|e| e != self.k) {
            return Err(Error::Manifest(format!("threshold k={} is invalid for {kind}", self.k)));
        }
        let [h, w] = self.dims;
        if h == 0 || w == 0 {
            return Err(Error::Manifest("image dimensions must be positive".into()));
        }

        let raw_shadows = self
            .shadows
            .iter()
            .map(|s| decode_b64(s, "shadow"))
            .collect::<Result<Vec<_>>>()?;
        let table = decode_b64(&self.q_table, "index table")?;
        let raw_secret = self.secret.as_deref().map(|s| decode_b64(s, "secret")).transpose()?;
        let found = checksum(&self, &raw_shadows, &table, raw_secret.as_deref());
        if found != self.checksum {
            return Err(Error::Checksum {
                expected: self.checksum,
                found,
            });
        }

        let decode_img = |raw: &[u8]| -> Result<BinaryImage> {
            let img = load_pbm(raw)?;
            if img.dims() != (h, w) {
                return Err(Error::Manifest(format!("stored image is {:?}, manifest says {:?}", img.dims(), (h, w))));
            }
            Ok(img)
        };
        let shadows = raw_shadows.iter().map(|r| decode_img(r)).collect::<Result<Vec<_>>>()?;
        let q = unpack_table(&table, slots(kind, self.k), h * w)?;

        Ok(match kind {
            SchemeKind::KGrouped => Dealer::KGrouped(EvolvingDealer::from_parts(
                self.k,
                self.n,
                self.next_t,
                self.seed,
                shadows,
                q,
                self.issued,
            )?),
            SchemeKind::Better2 => {
                let raw = raw_secret.ok_or_else(|| Error::Manifest("better2 manifest lacks the secret".into()))?;
                let p = q.into_iter().map(|v| u8::try_from(v).unwrap_or(u8::MAX)).collect();
                Dealer::Better2(Better2Dealer::from_parts(decode_img(&raw)?, p, self.next_t, self.seed, self.issued)?)
            }
            SchemeKind::Better3 => {
                Dealer::Better3(Better3Dealer::from_parts(shadows, q, self.next_t, self.seed, self.issued)?)
            }
        })
    }
}

/// Serializes a dealer to manifest JSON.
pub fn dealer_save(dealer: &Dealer) -> Vec<u8> {
    let mut out = serde_json::to_vec_pretty(&Manifest::from_dealer(dealer)).expect("manifest serializes");
    out.push(b'\n');
    out
}

/// Parses and validates a manifest.
pub fn dealer_load(bytes: &[u8]) -> Result<Dealer> {
    let m: Manifest = serde_json::from_slice(bytes)?;
    m.into_dealer()
}
