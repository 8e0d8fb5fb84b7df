//! Single-pixel primitives: the `(s,k,k)` XOR kernel, the generalized
//! random-grid bit, and the stacking transmissions of a kernel output.

use crate::error::{param, Result};
use crate::rational::{int, Rational};
use crate::rng::PixelRng;
use num_bigint::BigInt;

/// The bits `b_1..b_k` handed to the `k` participants for one pixel.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BitVector(Vec<u8>);

impl BitVector {
    pub fn new(bits: Vec<u8>) -> Result<Self> {
        if bits.iter().any(|&b| b > 1) {
            return Err(param("bit vector entries must be 0 or 1"));
        }
        Ok(Self(bits))
    }

    pub fn bits(&self) -> &[u8] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn xor(&self) -> u8 {
        self.0.iter().fold(0, |a, b| a ^ b)
    }

    pub fn zeros(&self) -> usize {
        self.0.iter().filter(|&&b| b == 0).count()
    }
}

/// Shares secret bit `s` among `k` holders. Consumes exactly `k-1` coins
/// from `rng`.
pub fn share_pixel_kk(s: u8, k: usize, rng: &mut PixelRng) -> Result<BitVector> {
    if k < 2 {
        return Err(param(format!("threshold k must be at least 2, got {k}")));
    }
    if s > 1 {
        return Err(param(format!("secret bit must be 0 or 1, got {s}")));
    }
    let mut out = vec![0u8; k];
    fill_kk(s, &mut out, rng);
    Ok(BitVector(out))
}

/// Unchecked body of [`share_pixel_kk`], writing into `out`.
pub(crate) fn fill_kk(s: u8, out: &mut [u8], rng: &mut PixelRng) {
    let (last, coins) = out.split_last_mut().expect("k >= 2");
    let mut acc = s;
    for b in coins {
        *b = rng.coin();
        acc ^= *b;
    }
    *last = acc;
}

#[cfg(test)]
/// Same as [`fill_kk`] but with the coins supplied as the low bits of
/// `coins`; used for exhaustive enumeration.
pub(crate) fn kk_from_coins(s: u8, k: usize, coins: u64) -> Vec<u8> {
    let mut out: Vec<u8> = (0..k - 1).map(|i| ((coins >> i) & 1) as u8).collect();
    out.push(out.iter().fold(s, |a, b| a ^ b));
    out
}

/// `g(lambda)`: 0 with probability `lambda`.
pub fn random_bit(lambda: f64, rng: &mut PixelRng) -> Result<u8> {
    if !(lambda > 0.0 && lambda < 1.0) {
        return Err(param(format!("lambda must lie in (0,1), got {lambda}")));
    }
    Ok(rng.bit(lambda))
}

/// Light transmission of OR-stacking `t` of the `k` kernel bits, on a white
/// and on a black secret pixel.
pub fn stack_transmission_kk(k: usize, t: usize) -> Result<(Rational, Rational)> {
    if k < 2 || t == 0 || t > k {
        return Err(param(format!("need 1 <= t <= k with k >= 2, got k={k}, t={t}")));
    }
    let pow = |e: usize| Rational::new(BigInt::from(1), BigInt::from(1) << e);
    if t < k {
        Ok((pow(t), pow(t)))
    } else {
        Ok((pow(k - 1), int(0)))
    }
}

/// Number of the `2^{k-1}` equiprobable kernel outputs for secret `s` that
/// contain exactly `i` zeros.
pub fn zero_count(s: u8, k: usize, i: usize) -> BigInt {
    if i > k || (k - i) % 2 != usize::from(s) {
        return BigInt::from(0);
    }
    crate::rational::binomial(k as u64, i as u64)
}
