//! XOR of one complete group gives back the secret bit for bit; mixing
//! groups does not.

use evcs::image::patterns;
use evcs::{empirical_contrast, share_kgrouped, stack_xor};

fn main() -> evcs::Result<()> {
    let secret = patterns::checkerboard(128, 128)?;
    for k in 2..=5 {
        let shares = share_kgrouped(&secret, k, 2 * k, 99)?.shadows;
        let group = stack_xor(&shares[..k])?;
        let mixed = stack_xor(&shares[1..=k])?;
        let alpha = empirical_contrast(&mixed, &secret)?.alpha;
        println!(
            "k={k}: first group exact={}, shares 2..={} alpha={alpha:.4}",
            group == secret,
            k + 1
        );
    }
    Ok(())
}
