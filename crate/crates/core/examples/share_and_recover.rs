//! Share a secret with the (3,∞) random-grid scheme and look at what
//! different stacks reveal.

use evcs::image::patterns;
use evcs::{empirical_contrast, save_pbm, stack_or, stack_xor, EvolvingDealer, PbmVariant};

fn main() -> evcs::Result<()> {
    let secret = patterns::half_and_half(256, 256)?;
    let (mut dealer, mut shares) = EvolvingDealer::init(&secret, 3, 3, 42)?;
    for _ in 0..6 {
        shares.push(dealer.extend()?);
    }

    let cases: [(&str, Vec<usize>); 4] = [
        ("one group, OR", vec![0, 1, 2]),
        ("one group, XOR", vec![0, 1, 2]),
        ("three groups, OR", vec![0, 3, 6]),
        ("two shares only, OR", vec![0, 4]),
    ];
    for (label, idx) in &cases {
        let picked: Vec<_> = idx.iter().map(|&i| &shares[i]).collect();
        let img = if label.contains("XOR") {
            stack_xor(picked)?
        } else {
            stack_or(picked)?
        };
        let r = empirical_contrast(&img, &secret)?;
        println!("{label:<22} alpha={:+.4} (l0={:.3}, l1={:.3})", r.alpha, r.l0, r.l1);
    }

    let out = std::env::temp_dir().join("evcs_share_1.pbm");
    std::fs::write(&out, save_pbm(&shares[0], PbmVariant::P4))?;
    println!("first share written to {}", out.display());
    Ok(())
}
