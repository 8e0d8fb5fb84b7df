//! The two improved evolving schemes against their theoretical contrast.

use evcs::image::patterns;
use evcs::recovery::select_by_partition;
use evcs::theory::better::{better2_alpha_partition, better3_alpha_partition};
use evcs::theory::partition::Partition;
use evcs::{empirical_contrast, stack_or, Dealer, SchemeKind, ShareGroupLayout};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn main() -> evcs::Result<()> {
    let secret = patterns::half_and_half(512, 512)?;
    let mut rng = ChaCha8Rng::seed_from_u64(3);

    for (kind, k, n, parts) in [
        (SchemeKind::Better2, 2, 8, &["2", "1,1"][..]),
        (SchemeKind::Better3, 3, 12, &["3", "2,1", "1,1,1"][..]),
    ] {
        let (dealer, shares) = Dealer::init(kind, &secret, k, n, 11)?;
        let layout = ShareGroupLayout::new(dealer.group_size(), shares.len())?;
        println!("{kind} with {} shares in groups of {}", shares.len(), layout.group_size());
        for p in parts {
            let mu: Partition = p.parse()?;
            let sel = select_by_partition(&layout, &mu, &mut rng)?;
            let stacked = stack_or(sel.indices.iter().map(|&i| &shares[i - 1]))?;
            let measured = empirical_contrast(&stacked, &secret)?;
            let theory = match kind {
                SchemeKind::Better2 => better2_alpha_partition(&mu)?,
                _ => evcs::rational::to_f64(&better3_alpha_partition(&mu)?),
            };
            println!(
                "  {mu:<8} shares {:?}: measured {:.4}, theory {:.4}",
                sel.indices, measured.alpha, theory
            );
        }
    }
    Ok(())
}
