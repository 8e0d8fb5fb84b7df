//! Exact per-partition contrast, the occurrence weights of each partition,
//! and the distribution of distinct kernel indices behind them.

use evcs::rational::display;
use evcs::theory::matrix::pr_distinct;
use evcs::theory::or_contrast::{alpha_or_partition, sigma_or};
use evcs::theory::partition::{group_shape, valid_partitions, weight_partition};
use evcs::theory::xor_contrast::alpha_xor_partition;

fn main() -> evcs::Result<()> {
    let (k, n) = (3, 10);
    let (m, u) = group_shape(k, n);
    println!("k={k}, n={n}: {m} groups, last holds {u}");
    println!("{:<9} {:>9} {:>8} {:>8}  Pr(d distinct), d=1..k", "partition", "weight", "OR", "XOR");
    for mu in valid_partitions(k, k, m, u)? {
        let pr: Vec<String> = pr_distinct(&mu, k)?[1..].iter().map(display).collect();
        println!(
            "{:<9} {:>9} {:>8} {:>8}  {}",
            mu.to_string(),
            display(&weight_partition(&mu, k, n, k)?),
            display(&alpha_or_partition(&mu, k)?),
            display(&alpha_xor_partition(&mu, k)?),
            pr.join(" ")
        );
    }
    println!("weighted OR contrast: {}", display(&sigma_or(k, n, k)?));
    Ok(())
}
