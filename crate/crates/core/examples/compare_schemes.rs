//! Rank the schemes by limit contrast and by contrast over a finite range.

use evcs::theory::curve::{compare_curves, ContrastCurve};

fn main() -> evcs::Result<()> {
    let pairs = [
        (ContrastCurve::better2(), ContrastCurve::rgvcs_or(2)?),
        (ContrastCurve::better3(), ContrastCurve::rgvcs_or(3)?),
        (ContrastCurve::rgvcs_xor(3)?, ContrastCurve::rgvcs_or(3)?),
        (ContrastCurve::rgvcs_or(3)?, ContrastCurve::rgvcs_or(3)?),
    ];
    for (a, b) in &pairs {
        let c = compare_curves(a, b, 200)?;
        println!(
            "{:<14} vs {:<14} {:<17} (limits {:.4} / {:.4}, A ahead at {} of {} points)",
            a.name(),
            b.name(),
            c.classification.to_string(),
            a.limit().to_f64(),
            b.limit().to_f64(),
            c.witnesses.len(),
            c.checked.1 - c.checked.0 + 1
        );
    }
    Ok(())
}
