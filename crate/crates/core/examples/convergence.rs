//! How fast each scheme's contrast settles to its limit as participants join.

use evcs::theory::curve::{find_convergence_n, ContrastCurve};

fn main() -> evcs::Result<()> {
    println!("{:<18} {:>7} {:>5} {:>9} {:>9}", "curve", "eps", "n", "alpha(n)", "limit");
    let mut curves = Vec::new();
    for k in 2..=6 {
        curves.push((ContrastCurve::rgvcs_or(k)?, 0.005));
    }
    for k in 2..=6 {
        curves.push((ContrastCurve::rgvcs_xor(k)?, 0.05));
    }
    curves.push((ContrastCurve::better2(), 0.005));
    curves.push((ContrastCurve::better3(), 0.005));
    for (curve, eps) in curves {
        let n = find_convergence_n(&curve, eps)?;
        println!(
            "{:<18} {:>7} {:>5} {:>9.5} {:>9.5}",
            curve.name(),
            eps,
            n,
            curve.at(n)?.to_f64(),
            curve.limit().to_f64()
        );
    }
    Ok(())
}
