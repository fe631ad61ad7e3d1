//! QAOA, threshold and Parisi upper bound side by side as the degree grows.
//! Parisi values are computed in quick mode.
//!
//!     cargo run --release --example compare_algorithms -- 2 5

use kxor_bounds::parisi::{minimize_parisi, optimal_fraction_kxor, MixedXi, ParisiSettings};
use kxor_bounds::qaoa::{large_d_constant, optimize_finite_d};
use kxor_bounds::threshold::{large_d_constant_threshold, optimize_mu};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let args: Vec<usize> = std::env::args().skip(1).map(|s| s.parse()).collect::<Result<_, _>>()?;
    let (lo, hi) = (*args.first().unwrap_or(&2), *args.get(1).unwrap_or(&5));

    for k in lo..=hi {
        let p = minimize_parisi(&MixedXi::pure(k as u32)?, 2, &ParisiSettings::quick(), 0)?.value;
        println!("k = {k}, P(k) = {p:.5}");
        println!("     D      qaoa   threshold   upper");
        for d in [10, 100, 1000] {
            println!(
                "{d:6}  {:.6}  {:.6}  {:.6}",
                optimize_finite_d(k, d)?.fraction,
                optimize_mu(k, d)?.f,
                optimal_fraction_kxor(k, d, p)?
            );
        }
        let (q, t) = (large_d_constant(k)?.c, large_d_constant_threshold(k)?.c);
        println!("   inf  C = {q:.5}  C = {t:.5}  C = {:.5}  ({} leads)", p / 2.0 * (k as f64).sqrt(), if q > t { "QAOA" } else { "threshold" });
    }
    Ok(())
}
