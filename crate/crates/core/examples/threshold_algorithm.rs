//! Threshold algorithm: exact fractions, the optimal threshold, the limit
//! constant and a Monte Carlo run on a sampled instance.
//!
//!     cargo run --release --example threshold_algorithm -- 3 4

use kxor_bounds::instances::generate_regular_triangle_free;
use kxor_bounds::threshold::{exact_f, f_profile, large_d_constant_threshold, monte_carlo_run, optimize_mu};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let args: Vec<usize> = std::env::args().skip(1).map(|s| s.parse()).collect::<Result<_, _>>()?;
    let (k, d) = (*args.first().unwrap_or(&3), *args.get(1).unwrap_or(&4));

    for (mu, f) in f_profile(k, d).iter().enumerate() {
        println!("k={k} D={d} μ={mu}: F = {f:.8}");
    }
    let best = optimize_mu(k, d)?;
    println!("best μ = {}, F = {:.8}", best.mu, best.f);

    let lim = large_d_constant_threshold(k)?;
    println!("limit: C = {:.6}, α = {:.6}", lim.c, lim.alpha);

    let n = (200 * k..).find(|n| n * (d + 1) % k == 0).unwrap_or(200 * k);
    let inst = generate_regular_triangle_free(k, d + 1, n, 0)?;
    let mc = monte_carlo_run(&inst, best.mu, 200_000, 0)?;
    println!(
        "Monte Carlo on n={n}: {:.6} ± {:.1e} (exact {:.6})",
        mc.mean,
        mc.std_error,
        exact_f(k, d, best.mu)?
    );
    Ok(())
}
