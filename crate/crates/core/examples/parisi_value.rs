//! Minimize the zero-temperature Parisi functional for the pure k-spin model.
//!
//!     cargo run --release --example parisi_value -- 3 2
//!     cargo run --release --example parisi_value -- 15 2 --quick

use std::time::Instant;

use kxor_bounds::parisi::{minimize_parisi, optimal_fraction_kxor, parisi_upper_bound_value, MixedXi, ParisiSettings};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let k: u32 = args.first().map(|s| s.parse()).transpose()?.unwrap_or(2);
    let pieces: usize = args.get(1).map(|s| s.parse()).transpose()?.unwrap_or(2);
    let settings = if args.iter().any(|a| a == "--quick") { ParisiSettings::quick() } else { ParisiSettings::default() };

    let start = Instant::now();
    let r = minimize_parisi(&MixedXi::pure(k)?, pieces, &settings, 0)?;
    println!("P({k}) = {:.6}  ({} pieces, grid {}, {:.1?})", r.value, pieces, settings.grid, start.elapsed());
    println!("breakpoints {:?}", r.order.breakpoints());
    println!("values      {:?}", r.order.values());
    println!("evaluations {}, history {:?}", r.diagnostics.evaluations, r.diagnostics.history);
    if let Some(w) = &r.diagnostics.warning {
        println!("warning: {w}");
    }
    println!("sqrt(2 log 2) = {:.6}", parisi_upper_bound_value());
    for d in [10, 100, 1000] {
        println!("D = {d:5}: optimal fraction ~ {:.6}", optimal_fraction_kxor(k as usize, d, r.value)?);
    }
    Ok(())
}
