//! kSAT mode: minimize the functional for a supplied covariance and convert
//! to `C_k = B(k)/2^k`. Without a model file only the conversions are shown.
//!
//!     cargo run --release --example ksat_parisi -- 3 model.json

use kxor_bounds::parisi::{ksat_constant, ksat_fraction, ksat_mode, ModelConfig};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let k: usize = args.first().map(|s| s.parse()).transpose()?.unwrap_or(3);
    match args.get(1) {
        Some(path) => {
            let model = ModelConfig::read(path)?;
            let row = ksat_mode(k, &model.xi, model.pieces, &model.settings(), 0)?;
            println!("k = {k}: B = {:.6}, C = {:.6}", row.b, row.c);
        }
        None => {
            println!("no model file given; conversions only");
            let b = 2.2176;
            let c = ksat_constant(k, b);
            println!("B = {b} -> C = {c:.6}");
            for alpha in [10.0, 100.0, 1000.0] {
                println!("α = {alpha:6}: fraction ~ {:.6}", ksat_fraction(k, c, alpha)?);
            }
        }
    }
    Ok(())
}
