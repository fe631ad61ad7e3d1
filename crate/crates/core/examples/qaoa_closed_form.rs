//! Depth-1 QAOA: closed form against the statevector, finite-D optima and
//! the large-degree constants.
//!
//!     cargo run --release --example qaoa_closed_form

use std::f64::consts::PI;

use kxor_bounds::instances::generate_regular_triangle_free;
use kxor_bounds::qaoa::{instance_closed_form, large_d_constant, optimize_finite_d, statevector_expectation};
use kxor_bounds::QaoaAngles;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let angles = QaoaAngles::new(PI / 4.0, PI / 8.0);
    let inst = generate_regular_triangle_free(3, 3, 20, 1)?;
    println!(
        "k=3, 3-regular, n=20 at (π/4, π/8): closed form {:.12}, statevector {:.12}",
        instance_closed_form(&inst, angles)?,
        statevector_expectation(&inst, angles)?
    );

    println!("\n k  D   fraction   gamma      beta");
    for (k, d) in [(2, 1), (2, 2), (3, 1), (3, 5), (4, 10), (7, 50)] {
        let r = optimize_finite_d(k, d)?;
        println!("{k:2} {d:3}  {:.7}  {:.7}  {:.7}", r.fraction, r.angles.gamma, r.angles.beta);
    }

    println!("\n k  C          t=γ√D      beta");
    for k in 2..=19 {
        let r = large_d_constant(k)?;
        println!("{k:2}  {:.7}  {:.7}  {:.7}", r.c, r.t, r.beta);
    }
    Ok(())
}
