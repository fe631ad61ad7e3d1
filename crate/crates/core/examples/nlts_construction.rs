//! Partial-Z2 instances built from an inner graph: ground states, the
//! symmetry check and the obstruction bounds.
//!
//!     cargo run --release --example nlts_construction -- 7

use kxor_bounds::nlts::{construct_nlts, fraction_bound, ground_states, qaoa_depth_bound_log2, verify_partial_z2, SimpleGraph, DEFAULT_R};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let n: usize = std::env::args().nth(1).map(|s| s.parse()).transpose()?.unwrap_or(6);
    let inner = SimpleGraph::cycle(n)?;
    let nl = construct_nlts(&inner, DEFAULT_R, 0)?;
    println!("C{n}: {} variables, {} clauses, sources {:?}, sinks {:?}", nl.instance.n(), nl.instance.num_clauses(), nl.sources, nl.sinks);
    println!("partial Z2 symmetry: {}", verify_partial_z2(&nl));

    let report = ground_states(&nl)?;
    println!("optimum {}, {} optimal assignments, {} of the claimed form", report.fraction, report.optimal, report.of_claimed_form);
    for x in &report.assignments {
        println!("  {x:?}");
    }

    for log2_n in [20.0, 40.0, 100.0] {
        println!("n = 2^{log2_n}: depth bound {:.6}", qaoa_depth_bound_log2(log2_n, 2)?.value);
    }
    println!("fraction bound at D=3: {:.6}", fraction_bound(3, 0.0)?);
    Ok(())
}
