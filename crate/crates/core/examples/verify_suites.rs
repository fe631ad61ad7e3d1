//! Run one verification suite and print each named check.
//!
//!     cargo run --release --example verify_suites -- qaoa-oracle

use clap::ValueEnum;
use kxor_bounds::cli::verify::{run_suite, Suite};

fn main() {
    let name = std::env::args().nth(1).unwrap_or_else(|| "qaoa-oracle".into());
    let suite = Suite::from_str(&name, true).unwrap_or_else(|e| {
        eprintln!("{e}");
        std::process::exit(2)
    });
    let report = run_suite(suite, 0);
    for c in &report.checks {
        println!("{} {}: {}", if c.passed { "PASS" } else { "FAIL" }, c.name, c.detail);
    }
    std::process::exit(if report.passed { 0 } else { 1 });
}
