//! Sample a regular triangle-free instance and solve it exactly.
//!
//!     cargo run --release --example generate_instance -- 3 2 15 7

use kxor_bounds::instances::{brute_force_optimum, check_triangle_free, generate_regular_triangle_free, to_json_string};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let args: Vec<usize> = std::env::args().skip(1).map(|s| s.parse()).collect::<Result<_, _>>()?;
    let (k, degree, n) = (*args.first().unwrap_or(&3), *args.get(1).unwrap_or(&2), *args.get(2).unwrap_or(&15));
    let seed = args.get(3).copied().unwrap_or(0) as u64;

    let inst = generate_regular_triangle_free(k, degree, n, seed)?;
    println!("k = {k}, degree = {degree}, n = {n}, clauses = {}, triangle-free: {}", inst.num_clauses(), check_triangle_free(&inst));
    if n <= 24 {
        let opt = brute_force_optimum(&inst)?;
        println!("optimum {} = {:.6}", opt.fraction, opt.fraction.value());
        println!("flipped signs optimum {}", brute_force_optimum(&inst.flip_all_signs())?.fraction);
    }
    if n <= 12 {
        print!("{}", to_json_string(&inst));
    }
    Ok(())
}
