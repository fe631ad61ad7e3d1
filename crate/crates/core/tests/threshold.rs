use kxor_bounds::cli::verify::monte_carlo_size;
use kxor_bounds::instances::generate_regular_triangle_free;
use kxor_bounds::threshold::{
    exact_f, f_profile, finite_constant, large_d_constant_threshold, monte_carlo_run, monte_carlo_run_with, optimize_mu, quantities,
    BinomialTails, MonteCarloOptions,
};
use kxor_bounds::{Clause, XorInstance};
use proptest::prelude::*;

#[test]
fn exact_and_log_space_tails_agree() {
    // both branches on either side of the cutoff
    for d in [4000, 4096, 4097, 5000] {
        let t = BinomialTails::new(d);
        assert!((t.g[d / 2] - t.g[d / 2 - 1] - t.delta[d / 2]).abs() < 1e-12);
        assert!((t.g[d] - 1.0).abs() < 1e-8);
    }
    // C(1024, 512)/2^1024, computed independently
    assert!((BinomialTails::new(1024).delta[512] - 0.024927805892979545).abs() < 1e-16);
}

#[test]
fn odd_k_profile_is_mirror_symmetric() {
    for k in [3, 5, 9] {
        for d in 1..=30 {
            let p = f_profile(k, d);
            for mu in 0..=d {
                assert!((p[mu] - p[d - mu]).abs() < 1e-13, "k={k} d={d} mu={mu}");
            }
        }
    }
}

#[test]
fn ties_go_to_the_smaller_threshold() {
    let best = optimize_mu(3, 4).unwrap();
    assert_eq!(best.mu, 1);
    assert_eq!(best.f, exact_f(3, 4, 3).unwrap());
}

#[test]
fn finite_constants_converge() {
    for k in 2..=8 {
        let lim = large_d_constant_threshold(k).unwrap().c;
        assert!((finite_constant(k, 10_000).unwrap() - lim).abs() <= 0.01, "k={k}");
    }
}

#[test]
fn monte_carlo_matches_exact() {
    for (k, d) in [(2, 2), (3, 3), (4, 1)] {
        let inst = generate_regular_triangle_free(k, d + 1, monte_carlo_size(k, d), 3).unwrap();
        for mu in 0..=d {
            let r = monte_carlo_run(&inst, mu, 100_000, 9).unwrap();
            let f = exact_f(k, d, mu).unwrap();
            assert!((r.mean - f).abs() <= 4.0 * r.std_error + 1e-12, "k={k} d={d} mu={mu}: {} vs {f}", r.mean);
        }
    }
}

#[test]
fn monte_carlo_is_deterministic_and_block_invariant_in_seed() {
    let inst = generate_regular_triangle_free(3, 3, 60, 1).unwrap();
    let a = monte_carlo_run(&inst, 1, 5000, 4).unwrap();
    assert_eq!(a, monte_carlo_run(&inst, 1, 5000, 4).unwrap());
    assert_ne!(a.mean, monte_carlo_run(&inst, 1, 5000, 5).unwrap().mean);
}

#[test]
fn missing_neighbours_can_be_simulated() {
    // a single clause: every member has degree 1, simulate degree 3
    let inst = XorInstance::new(3, 3, vec![Clause::new(vec![0, 1, 2], 1)]).unwrap();
    let opts = MonteCarloOptions { simulate_missing_to: Some(3), ..Default::default() };
    let r = monte_carlo_run_with(&inst, 1, 400_000, 2, &opts).unwrap();
    let f = exact_f(3, 2, 1).unwrap();
    assert!((r.mean - f).abs() <= 4.0 * r.std_error, "{} vs {f}", r.mean);
}

proptest! {
    #[test]
    fn one_minus_2g_plus_2delta_is_one_minus_2r(d in 0usize..=64, frac in 0.0..=1.0f64) {
        let mu = ((d as f64) * frac).round() as usize;
        let q = quantities(d, mu).unwrap();
        let t = BinomialTails::new(d);
        prop_assert!((t.one_minus_2g[mu] + 2.0 * q.delta - (1.0 - 2.0 * q.r)).abs() < 1e-15);
        prop_assert!((q.g + q.h - 1.0).abs() < 1e-15);
    }

    #[test]
    fn k2_closed_form(d in 0usize..=64, frac in 0.0..=1.0f64) {
        let mu = ((d as f64) * frac).round() as usize;
        let q = quantities(d, mu).unwrap();
        let want = 0.5 + q.delta * (1.0 - 2.0 * q.g + q.delta);
        prop_assert!((exact_f(2, d, mu).unwrap() - want).abs() < 1e-15);
    }

    #[test]
    fn fraction_is_a_probability(k in 2usize..12, d in 0usize..200, frac in 0.0..=1.0f64) {
        let mu = ((d as f64) * frac).round() as usize;
        let f = exact_f(k, d, mu).unwrap();
        prop_assert!((0.0..=1.0).contains(&f));
    }
}
