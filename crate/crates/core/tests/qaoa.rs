use std::f64::consts::PI;

use kxor_bounds::cli::verify::{hypergraph_triangle, random_sign_gap, ORACLE_CONFIGS};
use kxor_bounds::instances::{check_triangle_free, generate_regular_triangle_free, DegreeProfile};
use kxor_bounds::qaoa::{
    closed_form_regular, closed_form_regular_complex, closed_form_triangle_free, dense_scan_optimum, instance_closed_form, large_d_constant,
    optimize_finite_d, stationarity_residual, QaoaSimulator,
};
use kxor_bounds::{Clause, QaoaAngles, XorInstance};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

#[test]
fn closed_form_matches_statevector_on_regular_instances() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let mut pairs = 0;
    for (i, &(k, degree, n)) in ORACLE_CONFIGS.iter().enumerate() {
        let inst = generate_regular_triangle_free(k, degree, n, 100 + i as u64).unwrap();
        let sim = QaoaSimulator::new(&inst).unwrap();
        for _ in 0..21 {
            let a = QaoaAngles::new(rng.random_range(0.0..PI), rng.random_range(0.0..PI));
            let sv = sim.expectation(a);
            assert!((sv - 0.5 - closed_form_regular(k, degree - 1, a)).abs() <= 1e-9, "k={k} n={n} {a:?}");
            assert!((sv - instance_closed_form(&inst, a).unwrap()).abs() <= 1e-9);
            pairs += 1;
        }
    }
    assert!(pairs >= 100);
}

#[test]
fn irregular_triangle_free_instance_matches_per_clause() {
    // a path of three 3-clauses plus a pendant clause: triangle-free, degrees 1 and 2
    let cs = [vec![0, 1, 2], vec![2, 3, 4], vec![4, 5, 6], vec![1, 7, 8]];
    let inst = XorInstance::new(3, 9, cs.iter().zip([1, -1, -1, 1]).map(|(v, s)| Clause::new(v.clone(), s)).collect()).unwrap();
    assert!(check_triangle_free(&inst));
    let sim = QaoaSimulator::new(&inst).unwrap();
    let profile = DegreeProfile::of(&inst);
    for a in [QaoaAngles::new(0.3, 0.2), QaoaAngles::new(1.1, 2.0)] {
        for (ci, got) in sim.clause_expectations(a).into_iter().enumerate() {
            // signs drop out on triangle-free instances
            let want = closed_form_triangle_free(&profile.other_degrees(&inst, ci), a);
            assert!((got - want).abs() < 1e-12, "clause {ci}: {got} vs {want}");
        }
    }
}

#[test]
fn random_signs_average_to_the_triangle_free_form() {
    let inst = hypergraph_triangle();
    assert!(!check_triangle_free(&inst));
    for a in [QaoaAngles::new(0.61, 0.27), QaoaAngles::new(2.2, 1.3)] {
        assert!(random_sign_gap(&inst, a).unwrap() <= 1e-9);
    }
    let k3 = XorInstance::new(2, 3, vec![Clause::new(vec![0, 1], 1), Clause::new(vec![1, 2], 1), Clause::new(vec![0, 2], 1)]).unwrap();
    assert!(random_sign_gap(&k3, QaoaAngles::new(0.4, 0.9)).unwrap() <= 1e-9);
}

#[test]
fn ring_at_quarter_angles() {
    let a = QaoaAngles::new(PI / 4.0, PI / 8.0);
    assert!((closed_form_regular(2, 1, a) - 0.25).abs() < 1e-15);
}

#[test]
fn finite_d_optimum_is_stationary() {
    for (k, d) in [(2, 1), (2, 7), (3, 3), (4, 20), (9, 100)] {
        let r = optimize_finite_d(k, d).unwrap();
        let h = 1e-5;
        let f = |g: f64, b: f64| closed_form_regular(k, d, QaoaAngles::new(g, b));
        let (g, b) = (r.angles.gamma, r.angles.beta);
        assert!(((f(g + h, b) - f(g - h, b)) / (2.0 * h)).abs() < 1e-6, "k={k} d={d}");
        assert!(((f(g, b + h) - f(g, b - h)) / (2.0 * h)).abs() < 1e-6, "k={k} d={d}");
        assert!(stationarity_residual(k, d, r.angles) < 1e-6);
    }
}

#[test]
fn finite_d_optimum_beats_dense_scan() {
    for (k, d) in [(2, 2), (3, 1), (3, 4), (5, 2)] {
        let (_, scan) = dense_scan_optimum(k, d, 400);
        assert!(optimize_finite_d(k, d).unwrap().e1 >= scan - 1e-12, "k={k} d={d}");
    }
}

#[test]
fn k3_lower_degrees_do_no_worse() {
    for d in 1..=6 {
        let r = optimize_finite_d(3, d).unwrap();
        let base = closed_form_regular(3, d, r.angles);
        for a in 0..=d {
            for b in 0..=d {
                for c in 0..=d {
                    assert!(closed_form_triangle_free(&[a, b, c], r.angles) >= base - 1e-15, "{d}: {a} {b} {c}");
                }
            }
        }
    }
}

#[test]
fn limit_constant_increases_with_k() {
    let cs: Vec<f64> = (2..=30).map(|k| large_d_constant(k).unwrap().c).collect();
    assert!(cs.windows(2).all(|w| w[1] > w[0]));
}

#[test]
fn finite_d_approaches_limit() {
    for k in [2, 3, 6] {
        let c = large_d_constant(k).unwrap().c;
        let d = 20_000;
        let finite = (optimize_finite_d(k, d).unwrap().e1) * (d as f64).sqrt();
        assert!((finite - c).abs() < 5e-3, "k={k}: {finite} vs {c}");
    }
}

proptest! {
    #[test]
    fn complex_residue_vanishes(k in 2usize..30, d in 0usize..200, g in 0.0..PI, b in 0.0..PI) {
        prop_assert!(closed_form_regular_complex(k, d, QaoaAngles::new(g, b)).im.abs() < 1e-13);
    }

    #[test]
    fn k2_reduction(d in 0usize..50, g in 0.0..PI, b in 0.0..PI) {
        let a = QaoaAngles::new(g, b);
        let want = a.s() * a.p() * a.q() * a.c().powi(d as i32);
        prop_assert!((closed_form_regular(2, d, a) - want).abs() < 1e-14);
    }

    #[test]
    fn regular_is_triangle_free_special_case(k in 2usize..8, d in 0usize..20, g in 0.0..PI, b in 0.0..PI) {
        let a = QaoaAngles::new(g, b);
        prop_assert!((closed_form_regular(k, d, a) - closed_form_triangle_free(&vec![d; k], a)).abs() < 1e-12);
    }

    #[test]
    fn expectation_is_bounded(k in 2usize..8, d in 0usize..20, g in 0.0..PI, b in 0.0..PI) {
        prop_assert!(closed_form_regular(k, d, QaoaAngles::new(g, b)).abs() <= 0.5 + 1e-15);
    }
}
