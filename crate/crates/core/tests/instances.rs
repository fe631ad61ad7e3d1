use kxor_bounds::instances::{
    all_optima, assignment_from_mask, brute_force_optimum, check_triangle_free, from_json_str, generate_regular_triangle_free, read_instance,
    to_json_string, DegreeProfile,
};
use kxor_bounds::{Clause, XorInstance};
use proptest::prelude::*;
use std::path::Path;

fn fixture() -> XorInstance {
    read_instance(Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures/k3_deg2_n15_seed7.json")).unwrap()
}

/// Arbitrary k-uniform instance on at most 12 variables.
fn arb_instance() -> impl Strategy<Value = XorInstance> {
    (2usize..=4, 5usize..=12).prop_flat_map(|(k, n)| {
        let clause = (proptest::sample::subsequence((0..n).collect::<Vec<_>>(), k), prop_oneof![Just(1i8), Just(-1i8)]);
        proptest::collection::vec(clause, 1..12).prop_filter_map("duplicate clauses", move |cs| {
            XorInstance::new(k, n, cs.into_iter().map(|(v, s)| Clause::new(v, s)).collect()).ok()
        })
    })
}

#[test]
fn fixture_optimum_matches_independent_enumeration() {
    // 9/10 computed by a separate enumeration script
    let opt = brute_force_optimum(&fixture()).unwrap();
    assert_eq!((opt.fraction.satisfied, opt.fraction.total), (9, 10));
}

#[test]
fn generator_reproduces_fixture() {
    assert_eq!(generate_regular_triangle_free(3, 2, 15, 7).unwrap(), fixture());
}

#[test]
fn generated_instances_are_regular_and_triangle_free() {
    for (k, degree, n, seed) in [(2, 3, 16, 0), (3, 3, 20, 1), (4, 2, 20, 2), (3, 5, 60, 3), (5, 3, 100, 4)] {
        let inst = generate_regular_triangle_free(k, degree, n, seed).unwrap();
        assert_eq!(DegreeProfile::of(&inst).regular_degree(), Some(degree), "{k} {degree} {n}");
        assert!(check_triangle_free(&inst));
        assert_eq!(inst.num_clauses(), n * degree / k);
    }
}

#[test]
fn generator_rejects_impossible_sizes() {
    assert!(generate_regular_triangle_free(3, 2, 10, 0).is_err());
    assert!(generate_regular_triangle_free(1, 2, 10, 0).is_err());
}

#[test]
fn maxcut_on_triangle() {
    let k3 = XorInstance::new(2, 3, vec![Clause::new(vec![0, 1], -1), Clause::new(vec![1, 2], -1), Clause::new(vec![0, 2], -1)]).unwrap();
    assert_eq!(k3.evaluate_fraction(&[1, 1, -1]).unwrap(), 2.0 / 3.0);
    assert!(brute_force_optimum(&k3).unwrap().fraction.same_ratio(2, 3));
}

#[test]
fn malformed_json_is_a_parse_error() {
    let err = from_json_str(r#"{"k": 3, "n": 4, "clauses": [{"vars": [0, 1], "sign": 1}]}"#, Path::new("bad.json")).unwrap_err();
    assert!(err.to_string().contains("bad.json"), "{err}");
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn optimum_dominates_every_assignment(inst in arb_instance(), mask in any::<u64>()) {
        let x = assignment_from_mask(mask, inst.n());
        let opt = brute_force_optimum(&inst).unwrap();
        prop_assert!(opt.fraction.value() >= inst.evaluate_fraction(&x).unwrap());
        prop_assert_eq!(inst.satisfied_count(&opt.assignment).unwrap(), opt.fraction.satisfied);
    }

    #[test]
    fn flipping_signs_complements(inst in arb_instance(), mask in any::<u64>()) {
        let x = assignment_from_mask(mask, inst.n());
        let f = inst.evaluate_fraction(&x).unwrap();
        let g = inst.flip_all_signs().evaluate_fraction(&x).unwrap();
        prop_assert!((f + g - 1.0).abs() < 1e-12);
    }

    #[test]
    fn json_round_trip(inst in arb_instance()) {
        let text = to_json_string(&inst);
        let back = from_json_str(&text, Path::new("mem")).unwrap();
        prop_assert_eq!(&back, &inst);
        prop_assert_eq!(to_json_string(&back), text);
    }

    #[test]
    fn all_optima_agree_with_optimum(inst in arb_instance()) {
        let (frac, optima) = all_optima(&inst, 24).unwrap();
        prop_assert_eq!(frac, brute_force_optimum(&inst).unwrap().fraction);
        prop_assert!(!optima.is_empty());
        for x in &optima {
            prop_assert_eq!(inst.satisfied_count(x).unwrap(), frac.satisfied);
        }
    }
}
