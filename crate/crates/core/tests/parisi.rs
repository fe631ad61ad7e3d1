use kxor_bounds::parisi::{
    evaluate_functional, ksat_constant, ksat_fraction, maxcut_constant, minimize_parisi, optimal_fraction_kxor,
    parisi_upper_bound_value, psi_levels, MixedXi, ModelConfig, ParisiSettings, StepOrderParam, XiTerm,
};
use proptest::prelude::*;

fn quick() -> ParisiSettings {
    ParisiSettings::quick()
}

#[test]
fn upper_bound_constant() {
    assert!((parisi_upper_bound_value() - 1.1774100225154747).abs() < 1e-15);
}

#[test]
fn fraction_conversions() {
    assert!((optimal_fraction_kxor(2, 2, 1.0799).unwrap() - 1.03995).abs() < 1e-12);
    assert!((optimal_fraction_kxor(3, 100, 1.1504).unwrap() - (0.5 + 0.5752 * 0.03f64.sqrt())).abs() < 1e-12);
    assert!((optimal_fraction_kxor(3, 100, 1.1504).unwrap() - 0.599626).abs() < 1e-5);
    assert!(optimal_fraction_kxor(2, 0, 1.0).is_err());
    assert!((maxcut_constant(1.07928) - 0.7632).abs() < 1e-4);
    assert!((ksat_fraction(3, 0.277, 4.0).unwrap() - (0.875 + 0.1385)).abs() < 1e-12);
    assert!(ksat_fraction(3, 0.277, 0.0).is_err());
}

#[test]
fn ksat_identity_over_table() {
    for (k, b) in [(3, 2.2176), (4, 3.7457), (9, 26.246)] {
        assert!((ksat_constant(k, b) * 2f64.powi(k as i32) - b).abs() < 1e-12);
    }
}

#[test]
fn replica_symmetric_closed_form() {
    for k in 2..=8 {
        let v = evaluate_functional(&MixedXi::pure(k).unwrap(), &StepOrderParam::zero(), &quick()).unwrap();
        assert!((v - (2.0 * k as f64 / std::f64::consts::PI).sqrt()).abs() < 1e-10, "k={k}: {v}");
    }
}

#[test]
fn levels_even_convex_with_unit_edge_slope() {
    let xi = MixedXi::new(vec![XiTerm { p: 2, c: 0.5 }, XiTerm { p: 4, c: 0.5 }]).unwrap();
    let op = StepOrderParam::from_pieces(&[0.2, 0.5, 0.9], &[0.3, 1.0, 4.0]).unwrap();
    let levels = psi_levels(&xi, &op, &quick()).unwrap();
    let n = levels.x.len();
    let h = levels.x[1] - levels.x[0];
    assert_eq!(levels.psi.len(), op.pieces() + 2);
    for psi in &levels.psi {
        for i in 0..n {
            assert!((psi[i] - psi[n - 1 - i]).abs() < 1e-10);
        }
        for i in 1..n - 1 {
            assert!(psi[i + 1] - 2.0 * psi[i] + psi[i - 1] >= -1e-8);
        }
        assert!((psi[n - 1] - psi[n - 2] - h).abs() <= 1e-4);
    }
}

#[test]
fn grid_refinement_converges() {
    let xi = MixedXi::pure(3).unwrap();
    let op = StepOrderParam::from_pieces(&[0.3, 0.7], &[0.5, 2.0]).unwrap();
    let vals: Vec<f64> = [201, 401, 801, 1601]
        .iter()
        .map(|&grid| evaluate_functional(&xi, &op, &ParisiSettings { grid, ..ParisiSettings::default() }).unwrap())
        .collect();
    let deltas: Vec<f64> = vals.windows(2).map(|w| (w[1] - w[0]).abs()).collect();
    assert!(deltas.windows(2).all(|w| w[1] <= w[0]), "{deltas:?}");
    assert!(deltas[2] <= 5e-4);
}

#[test]
fn bad_settings_are_errors() {
    let xi = MixedXi::pure(2).unwrap();
    for s in [ParisiSettings { grid: 2, ..quick() }, ParisiSettings { quad: 0, ..quick() }] {
        assert!(evaluate_functional(&xi, &StepOrderParam::zero(), &s).is_err());
    }
    assert!(StepOrderParam::from_pieces(&[0.5, 0.3], &[1.0, 2.0]).is_err());
    assert!(StepOrderParam::from_pieces(&[0.3, 0.5], &[2.0, 1.0]).is_err());
    assert!(MixedXi::new(vec![XiTerm { p: 1, c: 1.0 }]).is_err());
}

#[test]
fn quick_minimizer_hits_known_values() {
    let two = minimize_parisi(&MixedXi::pure(2).unwrap(), 2, &quick(), 0).unwrap();
    assert!(((two.value - 1.07928) / 1.07928).abs() < 1e-2, "{}", two.value);
    let one = minimize_parisi(&MixedXi::pure(2).unwrap(), 1, &quick(), 0).unwrap();
    assert!(two.value <= one.value + 1e-4);
    assert!(two.value <= parisi_upper_bound_value() + 2e-3);
    // the minimizer beats the replica-symmetric value
    assert!(two.value < (4.0 / std::f64::consts::PI).sqrt());
}

#[test]
fn minimizer_is_deterministic() {
    let xi = MixedXi::pure(4).unwrap();
    let s = ParisiSettings { grid: 201, ..quick() };
    let a = minimize_parisi(&xi, 1, &s, 3).unwrap();
    let b = minimize_parisi(&xi, 1, &s, 3).unwrap();
    assert_eq!(a, b);
}

#[test]
fn model_file_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("model.json");
    std::fs::write(&path, r#"{"xi": [{"p": 3, "c": 1.0}], "pieces": 0}"#).unwrap();
    let model = ModelConfig::read(&path).unwrap();
    assert_eq!(model.pieces, 0);
    assert_eq!(model.settings().grid, ParisiSettings::default().grid);
    std::fs::write(&path, r#"{"xi": [{"p": 0, "c": 1.0}], "pieces": 1}"#).unwrap();
    assert!(ModelConfig::read(&path).is_err());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn functional_is_finite_and_above_zero(q1 in 0.01f64..0.5, dq in 0.01f64..0.45, m1 in 0.01f64..3.0, dm in 0.0f64..5.0, k in 2u32..6) {
        let op = StepOrderParam::from_pieces(&[q1, q1 + dq], &[m1, m1 + dm]).unwrap();
        let v = evaluate_functional(&MixedXi::pure(k).unwrap(), &op, &ParisiSettings { grid: 201, ..quick() }).unwrap();
        prop_assert!(v.is_finite() && v > 0.0);
    }

    #[test]
    fn penalty_matches_quadrature(q1 in 0.01f64..0.9, m1 in 0.0f64..4.0, c2 in 0.0f64..2.0, c3 in 0.1f64..2.0) {
        let xi = MixedXi::new(vec![XiTerm { p: 2, c: c2 }, XiTerm { p: 3, c: c3 }]).unwrap();
        let op = StepOrderParam::from_pieces(&[q1], &[m1]).unwrap();
        // midpoint rule on ½ m ∫ ξ″(t) t dt over [q1, 1]
        let n = 20_000;
        let h = (1.0 - q1) / n as f64;
        let num: f64 = (0..n).map(|i| { let t = q1 + (i as f64 + 0.5) * h; xi.xi_double_prime(t) * t * h }).sum();
        prop_assert!((op.penalty(&xi) - 0.5 * m1 * num).abs() < 1e-6);
    }
}
