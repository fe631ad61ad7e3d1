//! Oracle-equivalence and invariant suites behind `kxor verify`.

use serde::Serialize;

use super::golden::Check;
use crate::instances::{generate_regular_triangle_free, Clause, DegreeProfile, XorInstance};
use crate::nlts::{self, construct_nlts, SimpleGraph, DEFAULT_R};
use crate::parisi::{self, evaluate_functional, minimize_parisi, psi_levels, MixedXi, ParisiSettings, StepOrderParam};
use crate::qaoa::{self, closed_form_regular, QaoaAngles, QaoaSimulator};
use crate::rng::{self, streams};
use crate::threshold::{self, BinomialTails};

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Suite {
    QaoaOracle,
    ThresholdMc,
    ParisiInvariants,
    NltsGroundstates,
    All,
}

impl Suite {
    pub fn name(self) -> &'static str {
        match self {
            Suite::QaoaOracle => "qaoa-oracle",
            Suite::ThresholdMc => "threshold-mc",
            Suite::ParisiInvariants => "parisi-invariants",
            Suite::NltsGroundstates => "nlts-groundstates",
            Suite::All => "all",
        }
    }
}

/// Regular closed form `(k, D, angles) → E₁` used by the QAOA suite.
pub type ClosedForm = fn(usize, usize, QaoaAngles) -> f64;

/// Replaceable pieces, so tests can check that a corrupted formula is caught.
#[derive(Clone, Copy)]
pub struct Oracles {
    pub closed_form: ClosedForm,
}

impl Default for Oracles {
    fn default() -> Self {
        Self { closed_form: closed_form_regular }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct VerifyReport {
    pub suite: String,
    pub seed: u64,
    pub passed: bool,
    pub checks: Vec<Check>,
}

pub fn run_suite(suite: Suite, seed: u64) -> VerifyReport {
    run_suite_with(suite, seed, &Oracles::default())
}

pub fn run_suite_with(suite: Suite, seed: u64, oracles: &Oracles) -> VerifyReport {
    let mut checks = Vec::new();
    let all = suite == Suite::All;
    if all || suite == Suite::QaoaOracle {
        checks.extend(qaoa_oracle(seed, oracles));
    }
    if all || suite == Suite::ThresholdMc {
        checks.extend(threshold_mc(seed));
    }
    if all || suite == Suite::ParisiInvariants {
        checks.extend(parisi_invariants(seed));
    }
    if all || suite == Suite::NltsGroundstates {
        checks.extend(nlts_groundstates());
    }
    let passed = checks.iter().all(|c| c.passed);
    VerifyReport { suite: suite.name().to_string(), seed, passed, checks }
}

fn named(suite: &str, check: &str) -> String {
    format!("{suite}/{check}")
}

/// Regular triangle-free configurations with at most 20 variables.
pub const ORACLE_CONFIGS: [(usize, usize, usize); 5] = [(2, 2, 12), (2, 3, 16), (3, 2, 18), (3, 3, 20), (4, 2, 20)];

/// Three clauses pairwise sharing one variable, closing a loop.
pub fn hypergraph_triangle() -> XorInstance {
    let sets = [[0, 1, 2], [2, 3, 4], [4, 5, 0]];
    XorInstance::new(3, 6, sets.iter().map(|s| Clause::new(s.to_vec(), 1)).collect()).expect("valid")
}

/// Average of per-clause statevector expectations over all `2^m` sign
/// patterns, against the triangle-free closed form. Returns the worst gap.
pub fn random_sign_gap(inst: &XorInstance, angles: QaoaAngles) -> crate::Result<f64> {
    let m = inst.num_clauses();
    let mut sim = QaoaSimulator::new(inst)?;
    let mut avg = vec![0.0; m];
    for pattern in 0..1u32 << m {
        let signs: Vec<i8> = (0..m).map(|i| if pattern >> i & 1 == 1 { -1 } else { 1 }).collect();
        sim.set_signs(&signs)?;
        for (a, e) in avg.iter_mut().zip(sim.clause_expectations(angles)) {
            *a += e;
        }
    }
    let profile = DegreeProfile::of(inst);
    Ok((0..m)
        .map(|ci| {
            let want = qaoa::closed_form_triangle_free(&profile.other_degrees(inst, ci), angles);
            (avg[ci] / (1u64 << m) as f64 - want).abs()
        })
        .fold(0.0, f64::max))
}

fn qaoa_oracle(seed: u64, oracles: &Oracles) -> Vec<Check> {
    use std::f64::consts::PI;
    use rand::Rng;
    let s = "qaoa-oracle";
    let mut out = Vec::new();

    let ring = XorInstance::new(2, 8, (0..8).map(|i| Clause::new(vec![i, (i + 1) % 8], -1)).collect()).expect("ring");
    let a = QaoaAngles::new(PI / 4.0, PI / 8.0);
    let sv = qaoa::statevector_expectation(&ring, a).expect("n = 8");
    let cf = 0.5 + (oracles.closed_form)(2, 1, a);
    out.push(Check::new(
        named(s, "ring-value"),
        (sv - 0.75).abs() <= 1e-12 && (cf - 0.75).abs() <= 1e-12,
        format!("statevector {sv:.15}, closed form {cf:.15}, want 0.75"),
    ));

    let mut rng = rng::stream(seed, streams::VERIFY);
    let mut worst = 0.0f64;
    let mut pairs = 0;
    for (i, &(k, degree, n)) in ORACLE_CONFIGS.iter().enumerate() {
        let inst = match generate_regular_triangle_free(k, degree, n, seed.wrapping_add(i as u64)) {
            Ok(inst) => inst,
            Err(e) => {
                out.push(Check::new(named(s, "regular-instances"), false, format!("generation failed: {e}")));
                return out;
            }
        };
        let sim = QaoaSimulator::new(&inst).expect("n ≤ 20");
        for _ in 0..20 {
            let a = QaoaAngles::new(rng.random_range(0.0..PI), rng.random_range(0.0..PI));
            let gap = (sim.expectation(a) - 0.5 - (oracles.closed_form)(k, degree - 1, a)).abs();
            worst = worst.max(gap);
            pairs += 1;
        }
    }
    out.push(Check::new(
        named(s, "regular-instances"),
        worst <= 1e-9,
        format!("{pairs} (instance, angle) pairs, max |closed form − statevector| = {worst:.3e}"),
    ));

    let a = QaoaAngles::new(0.61, 0.27);
    let gap = random_sign_gap(&hypergraph_triangle(), a).expect("small");
    out.push(Check::new(named(s, "random-signs"), gap <= 1e-9, format!("max gap {gap:.3e} over 8 sign patterns")));

    let mut worst_res = 0.0f64;
    let mut worst_red = 0.0f64;
    for i in 0..50 {
        let a = QaoaAngles::new(0.03 * i as f64, 0.07 * i as f64 + 0.01);
        for k in 2..12 {
            for d in [0, 1, 5, 40] {
                worst_res = worst_res.max(qaoa::closed_form_regular_complex(k, d, a).im.abs());
            }
        }
        for d in 0..10 {
            let want = a.s() * a.p() * a.q() * a.c().powi(d as i32);
            worst_red = worst_red.max(((oracles.closed_form)(2, d, a) - want).abs());
        }
    }
    out.push(Check::new(named(s, "complex-residue"), worst_res <= 1e-14, format!("max residue {worst_res:.3e}")));
    out.push(Check::new(named(s, "k2-reduction"), worst_red <= 1e-14, format!("max gap {worst_red:.3e}")));

    let mut worst_grad = 0.0f64;
    for (k, d) in [(2, 3), (3, 1), (3, 5), (4, 10), (7, 30)] {
        let r = qaoa::optimize_finite_d(k, d).expect("k ≥ 2");
        let h = 1e-6;
        let f = |g: f64, b: f64| closed_form_regular(k, d, QaoaAngles::new(g, b));
        let (g, b) = (r.angles.gamma, r.angles.beta);
        let dg = (f(g + h, b) - f(g - h, b)) / (2.0 * h);
        let db = (f(g, b + h) - f(g, b - h)) / (2.0 * h);
        worst_grad = worst_grad.max(dg.abs()).max(db.abs());
    }
    out.push(Check::new(named(s, "stationarity"), worst_grad <= 1e-6, format!("max |∂E| {worst_grad:.3e}")));

    // k = 3 bounded-degree property at the regular optimum
    let mut violations = 0;
    for d in 1..=6 {
        let r = qaoa::optimize_finite_d(3, d).expect("k = 3");
        let base = closed_form_regular(3, d, r.angles);
        for da in 0..=d {
            for db in 0..=d {
                for dc in 0..=d {
                    if qaoa::closed_form_triangle_free(&[da, db, dc], r.angles) < base - 1e-15 {
                        violations += 1;
                    }
                }
            }
        }
    }
    out.push(Check::new(named(s, "bounded-degree-k3"), violations == 0, format!("{violations} degree vectors below the regular value")));

    let cs: Vec<f64> = (2..=19).map(|k| qaoa::large_d_constant(k).map(|r| r.c).unwrap_or(f64::NAN)).collect();
    let increasing = cs.windows(2).all(|w| w[1] > w[0]);
    out.push(Check::new(named(s, "large-d-monotone"), increasing, format!("C(2..19) = {cs:.5?}")));
    out
}

/// `(k, D, μ)` grid for the Monte Carlo agreement check.
pub fn monte_carlo_matrix() -> Vec<(usize, usize, usize)> {
    let mut configs = Vec::new();
    for k in 2..=4 {
        for d in 1..=6 {
            let mu = threshold::optimize_mu(k, d).expect("k ≥ 2").mu;
            configs.push((k, d, mu));
        }
    }
    configs.push((3, 4, 1));
    configs.push((2, 2, 0));
    configs
}

/// Smallest `n ≥ floor` with `n·(D+1)` divisible by `k`, sized so that a
/// triangle-free configuration is easy to find.
pub fn monte_carlo_size(k: usize, d: usize) -> usize {
    let floor = 4 * k * (k - 1) * (d + 1) + 16;
    (floor..).find(|n| n * (d + 1) % k == 0).expect("some n")
}

fn threshold_mc(seed: u64) -> Vec<Check> {
    let s = "threshold-mc";
    let mut out = Vec::new();

    let (mut worst_id, mut worst_k2) = (0.0f64, 0.0f64);
    for d in 0..=64 {
        let t = BinomialTails::new(d);
        for mu in 0..=d {
            let r = t.g[mu] - t.delta[mu];
            worst_id = worst_id.max((t.one_minus_2g[mu] + 2.0 * t.delta[mu] - (1.0 - 2.0 * r)).abs());
            let f = threshold::exact_f(2, d, mu).expect("valid");
            let g = t.g[mu];
            worst_k2 = worst_k2.max((f - (0.5 + t.delta[mu] * (1.0 - 2.0 * g + t.delta[mu]))).abs());
        }
    }
    out.push(Check::new(named(s, "identity-1-2r"), worst_id <= 1e-15, format!("max gap {worst_id:.3e}")));
    out.push(Check::new(named(s, "k2-closed-form"), worst_k2 <= 1e-15, format!("max gap {worst_k2:.3e}")));

    let mut bad = Vec::new();
    for k in [3, 5, 7] {
        for d in 1..=30 {
            let prof = threshold::f_profile(k, d);
            let best = prof.iter().cloned().fold(f64::MIN, f64::max);
            let argmax: Vec<usize> = (0..=d).filter(|&mu| (prof[mu] - best).abs() <= 1e-12 * best).collect();
            let ok = if d % 2 == 0 && argmax == [d / 2] { true } else { argmax.len() == 2 && argmax[0] + argmax[1] == d };
            if !ok {
                bad.push((k, d, argmax));
            }
        }
    }
    out.push(Check::new(named(s, "odd-k-two-maxima"), bad.is_empty(), format!("exceptions: {bad:?}")));

    let mut worst_lim = 0.0f64;
    for k in 2..=6 {
        let c = threshold::finite_constant(k, 10_000).expect("valid");
        let lim = threshold::large_d_constant_threshold(k).expect("bracketed").c;
        worst_lim = worst_lim.max((c - lim).abs());
    }
    out.push(Check::new(named(s, "large-degree-convergence"), worst_lim <= 0.01, format!("max |C_k,D − C_k| at D = 10⁴: {worst_lim:.4}")));

    let configs = monte_carlo_matrix();
    let mut within = 0;
    let mut notes = Vec::new();
    for (i, &(k, d, mu)) in configs.iter().enumerate() {
        let n = monte_carlo_size(k, d);
        let inst = match generate_regular_triangle_free(k, d + 1, n, seed.wrapping_add(i as u64)) {
            Ok(inst) => inst,
            Err(e) => {
                notes.push(format!("(k={k}, D={d}): {e}"));
                continue;
            }
        };
        let r = threshold::monte_carlo_run(&inst, mu, 200_000, seed.wrapping_add(i as u64)).expect("valid");
        let f = threshold::exact_f(k, d, mu).expect("valid");
        if (r.mean - f).abs() <= 3.0 * r.std_error + 1e-12 {
            within += 1;
        } else {
            notes.push(format!("(k={k}, D={d}, μ={mu}): {:.6} vs {f:.6} ± {:.1e}", r.mean, r.std_error));
        }
    }
    let share = within as f64 / configs.len() as f64;
    out.push(Check::new(
        named(s, "monte-carlo-matrix"),
        share >= 0.95,
        format!("{within}/{} within 3σ; {}", configs.len(), notes.join("; ")),
    ));
    out
}

fn parisi_invariants(seed: u64) -> Vec<Check> {
    let s = "parisi-invariants";
    let mut out = Vec::new();
    let full = ParisiSettings::default();
    let quick = ParisiSettings::quick();

    let xi = MixedXi::pure(3).expect("pure");
    let op = StepOrderParam::from_pieces(&[0.3, 0.7], &[0.5, 2.0]).expect("ordered");
    let levels = psi_levels(&xi, &op, &full).expect("grid");
    let n = levels.x.len();
    let (mut odd_gap, mut min_second, mut slope_gap) = (0.0f64, f64::MAX, 0.0f64);
    let h = levels.x[1] - levels.x[0];
    for psi in &levels.psi {
        for i in 0..n {
            odd_gap = odd_gap.max((psi[i] - psi[n - 1 - i]).abs());
        }
        for i in 1..n - 1 {
            min_second = min_second.min(psi[i + 1] - 2.0 * psi[i] + psi[i - 1]);
        }
        slope_gap = slope_gap.max((psi[n - 1] - psi[n - 2] - h).abs());
    }
    out.push(Check::new(named(s, "even"), odd_gap <= 1e-10, format!("max |Ψ(x) − Ψ(−x)| = {odd_gap:.3e}")));
    out.push(Check::new(named(s, "convex"), min_second >= -1e-8, format!("min second difference {min_second:.3e}")));
    out.push(Check::new(named(s, "edge-slope"), slope_gap <= 1e-4, format!("max |ΔΨ − δ| at the edge {slope_gap:.3e}")));

    let vals: Vec<f64> = [201, 401, 801, 1601]
        .iter()
        .map(|&grid| evaluate_functional(&xi, &op, &ParisiSettings { grid, ..full.clone() }).expect("grid"))
        .collect();
    let deltas: Vec<f64> = vals.windows(2).map(|w| (w[1] - w[0]).abs()).collect();
    let shrinking = deltas.windows(2).all(|w| w[1] <= w[0]);
    out.push(Check::new(
        named(s, "grid-refinement"),
        shrinking && *deltas.last().expect("three deltas") <= 5e-4,
        format!("deltas {:?}", deltas.iter().map(|d| format!("{d:.3e}")).collect::<Vec<_>>()),
    ));

    let zero: Vec<f64> = (2..=6).map(|k| evaluate_functional(&MixedXi::pure(k).expect("pure"), &StepOrderParam::zero(), &full).expect("grid")).collect();
    let worst_rs = zero.iter().zip(2..=6).map(|(v, k)| (v - (2.0 * k as f64 / std::f64::consts::PI).sqrt()).abs()).fold(0.0, f64::max);
    out.push(Check::new(named(s, "replica-symmetric"), worst_rs <= 1e-10, format!("max gap to √(2k/π) {worst_rs:.3e}")));

    let mut pieces_notes = Vec::new();
    let mut pieces_ok = true;
    for k in [2, 3] {
        let xi = MixedXi::pure(k).expect("pure");
        let one = minimize_parisi(&xi, 1, &quick, seed).expect("settings").value;
        let two = minimize_parisi(&xi, 2, &quick, seed).expect("settings").value;
        pieces_ok &= two <= one + 1e-4;
        pieces_notes.push(format!("k={k}: μ=1 {one:.6}, μ=2 {two:.6}"));
    }
    out.push(Check::new(named(s, "more-pieces"), pieces_ok, pieces_notes.join("; ")));

    let bound = parisi::parisi_upper_bound_value();
    let mut over = Vec::new();
    for k in 2..=34 {
        let v = minimize_parisi(&MixedXi::pure(k).expect("pure"), 2, &quick, seed).expect("settings").value;
        if v > bound + 2e-3 {
            over.push(format!("P({k}) = {v:.6}"));
        }
    }
    out.push(Check::new(named(s, "rem-bound"), over.is_empty(), format!("k = 2..34 at grid {}; over: {over:?}", quick.grid)));
    out
}

/// The Petersen graph: 3-regular, 10 vertices, not bipartite.
pub fn petersen() -> SimpleGraph {
    let mut edges = Vec::new();
    for i in 0..5 {
        edges.push((i, (i + 1) % 5));
        edges.push((i, i + 5));
        edges.push((5 + i, 5 + (i + 2) % 5));
    }
    SimpleGraph::new(10, edges).expect("simple")
}

fn nlts_groundstates() -> Vec<Check> {
    let s = "nlts-groundstates";
    let mut out = Vec::new();
    let graphs: Vec<(&str, SimpleGraph)> = vec![
        ("C5", SimpleGraph::cycle(5).expect("cycle")),
        ("C6", SimpleGraph::cycle(6).expect("cycle")),
        ("C7", SimpleGraph::cycle(7).expect("cycle")),
        ("C8", SimpleGraph::cycle(8).expect("cycle")),
        ("petersen", petersen()),
    ];
    for (name, g) in &graphs {
        let nl = construct_nlts(g, DEFAULT_R, 0).expect("feasible");
        let report = nlts::ground_states(&nl).expect("small");
        let bipartite = g.max_cut().expect("small").0 == g.edges.len();
        out.push(Check::new(
            named(s, &format!("satisfiable-{name}")),
            report.fraction.satisfied == report.fraction.total && report.of_claimed_form == 2,
            format!("optimum {}, claimed-form optima {}", report.fraction, report.of_claimed_form),
        ));
        out.push(Check::new(named(s, &format!("partial-z2-{name}")), nlts::verify_partial_z2(&nl), "exhaustive"));
        // bipartite inner graphs add the two cut assignments to the ground set
        let expected = if bipartite { 4 } else { 2 };
        out.push(Check::new(
            named(s, &format!("census-{name}")),
            report.optimal == expected,
            format!("{} optimal assignments, expected {expected} (bipartite: {bipartite})", report.optimal),
        ));
        let (cut, labels) = g.max_cut().expect("small");
        let violated = nl.instance.num_clauses() - nl.instance.satisfied_count(&nl.cut_assignment(&labels)).expect("length");
        out.push(Check::new(
            named(s, &format!("energy-identity-{name}")),
            violated == 2 * g.edges.len() - 2 * cut,
            format!("violated {violated}, 2|E| − 2·cut = {}", 2 * g.edges.len() - 2 * cut),
        ));
    }
    let d1 = nlts::qaoa_depth_bound(5184 * 8, 1).expect("d > 0").value;
    let f100 = nlts::fraction_bound(100, 0.0).expect("d ≥ 2");
    out.push(Check::new(
        named(s, "bounds"),
        (d1 - 3.0 / 648.0).abs() <= 1e-12 && (f100 - (0.99 + 2.0 * 99f64.sqrt() / 10_000.0)).abs() <= 1e-12,
        format!("depth bound {d1:.6}, fraction bound {f100:.6}"),
    ));
    out
}
