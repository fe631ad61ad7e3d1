use rand::Rng;
use rand_distr::StandardNormal;
use serde::{Deserialize, Serialize};

use super::{evaluate_functional, MixedXi, ParisiSettings, StepOrderParam};
use crate::error::Result;
use crate::optimize::{nelder_mead, NelderMeadOptions};
use crate::rng::{self, streams};

/// Floor on the first breakpoint.
pub const Q_MIN: f64 = 1e-4;

const COARSE: usize = 8;
const TENSOR_LIMIT: usize = 4096;
const RESTART_SPREAD: f64 = 0.5;
const EMBED_STEP: f64 = 8.0;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MinimizeDiagnostics {
    pub evaluations: usize,
    pub restarts: usize,
    /// Every restart's simplex met its tolerances.
    pub converged: bool,
    /// Best value after the coarse scan and after each restart.
    pub history: Vec<f64>,
    pub warning: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ParisiResult {
    pub value: f64,
    pub order: StepOrderParam,
    pub settings: ParisiSettings,
    pub diagnostics: MinimizeDiagnostics,
}

fn sigmoid(t: f64) -> f64 {
    1.0 / (1.0 + (-t).exp())
}

/// Unconstrained coordinates `(θ₁…θ_μ, φ₁…φ_μ)` to an ordered step function:
/// breakpoints by stick-breaking logistic increments above `Q_MIN`, values by
/// cumulative exponential increments.
fn decode(x: &[f64]) -> Option<StepOrderParam> {
    let mu = x.len() / 2;
    let mut qs = Vec::with_capacity(mu);
    let mut prev = Q_MIN;
    for (i, &t) in x[..mu].iter().enumerate() {
        let q = if i == 0 { Q_MIN + (1.0 - Q_MIN) * sigmoid(t) } else { prev + (1.0 - prev) * sigmoid(t) };
        qs.push(q);
        prev = q;
    }
    let mut ms = Vec::with_capacity(mu);
    let mut acc = 0.0;
    for &p in &x[mu..] {
        acc += p.exp();
        ms.push(acc);
    }
    StepOrderParam::from_pieces(&qs, &ms).ok()
}

fn logit(p: f64) -> f64 {
    (p / (1.0 - p)).ln()
}

/// Inverse of [`decode`] for an order parameter with nonzero pieces.
fn encode(op: &StepOrderParam) -> Vec<f64> {
    let q = &op.breakpoints()[1..=op.pieces()];
    let m = &op.values()[1..=op.pieces()];
    let mut x = Vec::with_capacity(2 * q.len());
    let mut prev = Q_MIN;
    for (i, &qi) in q.iter().enumerate() {
        let base = if i == 0 { Q_MIN } else { prev };
        x.push(logit(((qi - base) / (1.0 - base)).clamp(1e-12, 1.0 - 1e-12)));
        prev = qi;
    }
    let mut last = 0.0;
    for &mi in m {
        x.push((mi - last).max(1e-300).ln());
        last = mi;
    }
    x
}

/// The `(μ−1)`-piece point `x` with a vanishing extra piece near `q = 1`.
fn embed(x: &[f64]) -> Vec<f64> {
    let mu = x.len() / 2;
    let mut out = x[..mu].to_vec();
    out.push(EMBED_STEP);
    out.extend_from_slice(&x[mu..]);
    out.push(-EMBED_STEP);
    out
}

fn coarse_axis(i: usize, mu: usize) -> impl Iterator<Item = f64> {
    let (lo, hi) = if i < mu { (-4.0, 4.0) } else { (-3.0, 1.5) };
    (0..COARSE).map(move |j| lo + (hi - lo) * j as f64 / (COARSE - 1) as f64)
}

/// Minimizes the functional over step functions with `pieces` nonzero
/// pieces: coarse grid seeding, then Nelder–Mead from the best seed and from
/// `restarts − 1` seeded perturbations of it. For two or more pieces one more
/// simplex starts from the `(μ−1)`-piece optimum, so adding a piece never
/// makes the result worse. Non-convergence is reported in the diagnostics,
/// not as an error.
pub fn minimize_parisi(xi: &MixedXi, pieces: usize, settings: &ParisiSettings, seed: u64) -> Result<ParisiResult> {
    if pieces == 0 {
        let order = StepOrderParam::zero();
        let value = evaluate_functional(xi, &order, settings)?;
        let diagnostics =
            MinimizeDiagnostics { evaluations: 1, restarts: 0, converged: true, history: vec![value], warning: None };
        return Ok(ParisiResult { value, order, settings: settings.clone(), diagnostics });
    }
    // surface settings errors before searching
    evaluate_functional(xi, &StepOrderParam::zero(), settings)?;

    let nested = if pieces >= 2 { Some(minimize_parisi(xi, pieces - 1, settings, seed)?) } else { None };

    let dim = 2 * pieces;
    let mut evaluations = nested.as_ref().map_or(0, |r| r.diagnostics.evaluations);
    let mut objective = |x: &[f64]| -> f64 {
        evaluations += 1;
        match decode(x) {
            Some(op) => evaluate_functional(xi, &op, settings).unwrap_or(f64::INFINITY),
            None => f64::INFINITY,
        }
    };

    // coarse seeding: full tensor grid when small, else cyclic coordinate sweeps
    let mut best_x = vec![0.0; dim];
    let mut best_f = objective(&best_x);
    if COARSE.checked_pow(dim as u32).is_some_and(|n| n <= TENSOR_LIMIT) {
        let axes: Vec<Vec<f64>> = (0..dim).map(|i| coarse_axis(i, pieces).collect()).collect();
        let mut idx = vec![0usize; dim];
        loop {
            let x: Vec<f64> = idx.iter().enumerate().map(|(i, &j)| axes[i][j]).collect();
            let f = objective(&x);
            if f < best_f {
                best_f = f;
                best_x = x;
            }
            let mut d = 0;
            while d < dim {
                idx[d] += 1;
                if idx[d] < COARSE {
                    break;
                }
                idx[d] = 0;
                d += 1;
            }
            if d == dim {
                break;
            }
        }
    } else {
        for _ in 0..2 {
            for i in 0..dim {
                for v in coarse_axis(i, pieces) {
                    let mut x = best_x.clone();
                    x[i] = v;
                    let f = objective(&x);
                    if f < best_f {
                        best_f = f;
                        best_x = x;
                    }
                }
            }
        }
    }
    let mut history = vec![best_f];

    let opts = NelderMeadOptions::default();
    let seed_x = best_x.clone();
    let mut converged = true;
    let restarts = settings.restarts.max(1);
    for r in 0..restarts {
        let start: Vec<f64> = if r == 0 {
            seed_x.clone()
        } else {
            let mut rng = rng::stream(seed, streams::PARISI_RESTART + r as u64);
            seed_x.iter().map(|&v| v + RESTART_SPREAD * rng.sample::<f64, _>(StandardNormal)).collect()
        };
        let res = nelder_mead(&mut objective, &start, &opts);
        converged &= res.converged;
        if res.f < best_f {
            best_f = res.f;
            best_x = res.x;
        }
        history.push(best_f);
    }
    if let Some(lower) = &nested {
        let res = nelder_mead(&mut objective, &embed(&encode(&lower.order)), &opts);
        converged &= res.converged;
        if res.f < best_f {
            best_f = res.f;
            best_x = res.x;
        }
        history.push(best_f);
    }

    let order = decode(&best_x).expect("best point decodes");
    let warning = (!converged).then(|| "simplex hit its evaluation budget; returning best so far".to_string());
    Ok(ParisiResult {
        value: best_f,
        order,
        settings: settings.clone(),
        diagnostics: MinimizeDiagnostics { evaluations, restarts, converged, history, warning },
    })
}
