use std::f64::consts::FRAC_PI_2;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::{closed_form_regular, QaoaAngles};
use crate::error::{invalid_arg, Error, Result};
use crate::optimize::{nelder_mead, scan_then_golden, NelderMeadOptions};

/// Optimum of the regular closed form at a finite degree.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct QaoaClosedFormResult {
    pub k: usize,
    pub d: usize,
    /// Per-clause expectation.
    pub e1: f64,
    /// `½ + e1`
    pub fraction: f64,
    pub angles: QaoaAngles,
}

/// Large-degree limit: fraction `½ + c/√D` with `γ = t/√D`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LargeDConstant {
    pub k: usize,
    pub c: f64,
    pub t: f64,
    pub beta: f64,
}

const SCAN_POINTS: usize = 200;
const GOLDEN_TOL: f64 = 1e-13;

/// `|q − (c/s)/√(kD)|` at `angles`: zero at the finite-D optimum.
pub fn stationarity_residual(k: usize, d: usize, angles: QaoaAngles) -> f64 {
    (angles.q() - angles.c() / angles.s() / ((k * d) as f64).sqrt()).abs()
}

/// Global maximum of [`closed_form_regular`] over the angles at other-degree
/// `d`. For `d ≥ 1` the stationarity relation `q = (c/s)/√(kD)` reduces the
/// search to γ alone; both signs of `p` are tried. `d = 0` is a direct 2-D
/// search.
pub fn optimize_finite_d(k: usize, d: usize) -> Result<QaoaClosedFormResult> {
    if k < 2 {
        return Err(invalid_arg(format!("arity k = {k} must be at least 2")));
    }
    let angles = if d == 0 {
        let (a, _) = dense_scan_optimum(k, 0, 200);
        // at D = 0 the value depends on γ only through sin γ
        QaoaAngles::new(if a.gamma > FRAC_PI_2 { std::f64::consts::PI - a.gamma } else { a.gamma }, a.beta)
    } else {
        let root = ((k * d) as f64).sqrt();
        let lo = (1.0 / root).atan();
        let hi = FRAC_PI_2 - 1e-12;
        let angles_at = |gamma: f64, flip: bool| {
            let q = (gamma.cos() / gamma.sin() / root).min(1.0);
            let b = 0.5 * q.asin();
            QaoaAngles::new(gamma, if flip { FRAC_PI_2 - b } else { b })
        };
        let mut best: Option<(f64, QaoaAngles)> = None;
        for flip in [false, true] {
            let (g, v) = scan_then_golden(|g| closed_form_regular(k, d, angles_at(g, flip)), lo, hi, SCAN_POINTS, GOLDEN_TOL);
            if best.is_none_or(|(bv, _)| v > bv) {
                best = Some((v, angles_at(g, flip)));
            }
        }
        best.expect("two branches evaluated").1
    };
    let e1 = closed_form_regular(k, d, angles);
    Ok(QaoaClosedFormResult { k, d, e1, fraction: 0.5 + e1, angles })
}

/// Independent optimum: a `grid × grid` scan over `(0, π/2)²` followed by
/// Nelder–Mead refinement from the best grid point.
pub fn dense_scan_optimum(k: usize, d: usize, grid: usize) -> (QaoaAngles, f64) {
    let h = FRAC_PI_2 / (grid + 1) as f64;
    let mut best = (QaoaAngles::new(h, h), f64::NEG_INFINITY);
    for i in 1..=grid {
        for j in 1..=grid {
            let a = QaoaAngles::new(h * i as f64, h * j as f64);
            let v = closed_form_regular(k, d, a);
            if v > best.1 {
                best = (a, v);
            }
        }
    }
    let opts = NelderMeadOptions { initial_step: h, max_evals: 4000, f_tol: 1e-15, x_tol: 1e-12 };
    let r = nelder_mead(
        |x| -closed_form_regular(k, d, QaoaAngles::new(x[0], x[1])),
        &[best.0.gamma, best.0.beta],
        &opts,
    );
    if -r.f > best.1 {
        (QaoaAngles::new(r.x[0], r.x[1]), -r.f)
    } else {
        best
    }
}

/// Limit constant: maximizes `½ t^{1−k} k^{−k/2} Im[(√(t²k−1) + i e^{−t²/2})^k]`
/// over `t > 1/√k`, with `sin 2β = 1/(t√k)`.
pub fn large_d_constant(k: usize) -> Result<LargeDConstant> {
    if k < 2 {
        return Err(invalid_arg(format!("arity k = {k} must be at least 2")));
    }
    let rk = (k as f64).sqrt();
    // rescaled by (t√k)^k to keep the power in range at large k
    let h = |t: f64| {
        let u = t * rk;
        let z = Complex64::new((u * u - 1.0).max(0.0).sqrt(), (-t * t / 2.0).exp()) / u;
        0.5 * t * z.powu(k as u32).im
    };
    let lo = 1.0 / rk;
    let hi = 6.0;
    let (t, c) = scan_then_golden(h, lo, hi, 600, 1e-13);
    let edge = 1e-6;
    if t - lo < edge || hi - t < edge {
        return Err(Error::NoConvergence(format!(
            "large-D optimum for k = {k} sits on the bracket edge: t = {t} in [{lo}, {hi}]"
        )));
    }
    Ok(LargeDConstant { k, c, t, beta: 0.5 * (1.0 / (t * rk)).asin() })
}
