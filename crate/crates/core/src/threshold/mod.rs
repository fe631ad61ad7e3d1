//! The one-local threshold algorithm: start from a uniformly random
//! assignment, then every variable flips at once if at most `μ` of its clauses
//! are satisfied.

use serde::{Deserialize, Serialize};
use statrs::function::erf::erf;

use crate::error::{invalid_arg, Error, Result};
use crate::optimize::bisect;

mod monte_carlo;
mod tails;

pub use monte_carlo::{monte_carlo_run, monte_carlo_run_with, MonteCarloOptions, MonteCarloResult};
pub use tails::{BinomialTails, EXACT_LIMIT};

/// Flip threshold, either an integer `μ` at finite degree or the scaled `α`
/// with `μ = D/2 + α√D`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ThresholdConfig {
    Finite { mu: usize },
    Scaled { alpha: f64 },
}

impl ThresholdConfig {
    /// Integer threshold at other-degree `d`, rounding the scaled form to the
    /// nearest admissible value.
    pub fn mu_for(&self, d: usize) -> usize {
        match *self {
            ThresholdConfig::Finite { mu } => mu,
            ThresholdConfig::Scaled { alpha } => {
                let df = d as f64;
                (df / 2.0 + alpha * df.sqrt()).round().clamp(0.0, df) as usize
            }
        }
    }
}

/// Flip probabilities of a clause member given the clause state.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ThresholdQuantities {
    /// Pr[flip | clause unsatisfied]
    pub g: f64,
    pub h: f64,
    /// Pr[flip | clause satisfied]
    pub r: f64,
    pub s_sat: f64,
    pub delta: f64,
}

pub fn quantities(d: usize, mu: usize) -> Result<ThresholdQuantities> {
    check_mu(d, mu)?;
    let t = BinomialTails::new(d);
    Ok(quantities_from(&t, mu))
}

fn quantities_from(t: &BinomialTails, mu: usize) -> ThresholdQuantities {
    let (g, delta) = (t.g[mu], t.delta[mu]);
    let r = g - delta;
    ThresholdQuantities { g, h: 1.0 - g, r, s_sat: 1.0 - r, delta }
}

fn check_mu(d: usize, mu: usize) -> Result<()> {
    if mu > d {
        return Err(invalid_arg(format!("threshold μ = {mu} outside 0..={d}")));
    }
    Ok(())
}

fn f_from(k: usize, t: &BinomialTails, mu: usize) -> f64 {
    let a = t.one_minus_2g[mu];
    let b = a + 2.0 * t.delta[mu];
    0.5 + (b.powi(k as i32) - a.powi(k as i32)) / 4.0
}

/// Expected satisfying fraction after one round on a (D+1)-regular
/// triangle-free instance: `½ + ((1−2g+2Δ)^k − (1−2g)^k)/4`.
pub fn exact_f(k: usize, d: usize, mu: usize) -> Result<f64> {
    if k < 2 {
        return Err(invalid_arg(format!("arity k = {k} must be at least 2")));
    }
    check_mu(d, mu)?;
    Ok(f_from(k, &BinomialTails::new(d), mu))
}

/// `exact_f` for every `μ ∈ 0..=d`.
pub fn f_profile(k: usize, d: usize) -> Vec<f64> {
    let t = BinomialTails::new(d);
    (0..=d).map(|mu| f_from(k, &t, mu)).collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ThresholdOptimum {
    pub mu: usize,
    pub f: f64,
}

/// Exhaustive scan over `μ`; ties go to the smaller threshold.
pub fn optimize_mu(k: usize, d: usize) -> Result<ThresholdOptimum> {
    if k < 2 {
        return Err(invalid_arg(format!("arity k = {k} must be at least 2")));
    }
    let profile = f_profile(k, d);
    let mut best = ThresholdOptimum { mu: 0, f: profile[0] };
    for (mu, &f) in profile.iter().enumerate().skip(1) {
        if f > best.f {
            best = ThresholdOptimum { mu, f };
        }
    }
    Ok(best)
}

/// `(F_opt − ½)·√D`, which tends to the limit constant as `D → ∞`.
pub fn finite_constant(k: usize, d: usize) -> Result<f64> {
    if d == 0 {
        return Err(invalid_arg("finite-degree constant needs D ≥ 1"));
    }
    Ok((optimize_mu(k, d)?.f - 0.5) * (d as f64).sqrt())
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ThresholdLimit {
    pub k: usize,
    pub c: f64,
    pub alpha: f64,
}

/// Limit constant `C_k = (k/2)√(2/π) e^{−2α²} erf^{k−1}(−α√2)` at the root
/// of `(k−1)√(2/π) e^{−2α²} = 2α erf(α√2)` in `α ∈ [−3, 0)`.
pub fn large_d_constant_threshold(k: usize) -> Result<ThresholdLimit> {
    if k < 2 {
        return Err(invalid_arg(format!("arity k = {k} must be at least 2")));
    }
    let kf = k as f64;
    let s2p = (2.0 / std::f64::consts::PI).sqrt();
    let h = |a: f64| (kf - 1.0) * s2p * (-2.0 * a * a).exp() - 2.0 * a * erf(a * std::f64::consts::SQRT_2);
    let (lo, hi) = (-3.0, -1e-12);
    let alpha = bisect(h, lo, hi, 1e-14).map_err(|_| {
        let trace: Vec<String> = (0..=12).map(|i| lo + (hi - lo) * i as f64 / 12.0).map(|a| format!("h({a:.3})={:.3e}", h(a))).collect();
        Error::NoConvergence(format!("no sign change for k = {k} on [{lo}, {hi}]: {}", trace.join(", ")))
    })?;
    let c = kf / 2.0 * s2p * (-2.0 * alpha * alpha).exp() * erf(-alpha * std::f64::consts::SQRT_2).powi(k as i32 - 1);
    Ok(ThresholdLimit { k, c, alpha })
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    #[test]
    fn substitution_example() {
        let q = quantities(2, 1).unwrap();
        assert_eq!((q.g, q.delta), (0.75, 0.5));
        assert_abs_diff_eq!(exact_f(2, 2, 1).unwrap(), 0.5, epsilon = 1e-15);
    }

    #[test]
    fn out_of_range_mu() {
        assert!(exact_f(3, 4, 5).is_err());
    }

    #[test]
    fn three_point_scan() {
        let best = optimize_mu(2, 2).unwrap();
        let all: Vec<f64> = (0..=2).map(|mu| exact_f(2, 2, mu).unwrap()).collect();
        let max = all.iter().cloned().fold(f64::MIN, f64::max);
        assert_eq!(best.f, max);
        assert_eq!(all.iter().position(|&f| f == max).unwrap(), best.mu);
    }

    #[test]
    fn limits() {
        let l = large_d_constant_threshold(2).unwrap();
        assert_abs_diff_eq!(l.c, 0.33649, epsilon = 1e-4);
        assert_abs_diff_eq!(l.alpha, -0.43845, epsilon = 1e-4);
        let l = large_d_constant_threshold(5).unwrap();
        assert_abs_diff_eq!(l.c, 0.37008, epsilon = 1e-4);
    }

    #[test]
    fn scaled_config_rounds() {
        assert_eq!(ThresholdConfig::Scaled { alpha: -0.5 }.mu_for(100), 45);
        assert_eq!(ThresholdConfig::Scaled { alpha: -9.0 }.mu_for(4), 0);
    }

    #[test]
    fn converges_at_large_degree() {
        let c = finite_constant(3, 10_000).unwrap();
        let lim = large_d_constant_threshold(3).unwrap().c;
        assert!((c - lim).abs() <= 0.01, "{c} vs {lim}");
    }
}
