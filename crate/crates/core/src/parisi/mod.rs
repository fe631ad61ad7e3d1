//! Zero-temperature Parisi functional for mixed p-spin glasses.
//!
//! For a step order parameter with breakpoints `q_i` and values `m_i` the
//! functional is `Ψ₀(0) − B`, where `Ψ` runs backward from `|x|` through
//! Gaussian smoothings and `B = ½ Σ m_i ∫ ξ″(t) t dt` over each piece.

use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{invalid_arg, Error, Result};

mod minimize;
mod solver;

pub use minimize::{minimize_parisi, MinimizeDiagnostics, ParisiResult, Q_MIN};
pub use solver::{evaluate_functional, psi_levels, PsiLevels};

/// One term `c·s^p` of the covariance polynomial.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct XiTerm {
    pub p: u32,
    pub c: f64,
}

/// `ξ(s) = Σ_p c_p s^p` with nonnegative coefficients.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "Vec<XiTerm>", into = "Vec<XiTerm>")]
pub struct MixedXi {
    terms: Vec<XiTerm>,
}

impl TryFrom<Vec<XiTerm>> for MixedXi {
    type Error = Error;

    fn try_from(terms: Vec<XiTerm>) -> Result<Self> {
        Self::new(terms)
    }
}

impl From<MixedXi> for Vec<XiTerm> {
    fn from(xi: MixedXi) -> Self {
        xi.terms
    }
}

impl MixedXi {
    pub fn new(mut terms: Vec<XiTerm>) -> Result<Self> {
        if let Some(t) = terms.iter().find(|t| t.p == 0 || !(t.c >= 0.0) || !t.c.is_finite()) {
            return Err(invalid_arg(format!("bad ξ term: p = {}, c = {}", t.p, t.c)));
        }
        if !terms.iter().any(|t| t.p >= 2 && t.c > 0.0) {
            return Err(invalid_arg("ξ needs a positive coefficient with p ≥ 2"));
        }
        terms.sort_by_key(|t| t.p);
        for w in terms.windows(2) {
            if w[0].p == w[1].p {
                return Err(invalid_arg(format!("ξ power {} listed twice", w[0].p)));
            }
        }
        Ok(Self { terms })
    }

    /// Pure k-spin model, `ξ(s) = s^k`.
    pub fn pure(k: u32) -> Result<Self> {
        Self::new(vec![XiTerm { p: k, c: 1.0 }])
    }

    pub fn terms(&self) -> &[XiTerm] {
        &self.terms
    }

    pub fn xi(&self, s: f64) -> f64 {
        self.terms.iter().map(|t| t.c * s.powi(t.p as i32)).sum()
    }

    pub fn xi_prime(&self, s: f64) -> f64 {
        self.terms.iter().map(|t| t.c * t.p as f64 * s.powi(t.p as i32 - 1)).sum()
    }

    pub fn xi_double_prime(&self, s: f64) -> f64 {
        self.terms
            .iter()
            .filter(|t| t.p >= 2)
            .map(|t| t.c * (t.p * (t.p - 1)) as f64 * s.powi(t.p as i32 - 2))
            .sum()
    }

    /// `∫_lo^hi ξ″(t)·t dt`, termwise `c(p−1)(hi^p − lo^p)`.
    pub fn t_xi_double_prime_integral(&self, lo: f64, hi: f64) -> f64 {
        self.terms
            .iter()
            .map(|t| t.c * (t.p as f64 - 1.0) * (hi.powi(t.p as i32) - lo.powi(t.p as i32)))
            .sum()
    }
}

/// Nondecreasing step function on `[0,1)`: value `m[i]` on `[q[i], q[i+1])`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StepOrderParam {
    q: Vec<f64>,
    m: Vec<f64>,
}

impl StepOrderParam {
    /// `q` runs from 0 to 1 inclusive and has one more entry than `m`.
    pub fn new(q: Vec<f64>, m: Vec<f64>) -> Result<Self> {
        if q.len() != m.len() + 1 || m.is_empty() {
            return Err(invalid_arg(format!("need len(q) = len(m) + 1 ≥ 2, got {} and {}", q.len(), m.len())));
        }
        if q[0] != 0.0 || *q.last().unwrap() != 1.0 {
            return Err(invalid_arg("breakpoints must start at 0 and end at 1"));
        }
        if q.windows(2).any(|w| !(w[0] < w[1])) {
            return Err(invalid_arg(format!("breakpoints not strictly increasing: {q:?}")));
        }
        if !(m[0] >= 0.0) || m.windows(2).any(|w| !(w[0] <= w[1])) || m.iter().any(|v| !v.is_finite()) {
            return Err(invalid_arg(format!("values must be finite, nonnegative and nondecreasing: {m:?}")));
        }
        Ok(Self { q, m })
    }

    /// `f ≡ 0`
    pub fn zero() -> Self {
        Self { q: vec![0.0, 1.0], m: vec![0.0] }
    }

    /// Value 0 on `[0, q₁)` and `ms[i]` on `[qs[i], qs[i+1])`.
    pub fn from_pieces(qs: &[f64], ms: &[f64]) -> Result<Self> {
        if qs.len() != ms.len() {
            return Err(invalid_arg("one breakpoint per nonzero piece"));
        }
        let q = std::iter::once(0.0).chain(qs.iter().copied()).chain(std::iter::once(1.0)).collect();
        let m = std::iter::once(0.0).chain(ms.iter().copied()).collect();
        Self::new(q, m)
    }

    pub fn breakpoints(&self) -> &[f64] {
        &self.q
    }

    pub fn values(&self) -> &[f64] {
        &self.m
    }

    /// Number of pieces after the first.
    pub fn pieces(&self) -> usize {
        self.m.len() - 1
    }

    /// Smoothing widths `a_i = √(ξ′(q_{i+1}) − ξ′(q_i))`.
    pub fn widths(&self, xi: &MixedXi) -> Vec<f64> {
        self.q.windows(2).map(|w| (xi.xi_prime(w[1]) - xi.xi_prime(w[0])).max(0.0).sqrt()).collect()
    }

    /// `B = ½ Σ m_i ∫_{q_i}^{q_{i+1}} ξ″(t) t dt`
    pub fn penalty(&self, xi: &MixedXi) -> f64 {
        0.5 * self.m.iter().zip(self.q.windows(2)).map(|(&m, w)| m * xi.t_xi_double_prime_integral(w[0], w[1])).sum::<f64>()
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ParisiSettings {
    /// Spatial grid points (odd, so that 0 is a node).
    pub grid: usize,
    /// Gauss–Hermite nodes.
    pub quad: usize,
    /// Grid half-width. `None` picks `4·Σa + 8`.
    pub half_width: Option<f64>,
    pub restarts: usize,
}

impl Default for ParisiSettings {
    fn default() -> Self {
        Self { grid: 1601, quad: 61, half_width: None, restarts: 3 }
    }
}

impl ParisiSettings {
    /// Reduced grid and a single restart.
    pub fn quick() -> Self {
        Self { grid: 401, restarts: 1, ..Self::default() }
    }
}

/// `√(2 log 2)`, the random energy model value.
pub fn parisi_upper_bound_value() -> f64 {
    (2.0 * std::f64::consts::LN_2).sqrt()
}

/// `½ + (P/2)·√(k/D)`; an asymptotic statement, meaningful for `D ≫ k`.
pub fn optimal_fraction_kxor(k: usize, d: usize, p: f64) -> Result<f64> {
    if d == 0 {
        return Err(invalid_arg("optimal fraction needs D ≥ 1"));
    }
    Ok(0.5 + p / 2.0 * (k as f64 / d as f64).sqrt())
}

/// MaxCut constant `P* = P(2)/√2`.
pub fn maxcut_constant(p2: f64) -> f64 {
    p2 / std::f64::consts::SQRT_2
}

/// kSAT constant `C_k = B(k)/2^k`.
pub fn ksat_constant(k: usize, b: f64) -> f64 {
    b / 2f64.powi(k as i32)
}

/// Optimal kSAT fraction `1 − 2^{−k} + C/√α` at clause density `alpha`.
pub fn ksat_fraction(k: usize, c: f64, alpha: f64) -> Result<f64> {
    if !(alpha > 0.0) {
        return Err(invalid_arg("clause density must be positive"));
    }
    Ok(1.0 - 2f64.powi(-(k as i32)) + c / alpha.sqrt())
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct KsatRow {
    pub k: usize,
    pub b: f64,
    pub c: f64,
    pub result: ParisiResult,
}

/// Minimizes the functional for a caller-supplied kSAT covariance and
/// reports `B(k)` and `C_k = B(k)/2^k`.
pub fn ksat_mode(k: usize, xi: &MixedXi, pieces: usize, settings: &ParisiSettings, seed: u64) -> Result<KsatRow> {
    let result = minimize_parisi(xi, pieces, settings, seed)?;
    let b = result.value;
    Ok(KsatRow { k, b, c: ksat_constant(k, b), result })
}

/// Model file: `{"xi": [{"p": 3, "c": 1.0}], "pieces": 2, "grid": 1601, "quad": 61}`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ModelConfig {
    pub xi: MixedXi,
    pub pieces: usize,
    #[serde(default = "default_grid")]
    pub grid: usize,
    #[serde(default = "default_quad")]
    pub quad: usize,
}

fn default_grid() -> usize {
    ParisiSettings::default().grid
}

fn default_quad() -> usize {
    ParisiSettings::default().quad
}

impl ModelConfig {
    pub fn read(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let text = std::fs::read_to_string(path)?;
        serde_json::from_str(&text).map_err(|e| Error::Parse { path: path.to_path_buf(), message: e.to_string() })
    }

    pub fn settings(&self) -> ParisiSettings {
        ParisiSettings { grid: self.grid, quad: self.quad, ..ParisiSettings::default() }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    #[test]
    fn xi_derivatives() {
        let xi = MixedXi::new(vec![XiTerm { p: 3, c: 0.5 }, XiTerm { p: 1, c: 0.2 }]).unwrap();
        assert_abs_diff_eq!(xi.xi(0.5), 0.5 * 0.125 + 0.1);
        assert_abs_diff_eq!(xi.xi_prime(0.5), 1.5 * 0.25 + 0.2);
        assert_abs_diff_eq!(xi.xi_double_prime(0.5), 3.0 * 0.5);
        assert_abs_diff_eq!(xi.t_xi_double_prime_integral(0.0, 1.0), 1.0);
    }

    #[test]
    fn xi_validation() {
        assert!(MixedXi::new(vec![XiTerm { p: 1, c: 1.0 }]).is_err());
        assert!(MixedXi::new(vec![XiTerm { p: 2, c: -1.0 }]).is_err());
        assert!(MixedXi::new(vec![XiTerm { p: 2, c: 1.0 }, XiTerm { p: 2, c: 1.0 }]).is_err());
    }

    #[test]
    fn order_param_validation() {
        assert!(StepOrderParam::from_pieces(&[0.5, 0.3], &[1.0, 2.0]).is_err());
        assert!(StepOrderParam::from_pieces(&[0.3, 0.5], &[2.0, 1.0]).is_err());
        assert!(StepOrderParam::from_pieces(&[0.3, 0.5], &[1.0, 2.0]).is_ok());
    }

    #[test]
    fn converters() {
        assert_abs_diff_eq!(optimal_fraction_kxor(2, 2, 1.0799).unwrap(), 1.03995, epsilon = 1e-12);
        assert_abs_diff_eq!(optimal_fraction_kxor(3, 100, 1.1504).unwrap(), 0.5 + 0.5752 * 0.03f64.sqrt(), epsilon = 1e-12);
        assert_abs_diff_eq!(maxcut_constant(1.07928), 0.7632, epsilon = 1e-4);
        assert_abs_diff_eq!(parisi_upper_bound_value(), 1.177_410_022_515_474_6, epsilon = 1e-15);
    }

    #[test]
    fn model_config_json() {
        let text = r#"{"xi": [{"p": 3, "c": 1.0}], "pieces": 2}"#;
        let cfg: ModelConfig = serde_json::from_str(text).unwrap();
        assert_eq!(cfg.grid, 1601);
        assert_eq!(cfg.xi, MixedXi::pure(3).unwrap());
    }
}
