use std::num::NonZeroUsize;

use gauss_quad::{GaussHermite, GaussLegendre};
use statrs::function::erf::erfc;

use super::{MixedXi, ParisiSettings, StepOrderParam};
use crate::error::{invalid_arg, Error, Result};

/// Widths below this are treated as no smoothing at all.
const ZERO_WIDTH: f64 = 1e-12;

/// Every `Ψ_i` on the spatial grid, `psi[0]` first and `psi[μ+1] = |x|` last.
#[derive(Debug, Clone)]
pub struct PsiLevels {
    pub x: Vec<f64>,
    pub psi: Vec<Vec<f64>>,
    pub half_width: f64,
}

/// Standard normal nodes and weights, `E[f(z)] ≈ Σ w_j f(z_j)`.
pub(crate) fn normal_rule(quad: usize) -> Result<Vec<(f64, f64)>> {
    let deg = NonZeroUsize::new(quad).ok_or_else(|| invalid_arg("quadrature order must be positive"))?;
    let s = std::f64::consts::PI.sqrt();
    Ok(GaussHermite::new(deg)
        .as_node_weight_pairs()
        .iter()
        .map(|&(x, w)| (x * std::f64::consts::SQRT_2, w / s))
        .collect())
}

/// `ln Φ(z)` without underflow in the far left tail.
fn ln_norm_cdf(z: f64) -> f64 {
    if z > -30.0 {
        (0.5 * erfc(-z / std::f64::consts::SQRT_2)).ln()
    } else {
        let z2 = z * z;
        -0.5 * z2 - (-z).ln() - 0.5 * (2.0 * std::f64::consts::PI).ln() + (1.0 - 1.0 / z2 + 3.0 / (z2 * z2)).ln()
    }
}

fn norm_cdf(z: f64) -> f64 {
    0.5 * erfc(-z / std::f64::consts::SQRT_2)
}

fn logaddexp(a: f64, b: f64) -> f64 {
    let hi = a.max(b);
    if hi == f64::NEG_INFINITY {
        return hi;
    }
    hi + ((a - hi).exp() + (b - hi).exp()).ln()
}

/// Uniform grid on `[−L, L]`, cubic inside and slope-1 extrapolation outside.
struct Grid<'a> {
    lo: f64,
    h: f64,
    vals: &'a [f64],
}

impl Grid<'_> {
    #[inline]
    fn at(&self, y: f64) -> f64 {
        let n = self.vals.len();
        let u = (y - self.lo) / self.h;
        if u <= 0.0 {
            return self.vals[0] - u * self.h;
        }
        let hi_u = (n - 1) as f64;
        if u >= hi_u {
            return self.vals[n - 1] + (u - hi_u) * self.h;
        }
        let i = u as usize;
        let t = u - i as f64;
        let v = self.vals;
        if i == 0 || i + 2 >= n {
            return v[i] + t * (v[i + 1] - v[i]);
        }
        // Catmull–Rom cubic
        let (p0, p1, p2, p3) = (v[i - 1], v[i], v[i + 1], v[i + 2]);
        p1 + 0.5 * t * (p2 - p0 + t * (2.0 * p0 - 5.0 * p1 + 4.0 * p2 - p3 + t * (3.0 * (p1 - p2) + p3 - p0)))
    }
}

/// Level from `|x|` in closed form: the Gaussian smoothing of `e^{m|x|}` is a
/// sum of two shifted normal CDFs.
fn abs_level(x: &[f64], m: f64, a: f64) -> Vec<f64> {
    if a < ZERO_WIDTH {
        return x.iter().map(|v| v.abs()).collect();
    }
    if m > 0.0 {
        let shift = m * a * a;
        x.iter()
            .map(|&v| {
                let t1 = m * v + 0.5 * m * shift + ln_norm_cdf((v + shift) / a);
                let t2 = -m * v + 0.5 * m * shift + ln_norm_cdf((-v + shift) / a);
                logaddexp(t1, t2) / m
            })
            .collect()
    } else {
        let c = a * (2.0 / std::f64::consts::PI).sqrt();
        x.iter().map(|&v| c * (-v * v / (2.0 * a * a)).exp() + v * (1.0 - 2.0 * norm_cdf(-v / a))).collect()
    }
}

const PANEL_ORDER: usize = 8;
const PANEL_WIDTH: f64 = 1.5;
const GRADING_STEPS: usize = 3;
const GRADING_RATIO: f64 = 0.25;
/// Standard deviations kept beyond the tilt `m·a` of the integrand.
const TAIL: f64 = 8.5;

fn normal_pdf(z: f64) -> f64 {
    (-0.5 * z * z).exp() / (2.0 * std::f64::consts::PI).sqrt()
}

/// Composite Gauss–Legendre rule for `E[g(x + a z)]` over `z ∈ ±(TAIL + m·a)`.
/// The panel holding `z = −x/a`, where every level is least smooth, is split
/// there; a single Gauss–Hermite rule smears that kink.
struct PanelRule {
    gl: Vec<(f64, f64)>,
    lo: f64,
    width: f64,
    panels: usize,
    /// `(z, w·φ(z))` for every panel, panel after panel.
    nodes: Vec<(f64, f64)>,
}

impl PanelRule {
    fn new(m: f64, a: f64) -> Self {
        let gl = GaussLegendre::new(NonZeroUsize::new(PANEL_ORDER).expect("nonzero"))
            .as_node_weight_pairs()
            .iter()
            .map(|&(t, w)| (0.5 * (t + 1.0), 0.5 * w))
            .collect();
        let half = TAIL + m * a;
        let panels = (2.0 * half / PANEL_WIDTH).ceil() as usize;
        let mut rule = Self { gl, lo: -half, width: 2.0 * half / panels as f64, panels, nodes: Vec::new() };
        let mut nodes = Vec::with_capacity(panels * PANEL_ORDER);
        for p in 0..panels {
            let z0 = rule.lo + p as f64 * rule.width;
            rule.push_panel(z0, z0 + rule.width, &mut nodes);
        }
        rule.nodes = nodes;
        rule
    }

    fn push_panel(&self, z0: f64, z1: f64, out: &mut Vec<(f64, f64)>) {
        let len = z1 - z0;
        out.extend(self.gl.iter().map(|&(t, w)| {
            let z = z0 + len * t;
            (z, w * len * normal_pdf(z))
        }));
    }

    /// Subpanels from `from` to `to`, geometrically refined towards `from`.
    fn push_graded(&self, from: f64, to: f64, out: &mut Vec<(f64, f64)>) {
        let mut outer = 1.0;
        for _ in 0..GRADING_STEPS {
            let inner = outer * GRADING_RATIO;
            let (a, b) = (from + (to - from) * inner, from + (to - from) * outer);
            self.push_panel(a.min(b), a.max(b), out);
            outer = inner;
        }
        let b = from + (to - from) * outer;
        self.push_panel(from.min(b), from.max(b), out);
    }

    /// Nodes for the point `x`, with the kink panel split.
    fn fill(&self, split: f64, out: &mut Vec<(f64, f64)>) {
        out.clear();
        let u = (split - self.lo) / self.width;
        if !(u > 0.0 && u < self.panels as f64) {
            out.extend_from_slice(&self.nodes);
            return;
        }
        let p = (u as usize).min(self.panels - 1);
        let z0 = self.lo + p as f64 * self.width;
        out.extend_from_slice(&self.nodes[..p * PANEL_ORDER]);
        self.push_graded(split, z0, out);
        self.push_graded(split, z0 + self.width, out);
        out.extend_from_slice(&self.nodes[(p + 1) * PANEL_ORDER..]);
    }
}

/// `(1/m) log E[e^{mΨ(x + a z)}]`, or the plain expectation when `m = 0`.
pub(crate) fn smooth_level(x: &[f64], next: &[f64], m: f64, a: f64) -> Vec<f64> {
    if a < ZERO_WIDTH {
        return next.to_vec();
    }
    let grid = Grid { lo: x[0], h: x[1] - x[0], vals: next };
    let rule = PanelRule::new(m, a);
    let mut nodes = Vec::with_capacity(rule.nodes.len() + PANEL_ORDER);
    let mut vals = Vec::with_capacity(rule.nodes.len() + PANEL_ORDER);
    x.iter()
        .map(|&xg| {
            rule.fill(-xg / a, &mut nodes);
            vals.clear();
            vals.extend(nodes.iter().map(|&(z, _)| grid.at(xg + a * z)));
            let wsum: f64 = nodes.iter().map(|&(_, w)| w).sum();
            if m > 0.0 {
                let (lo, hi) = vals.iter().fold((f64::INFINITY, f64::NEG_INFINITY), |(a, b), &v| (a.min(v), b.max(v)));
                if m * (hi - lo) < 1.0 {
                    // every term is within e^{-1} of the largest: expm1 keeps small m accurate
                    let s: f64 = vals.iter().zip(&nodes).map(|(&v, &(_, w))| w * (m * (v - hi)).exp_m1()).sum();
                    hi + (s + wsum - 1.0).ln_1p() / m
                } else {
                    let top = vals.iter().zip(&nodes).map(|(&v, &(_, w))| m * v + w.ln()).fold(f64::NEG_INFINITY, f64::max);
                    let s: f64 = vals.iter().zip(&nodes).map(|(&v, &(_, w))| (m * v + w.ln() - top).exp()).sum();
                    (top + s.ln()) / m
                }
            } else {
                vals.iter().zip(&nodes).map(|(&v, &(_, w))| w * v).sum::<f64>() / wsum
            }
        })
        .collect()
}

fn random_field_width(xi: &MixedXi) -> f64 {
    xi.xi_prime(0.0).max(0.0).sqrt()
}

/// Runs the backward recursion and keeps every level.
pub fn psi_levels(xi: &MixedXi, op: &StepOrderParam, settings: &ParisiSettings) -> Result<PsiLevels> {
    if settings.grid < 3 {
        return Err(invalid_arg("spatial grid needs at least 3 points"));
    }
    normal_rule(settings.quad)?;
    let a = op.widths(xi);
    let required = 4.0 * (a.iter().sum::<f64>() + random_field_width(xi));
    let half_width = match settings.half_width {
        Some(l) if l < required => return Err(Error::GridTooSmall { required, actual: l }),
        Some(l) => l,
        None => required + 8.0,
    };
    let n = settings.grid;
    let h = 2.0 * half_width / (n - 1) as f64;
    let x: Vec<f64> = (0..n).map(|i| -half_width + h * i as f64).collect();

    let m = op.values();
    let levels = m.len();
    let mut psi = vec![Vec::new(); levels + 1];
    psi[levels] = x.iter().map(|v| v.abs()).collect();
    psi[levels - 1] = abs_level(&x, m[levels - 1], a[levels - 1]);
    for i in (0..levels - 1).rev() {
        psi[i] = smooth_level(&x, &psi[i + 1], m[i], a[i]);
    }
    Ok(PsiLevels { x, psi, half_width })
}

/// `Ψ₀(0) − B`. A linear term in `ξ` adds an outer expectation over the
/// random field.
pub fn evaluate_functional(xi: &MixedXi, op: &StepOrderParam, settings: &ParisiSettings) -> Result<f64> {
    let levels = psi_levels(xi, op, settings)?;
    let grid = Grid { lo: levels.x[0], h: levels.x[1] - levels.x[0], vals: &levels.psi[0] };
    let field = random_field_width(xi);
    let psi0 = if field > 0.0 {
        normal_rule(settings.quad)?.iter().map(|&(z, w)| w * grid.at(field * z)).sum()
    } else {
        grid.at(0.0)
    };
    Ok(psi0 - op.penalty(xi))
}
