//! Depth-1 QAOA on triangle-free Max kXOR instances.
//!
//! On a triangle-free instance the depth-1 expectation of a clause depends
//! only on the degrees of its members, which gives a closed form. The
//! [`statevector`] submodule evaluates the same quantity by brute-force state
//! evolution and serves as the oracle.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::instances::{DegreeProfile, XorInstance};

mod optimize;
pub mod statevector;

pub use optimize::{
    dense_scan_optimum, large_d_constant, optimize_finite_d, stationarity_residual, LargeDConstant,
    QaoaClosedFormResult,
};
pub use statevector::{statevector_expectation, QaoaSimulator, STATEVECTOR_CAP};

/// Phase angle `gamma` and mixing angle `beta`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct QaoaAngles {
    pub gamma: f64,
    pub beta: f64,
}

impl QaoaAngles {
    pub fn new(gamma: f64, beta: f64) -> Self {
        Self { gamma, beta }
    }

    /// cos 2β
    pub fn p(&self) -> f64 {
        (2.0 * self.beta).cos()
    }

    /// sin 2β
    pub fn q(&self) -> f64 {
        (2.0 * self.beta).sin()
    }

    /// cos γ
    pub fn c(&self) -> f64 {
        self.gamma.cos()
    }

    /// sin γ
    pub fn s(&self) -> f64 {
        self.gamma.sin()
    }
}

/// Per-clause expectation `E₁` on a (D+1)-regular triangle-free instance:
/// `(s/2)·Im[(p + i q c^D)^k]`. The satisfying fraction is `½ + E₁`.
pub fn closed_form_regular(k: usize, d: usize, angles: QaoaAngles) -> f64 {
    let z = Complex64::new(angles.p(), angles.q() * angles.c().powi(d as i32));
    0.5 * angles.s() * z.powu(k as u32).im
}

/// The same expectation evaluated as `−(i s/4)·(z^k − z̄^k)` in complex
/// arithmetic. The imaginary part is rounding residue only.
pub fn closed_form_regular_complex(k: usize, d: usize, angles: QaoaAngles) -> Complex64 {
    let z = Complex64::new(angles.p(), angles.q() * angles.c().powi(d as i32));
    let diff = z.powu(k as u32) - z.conj().powu(k as u32);
    Complex64::new(0.0, -0.25 * angles.s()) * diff
}

/// Per-clause expectation for a clause whose members sit in `other_degrees[i]`
/// other clauses each. Sums over odd subsets `I` of the members with weight
/// `c^{Σ_{i∈I} D_i}`.
pub fn closed_form_triangle_free(other_degrees: &[usize], angles: QaoaAngles) -> f64 {
    let k = other_degrees.len();
    let (p, q, c) = (angles.p(), angles.q(), angles.c());
    // elementary symmetric polynomials of the c^{D_i}
    let mut e = vec![0.0; k + 1];
    e[0] = 1.0;
    for &d in other_degrees {
        let x = c.powi(d as i32);
        for j in (1..=k).rev() {
            e[j] += x * e[j - 1];
        }
    }
    let mut total = 0.0;
    for j in (1..=k).step_by(2) {
        let sign = if (j - 1) / 2 % 2 == 0 { 1.0 } else { -1.0 };
        total += sign * q.powi(j as i32) * p.powi((k - j) as i32) * e[j];
    }
    0.5 * angles.s() * total
}

/// Per-clause closed forms for every clause of `inst`, using each member's
/// actual degree. Only meaningful when the instance is triangle-free.
pub fn instance_clause_expectations(inst: &XorInstance, angles: QaoaAngles) -> Vec<f64> {
    let profile = DegreeProfile::of(inst);
    (0..inst.num_clauses())
        .map(|ci| closed_form_triangle_free(&profile.other_degrees(inst, ci), angles))
        .collect()
}

/// Clause-averaged closed-form satisfying fraction of a triangle-free
/// instance.
pub fn instance_closed_form(inst: &XorInstance, angles: QaoaAngles) -> Result<f64> {
    if inst.num_clauses() == 0 {
        return Err(Error::InvalidInstance("instance has no clauses".into()));
    }
    inst.require_consistent()?;
    let e = instance_clause_expectations(inst, angles);
    Ok(0.5 + e.iter().sum::<f64>() / e.len() as f64)
}
