//! Dense statevector evaluation of depth-1 QAOA, used as an oracle for the
//! closed forms.

use num_complex::Complex64;

use super::QaoaAngles;
use crate::error::{Error, Result};
use crate::instances::XorInstance;

pub const STATEVECTOR_CAP: usize = 24;

/// Precomputed cost diagonal of an instance. Basis state `x` encodes the
/// assignment with bit `i` set ⇔ variable `i` is −1.
#[derive(Debug, Clone)]
pub struct QaoaSimulator {
    n: usize,
    masks: Vec<u64>,
    signs: Vec<i8>,
    cost: Vec<f64>,
}

impl QaoaSimulator {
    pub fn new(inst: &XorInstance) -> Result<Self> {
        let n = inst.n();
        if n > STATEVECTOR_CAP {
            return Err(Error::TooManyVariables { n, cap: STATEVECTOR_CAP });
        }
        if inst.num_clauses() == 0 {
            return Err(Error::InvalidInstance("instance has no clauses".into()));
        }
        let masks = inst.clauses().iter().map(|c| c.vars.iter().fold(0u64, |m, &v| m | 1 << v)).collect();
        let signs = inst.clauses().iter().map(|c| c.sign).collect();
        let mut sim = Self { n, masks, signs, cost: Vec::new() };
        sim.rebuild_cost();
        Ok(sim)
    }

    pub fn num_clauses(&self) -> usize {
        self.masks.len()
    }

    /// Replace the clause signs, keeping the clause structure.
    pub fn set_signs(&mut self, signs: &[i8]) -> Result<()> {
        if signs.len() != self.masks.len() || signs.iter().any(|&s| s != 1 && s != -1) {
            return Err(Error::InvalidArgument(format!("expected {} signs of ±1", self.masks.len())));
        }
        self.signs.copy_from_slice(signs);
        self.rebuild_cost();
        Ok(())
    }

    fn rebuild_cost(&mut self) {
        let dim = 1usize << self.n;
        self.cost = (0..dim as u64)
            .map(|x| {
                self.masks
                    .iter()
                    .zip(&self.signs)
                    .filter(|&(&m, &s)| ((m & x).count_ones() & 1 == 1) == (s == -1))
                    .count() as f64
            })
            .collect();
    }

    /// `U_B U_C |+⟩^n`
    pub fn evolve(&self, angles: QaoaAngles) -> Vec<Complex64> {
        let dim = 1usize << self.n;
        let amp = 1.0 / (dim as f64).sqrt();
        let mut psi: Vec<Complex64> =
            self.cost.iter().map(|&c| Complex64::from_polar(amp, -angles.gamma * c)).collect();
        let (cb, sb) = (angles.beta.cos(), angles.beta.sin());
        let mix = Complex64::new(0.0, -sb);
        for j in 0..self.n {
            let bit = 1usize << j;
            for x in 0..dim {
                if x & bit == 0 {
                    let (a, b) = (psi[x], psi[x | bit]);
                    psi[x] = a * cb + b * mix;
                    psi[x | bit] = a * mix + b * cb;
                }
            }
        }
        psi
    }

    /// Expected satisfying fraction.
    pub fn expectation(&self, angles: QaoaAngles) -> f64 {
        let psi = self.evolve(angles);
        let total: f64 = psi.iter().zip(&self.cost).map(|(a, &c)| a.norm_sqr() * c).sum();
        total / self.masks.len() as f64
    }

    /// `⟨(sign/2)·Z…Z⟩` per clause, in clause order.
    pub fn clause_expectations(&self, angles: QaoaAngles) -> Vec<f64> {
        let probs: Vec<f64> = self.evolve(angles).iter().map(|a| a.norm_sqr()).collect();
        self.masks
            .iter()
            .zip(&self.signs)
            .map(|(&m, &s)| {
                let z: f64 = probs
                    .iter()
                    .enumerate()
                    .map(|(x, &p)| if (m & x as u64).count_ones() & 1 == 0 { p } else { -p })
                    .sum();
                0.5 * s as f64 * z
            })
            .collect()
    }
}

/// Exact depth-1 expected satisfying fraction of `inst`.
pub fn statevector_expectation(inst: &XorInstance, angles: QaoaAngles) -> Result<f64> {
    Ok(QaoaSimulator::new(inst)?.expectation(angles))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::instances::Clause;
    use crate::qaoa::closed_form_regular;
    use approx::assert_abs_diff_eq;
    use std::f64::consts::PI;

    fn ring(n: usize) -> XorInstance {
        XorInstance::new(2, n, (0..n).map(|i| Clause::new(vec![i, (i + 1) % n], -1)).collect()).unwrap()
    }

    #[test]
    fn eight_cycle_at_ring_angles() {
        let f = statevector_expectation(&ring(8), QaoaAngles::new(PI / 4.0, PI / 8.0)).unwrap();
        assert_abs_diff_eq!(f, 0.75, epsilon = 1e-12);
    }

    #[test]
    fn zero_angles_give_half() {
        let f = statevector_expectation(&ring(5), QaoaAngles::new(0.0, 0.0)).unwrap();
        assert_abs_diff_eq!(f, 0.5, epsilon = 1e-14);
    }

    #[test]
    fn per_clause_matches_regular_closed_form() {
        let sim = QaoaSimulator::new(&ring(9)).unwrap();
        let a = QaoaAngles::new(0.7, 0.3);
        for e in sim.clause_expectations(a) {
            assert_abs_diff_eq!(e, closed_form_regular(2, 1, a), epsilon = 1e-12);
        }
    }

    #[test]
    fn cap() {
        let inst = XorInstance::new(2, 25, vec![Clause::new(vec![0, 24], 1)]).unwrap();
        assert!(matches!(QaoaSimulator::new(&inst), Err(Error::TooManyVariables { .. })));
    }
}
