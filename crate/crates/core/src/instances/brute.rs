use super::{assignment_from_mask, Fraction, XorInstance};
use crate::error::{Error, Result};

pub const DEFAULT_BRUTE_FORCE_CAP: usize = 24;

/// Exact optimum found by exhaustive enumeration.
#[derive(Debug, Clone, PartialEq)]
pub struct Optimum {
    pub fraction: Fraction,
    /// Lexicographically smallest optimal assignment, ordering −1 before +1.
    pub assignment: Vec<i8>,
}

struct Masks {
    masks: Vec<u64>,
    odd: Vec<bool>,
}

impl Masks {
    fn new(inst: &XorInstance, cap: usize) -> Result<Self> {
        let n = inst.n();
        if n > cap || n > 63 {
            return Err(Error::TooManyVariables { n, cap: cap.min(63) });
        }
        if inst.num_clauses() == 0 {
            return Err(Error::InvalidInstance("instance has no clauses".into()));
        }
        let masks = inst.clauses().iter().map(|c| c.vars.iter().fold(0u64, |m, &v| m | 1 << v)).collect();
        let odd = inst.clauses().iter().map(|c| c.sign == -1).collect();
        Ok(Self { masks, odd })
    }

    #[inline]
    fn count(&self, x: u64) -> usize {
        self.masks
            .iter()
            .zip(&self.odd)
            .filter(|&(&m, &odd)| ((m & x).count_ones() & 1 == 1) == odd)
            .count()
    }
}

/// `a` precedes `b` lexicographically when read as ±1 vectors from index 0
/// with −1 < +1 (bit set ⇔ −1).
fn lex_less(a: u64, b: u64) -> bool {
    let d = a ^ b;
    d != 0 && a & (d & d.wrapping_neg()) != 0
}

pub fn brute_force_optimum(inst: &XorInstance) -> Result<Optimum> {
    brute_force_optimum_capped(inst, DEFAULT_BRUTE_FORCE_CAP)
}

pub fn brute_force_optimum_capped(inst: &XorInstance, cap: usize) -> Result<Optimum> {
    let masks = Masks::new(inst, cap)?;
    let mut best = (0usize, 0u64);
    for x in 0..1u64 << inst.n() {
        let s = masks.count(x);
        if s > best.0 || (s == best.0 && lex_less(x, best.1)) {
            best = (s, x);
        }
    }
    Ok(Optimum {
        fraction: Fraction { satisfied: best.0, total: inst.num_clauses() },
        assignment: assignment_from_mask(best.1, inst.n()),
    })
}

/// Every optimal assignment, in increasing mask order.
pub fn all_optima(inst: &XorInstance, cap: usize) -> Result<(Fraction, Vec<Vec<i8>>)> {
    let masks = Masks::new(inst, cap)?;
    let mut best = 0usize;
    let mut winners: Vec<u64> = Vec::new();
    for x in 0..1u64 << inst.n() {
        let s = masks.count(x);
        if s > best {
            best = s;
            winners.clear();
        }
        if s == best {
            winners.push(x);
        }
    }
    Ok((
        Fraction { satisfied: best, total: inst.num_clauses() },
        winners.into_iter().map(|x| assignment_from_mask(x, inst.n())).collect(),
    ))
}
