//! Max kXOR instances.
//!
//! A clause fixes the parity of `k` variables: it is satisfied by `x ∈ {±1}ⁿ`
//! iff `Π_{i ∈ vars} x_i = sign`. The cost Hamiltonian coefficient of the
//! clause is `sign / 2`.

mod brute;
mod generate;
mod io;
mod structure;

use std::collections::HashMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub use brute::{all_optima, brute_force_optimum, brute_force_optimum_capped, Optimum, DEFAULT_BRUTE_FORCE_CAP};
pub use generate::{generate_regular_triangle_free, generate_with_options, GenerateOptions};
pub use io::{from_json_str, read_instance, to_json_string, write_instance};
pub(crate) use io::write_atomic;
pub use structure::{check_triangle_free, DegreeProfile};

/// One parity constraint.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Clause {
    pub vars: Vec<usize>,
    pub sign: i8,
}

impl Clause {
    pub fn new(mut vars: Vec<usize>, sign: i8) -> Self {
        vars.sort_unstable();
        Self { vars, sign }
    }

    /// Whether `assignment` satisfies this clause. Entries must be ±1.
    pub fn is_satisfied(&self, assignment: &[i8]) -> bool {
        let prod: i8 = self.vars.iter().map(|&v| assignment[v]).product();
        prod == self.sign
    }
}

/// A k-uniform Max kXOR instance in canonical form: variables sorted within
/// each clause and clauses sorted lexicographically.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "RawInstance")]
pub struct XorInstance {
    k: usize,
    n: usize,
    clauses: Vec<Clause>,
}

#[derive(Deserialize)]
struct RawInstance {
    k: usize,
    n: usize,
    clauses: Vec<Clause>,
}

impl TryFrom<RawInstance> for XorInstance {
    type Error = Error;
    fn try_from(raw: RawInstance) -> Result<Self> {
        XorInstance::new(raw.k, raw.n, raw.clauses)
    }
}

impl XorInstance {
    /// Validates and canonicalizes. Fails on wrong arity, repeated or
    /// out-of-range variables, signs other than ±1, and duplicate clauses.
    /// Contradictory pairs (same variables, opposite signs) are accepted; see
    /// [`XorInstance::contradictory_pairs`].
    pub fn new(k: usize, n: usize, clauses: Vec<Clause>) -> Result<Self> {
        if k < 2 {
            return Err(Error::InvalidInstance(format!("arity k = {k} must be at least 2")));
        }
        let mut canon = Vec::with_capacity(clauses.len());
        for (idx, clause) in clauses.into_iter().enumerate() {
            if clause.sign != 1 && clause.sign != -1 {
                return Err(Error::InvalidInstance(format!("clause {idx}: sign {} is not ±1", clause.sign)));
            }
            let c = Clause::new(clause.vars, clause.sign);
            if let Some(&v) = c.vars.iter().find(|&&v| v >= n) {
                return Err(Error::InvalidInstance(format!("clause {idx}: variable {v} out of range for n = {n}")));
            }
            let mut distinct = c.vars.clone();
            distinct.dedup();
            if distinct.len() != k || c.vars.len() != k {
                return Err(Error::InvalidInstance(format!(
                    "clause {idx}: expected {k} distinct variables, found {} in {:?}",
                    distinct.len(),
                    c.vars
                )));
            }
            canon.push(c);
        }
        canon.sort();
        if let Some(w) = canon.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::InvalidInstance(format!("duplicate clause {:?} sign {}", w[0].vars, w[0].sign)));
        }
        Ok(Self { k, n, clauses: canon })
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn clauses(&self) -> &[Clause] {
        &self.clauses
    }

    pub fn num_clauses(&self) -> usize {
        self.clauses.len()
    }

    /// Index pairs of clauses on the same variable set with opposite signs.
    pub fn contradictory_pairs(&self) -> Vec<(usize, usize)> {
        let mut seen: HashMap<&[usize], usize> = HashMap::new();
        let mut out = Vec::new();
        for (i, c) in self.clauses.iter().enumerate() {
            if let Some(&j) = seen.get(c.vars.as_slice()) {
                out.push((j, i));
            } else {
                seen.insert(&c.vars, i);
            }
        }
        out
    }

    pub fn has_contradictions(&self) -> bool {
        !self.contradictory_pairs().is_empty()
    }

    /// Error unless the instance is free of contradictory pairs. Analytic
    /// routines call this before using closed forms.
    pub fn require_consistent(&self) -> Result<()> {
        match self.contradictory_pairs().first() {
            None => Ok(()),
            Some(&(i, j)) => Err(Error::InvalidInstance(format!(
                "clauses {i} and {j} constrain {:?} to opposite parities",
                self.clauses[i].vars
            ))),
        }
    }

    /// Number of clauses containing each variable.
    pub fn degrees(&self) -> Vec<usize> {
        let mut deg = vec![0; self.n];
        for c in &self.clauses {
            for &v in &c.vars {
                deg[v] += 1;
            }
        }
        deg
    }

    /// Clause indices incident to each variable.
    pub fn incidence(&self) -> Vec<Vec<usize>> {
        let mut inc = vec![Vec::new(); self.n];
        for (ci, c) in self.clauses.iter().enumerate() {
            for &v in &c.vars {
                inc[v].push(ci);
            }
        }
        inc
    }

    /// Same clauses with every sign negated.
    pub fn flip_all_signs(&self) -> Self {
        let clauses = self.clauses.iter().map(|c| Clause { vars: c.vars.clone(), sign: -c.sign }).collect();
        Self::new(self.k, self.n, clauses).expect("negating signs preserves validity")
    }

    fn check_assignment(&self, assignment: &[i8]) -> Result<()> {
        if assignment.len() != self.n {
            return Err(Error::InvalidArgument(format!(
                "assignment has length {}, instance has {} variables",
                assignment.len(),
                self.n
            )));
        }
        if assignment.iter().any(|&x| x != 1 && x != -1) {
            return Err(Error::InvalidArgument("assignment entries must be ±1".into()));
        }
        Ok(())
    }

    pub fn satisfied_count(&self, assignment: &[i8]) -> Result<usize> {
        self.check_assignment(assignment)?;
        Ok(self.clauses.iter().filter(|c| c.is_satisfied(assignment)).count())
    }

    /// Fraction of satisfied clauses.
    pub fn evaluate_fraction(&self, assignment: &[i8]) -> Result<f64> {
        if self.clauses.is_empty() {
            return Err(Error::InvalidInstance("instance has no clauses".into()));
        }
        Ok(self.satisfied_count(assignment)? as f64 / self.clauses.len() as f64)
    }
}

/// Free-function form of [`XorInstance::evaluate_fraction`].
pub fn evaluate_fraction(inst: &XorInstance, assignment: &[i8]) -> Result<f64> {
    inst.evaluate_fraction(assignment)
}

/// Exact ratio of satisfied clauses.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Fraction {
    pub satisfied: usize,
    pub total: usize,
}

impl Fraction {
    pub fn value(&self) -> f64 {
        self.satisfied as f64 / self.total as f64
    }

    /// Cross-multiplied comparison, exact.
    pub fn same_ratio(&self, num: usize, den: usize) -> bool {
        self.satisfied * den == num * self.total
    }
}

impl fmt::Display for Fraction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.satisfied, self.total)
    }
}

/// Decode bitmask `mask` (bit i set ⇔ x_i = −1) into a ±1 vector.
pub fn assignment_from_mask(mask: u64, n: usize) -> Vec<i8> {
    (0..n).map(|i| if mask >> i & 1 == 1 { -1 } else { 1 }).collect()
}
