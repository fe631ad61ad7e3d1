use std::collections::HashMap;

use super::XorInstance;

/// Per-variable clause counts of an instance.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DegreeProfile {
    pub degrees: Vec<usize>,
}

impl DegreeProfile {
    pub fn of(inst: &XorInstance) -> Self {
        Self { degrees: inst.degrees() }
    }

    /// `(D_a, …, D_k)`: the number of OTHER clauses each member of clause
    /// `clause` sits in.
    pub fn other_degrees(&self, inst: &XorInstance, clause: usize) -> Vec<usize> {
        inst.clauses()[clause].vars.iter().map(|&v| self.degrees[v] - 1).collect()
    }

    /// `Some(d)` when every variable has degree `d`.
    pub fn regular_degree(&self) -> Option<usize> {
        let first = *self.degrees.first()?;
        self.degrees.iter().all(|&d| d == first).then_some(first)
    }
}

/// True iff every variable pair co-occurs in at most one clause and, for every
/// clause, no two of its members have a common neighbor outside the clause.
pub fn check_triangle_free(inst: &XorInstance) -> bool {
    let mut pair_count: HashMap<(usize, usize), u32> = HashMap::new();
    for c in inst.clauses() {
        for (i, &u) in c.vars.iter().enumerate() {
            for &v in &c.vars[i + 1..] {
                let e = pair_count.entry((u, v)).or_insert(0);
                *e += 1;
                if *e > 1 {
                    return false;
                }
            }
        }
    }
    let sets: Vec<&[usize]> = inst.clauses().iter().map(|c| c.vars.as_slice()).collect();
    let inc = inst.incidence();
    let mut scratch = Scratch::new(inst.n());
    (0..sets.len()).all(|ci| clause_violations(&sets, &inc, ci, &mut scratch) == 0)
}

/// Reusable marker arrays for [`clause_violations`].
pub(crate) struct Scratch {
    stamp: Vec<u32>,
    owner: Vec<u32>,
    epoch: u32,
}

impl Scratch {
    pub(crate) fn new(n: usize) -> Self {
        Self { stamp: vec![0; n], owner: vec![0; n], epoch: 0 }
    }
}

/// Local defect count for clause `ci` over raw clause lists: repeated
/// members, other clauses overlapping in two or more variables, and member
/// pairs with a common neighbor outside the clause. Zero for every clause iff
/// the configuration is simple and triangle-free.
pub(crate) fn clause_violations<C: AsRef<[usize]>>(
    clauses: &[C],
    incidence: &[Vec<usize>],
    ci: usize,
    scratch: &mut Scratch,
) -> usize {
    let c = clauses[ci].as_ref();
    let mut bad = 0;
    for (i, &u) in c.iter().enumerate() {
        if c[i + 1..].contains(&u) {
            bad += 1;
        }
    }

    let mut overlapping: Vec<usize> = Vec::new();
    for &u in c {
        for &other in &incidence[u] {
            if other != ci && !overlapping.contains(&other) {
                let shared = clauses[other].as_ref().iter().filter(|w| c.contains(w)).count();
                if shared >= 2 {
                    overlapping.push(other);
                }
            }
        }
    }
    bad += overlapping.len();

    // mark outside neighbors with the index of the member that reaches them
    scratch.epoch = scratch.epoch.wrapping_add(1);
    if scratch.epoch == 0 {
        scratch.stamp.fill(0);
        scratch.epoch = 1;
    }
    let k = c.len();
    let mut pairs = vec![false; k * k];
    for (i, &u) in c.iter().enumerate() {
        if c[..i].contains(&u) {
            continue;
        }
        for &other in &incidence[u] {
            if other == ci {
                continue;
            }
            for &w in clauses[other].as_ref() {
                if c.contains(&w) {
                    continue;
                }
                if scratch.stamp[w] == scratch.epoch {
                    let j = scratch.owner[w] as usize;
                    if j != i {
                        pairs[j.min(i) * k + j.max(i)] = true;
                    }
                } else {
                    scratch.stamp[w] = scratch.epoch;
                    scratch.owner[w] = i as u32;
                }
            }
        }
    }
    bad + pairs.iter().filter(|&&p| p).count()
}
