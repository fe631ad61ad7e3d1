//! Fully satisfiable Max 3XOR instances with a partial bit-flip symmetry.
//!
//! Every edge `uv` of a D-regular inner graph becomes two clauses: `{a, u, v}`
//! with sign −1 and `{b, u, v}` with sign +1, where `a` is a source node and
//! `b` a sink node. Every clause holds exactly two inner variables, so
//! flipping all inner variables preserves every clause.

use rand::seq::SliceRandom;
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{invalid_arg, Error, Result};
use crate::instances::{all_optima, Clause, Fraction, XorInstance, DEFAULT_BRUTE_FORCE_CAP};
use crate::rng::{self, streams};

mod graph;

pub use graph::SimpleGraph;

/// Default ratio of inner vertices to new nodes.
pub const DEFAULT_R: f64 = 9.0;
/// Exhaustive symmetry check up to this many variables.
pub const EXHAUSTIVE_LIMIT: usize = 22;
const BATTERY: usize = 4096;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct NltsInstance {
    pub inner: SimpleGraph,
    pub inner_degree: usize,
    pub r: f64,
    pub seed: u64,
    /// Source variables, numbered after the inner ones.
    pub sources: Vec<usize>,
    /// Sink variables, numbered after the sources.
    pub sinks: Vec<usize>,
    /// Source variable attached to each inner edge.
    pub edge_source: Vec<usize>,
    pub edge_sink: Vec<usize>,
    pub instance: XorInstance,
}

/// Sidecar record written next to the instance file.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct NltsSidecar {
    pub v_plus: Vec<usize>,
    pub sources: Vec<usize>,
    pub sinks: Vec<usize>,
    pub r: f64,
    pub inner_degree: usize,
    pub inner_edges: Vec<(usize, usize)>,
    pub seed: u64,
}

impl NltsInstance {
    /// Inner variables, the flipped set of the symmetry.
    pub fn v_plus(&self) -> Vec<usize> {
        (0..self.inner.n).collect()
    }

    pub fn sidecar(&self) -> NltsSidecar {
        NltsSidecar {
            v_plus: self.v_plus(),
            sources: self.sources.clone(),
            sinks: self.sinks.clone(),
            r: self.r,
            inner_degree: self.inner_degree,
            inner_edges: self.inner.edges.clone(),
            seed: self.seed,
        }
    }

    /// Sources −1, sinks +1, inner variables all `inner`.
    pub fn claimed_ground_state(&self, inner: i8) -> Vec<i8> {
        let mut x = vec![inner; self.instance.n()];
        self.sources.iter().for_each(|&a| x[a] = -1);
        self.sinks.iter().for_each(|&b| x[b] = 1);
        x
    }

    /// Sources +1, sinks −1, inner variables from `labels`.
    pub fn cut_assignment(&self, labels: &[i8]) -> Vec<i8> {
        let mut x = vec![0i8; self.instance.n()];
        x[..self.inner.n].copy_from_slice(labels);
        self.sources.iter().for_each(|&a| x[a] = 1);
        self.sinks.iter().for_each(|&b| x[b] = -1);
        x
    }
}

/// Number of source plus sink nodes: `⌊n′/r⌋`, but never fewer than two so
/// that tiny inner graphs still get one of each.
pub fn new_node_count(inner_n: usize, r: f64) -> usize {
    ((inner_n as f64 / r).floor() as usize).max(2)
}

/// Builds the source/sink construction over a simple D-regular `inner`
/// graph. Edges go to sources round-robin along one random edge order and
/// to sinks along another, never exceeding `⌊2Dr⌋` per node.
pub fn construct_nlts(inner: &SimpleGraph, r: f64, seed: u64) -> Result<NltsInstance> {
    construct_nlts_with(inner, r, None, seed)
}

/// [`construct_nlts`] with an explicit total number of source and sink nodes.
pub fn construct_nlts_with(inner: &SimpleGraph, r: f64, new_nodes: Option<usize>, seed: u64) -> Result<NltsInstance> {
    if !(r > 4.0) || !r.is_finite() {
        return Err(invalid_arg(format!("ratio r = {r} must exceed 4")));
    }
    let d = inner.regular_degree().filter(|&d| d > 0).ok_or_else(|| invalid_arg("inner graph must be regular with positive degree"))?;
    let n_inner = inner.n;
    let total = new_nodes.unwrap_or_else(|| new_node_count(n_inner, r));
    if total < 2 {
        return Err(invalid_arg("need at least one source and one sink"));
    }
    let (na, nb) = (total.div_ceil(2), total / 2);
    let cap = (2.0 * d as f64 * r).floor() as usize;
    let m = inner.edges.len();
    for nodes in [na, nb] {
        if m > nodes * cap {
            return Err(Error::DegreeCapInfeasible { cap, edges: m, nodes });
        }
    }
    let sources: Vec<usize> = (n_inner..n_inner + na).collect();
    let sinks: Vec<usize> = (n_inner + na..n_inner + na + nb).collect();
    let edge_source = assign(m, &sources, cap, &mut rng::stream(seed, streams::NLTS_SOURCES));
    let edge_sink = assign(m, &sinks, cap, &mut rng::stream(seed, streams::NLTS_SINKS));

    let mut clauses = Vec::with_capacity(2 * m);
    for (e, &(u, v)) in inner.edges.iter().enumerate() {
        clauses.push(Clause::new(vec![edge_source[e], u, v], -1));
        clauses.push(Clause::new(vec![edge_sink[e], u, v], 1));
    }
    clauses.sort();
    let instance = XorInstance::new(3, n_inner + na + nb, clauses)?;
    Ok(NltsInstance { inner: inner.clone(), inner_degree: d, r, seed, sources, sinks, edge_source, edge_sink, instance })
}

fn assign<R: Rng>(m: usize, nodes: &[usize], cap: usize, rng: &mut R) -> Vec<usize> {
    let mut order: Vec<usize> = (0..m).collect();
    order.shuffle(rng);
    let mut perm = nodes.to_vec();
    perm.shuffle(rng);
    let mut load = vec![0usize; perm.len()];
    let mut out = vec![0; m];
    let mut j = 0;
    for e in order {
        while load[j % perm.len()] >= cap {
            j += 1;
        }
        let slot = j % perm.len();
        out[e] = perm[slot];
        load[slot] += 1;
        j += 1;
    }
    out
}

/// True iff flipping every variable in `v_plus` leaves the satisfied count
/// unchanged on every assignment of the battery: all `2^n` assignments when
/// `n ≤ 22`, otherwise a seeded sample.
pub fn verify_partial_z2_on(inst: &XorInstance, v_plus: &[usize], seed: u64) -> bool {
    let n = inst.n();
    let flip = |x: &mut Vec<i8>| v_plus.iter().for_each(|&v| x[v] = -x[v]);
    let check = |x: &[i8]| {
        let before = inst.satisfied_count(x).expect("length n");
        let mut y = x.to_vec();
        flip(&mut y);
        before == inst.satisfied_count(&y).expect("length n")
    };
    if n <= EXHAUSTIVE_LIMIT {
        (0..1u64 << n).all(|mask| check(&crate::instances::assignment_from_mask(mask, n)))
    } else {
        let mut rng = rng::stream(seed, streams::BATTERY);
        (0..BATTERY).all(|_| {
            let x: Vec<i8> = (0..n).map(|_| if rng.random::<bool>() { -1 } else { 1 }).collect();
            check(&x)
        })
    }
}

pub fn verify_partial_z2(nlts: &NltsInstance) -> bool {
    verify_partial_z2_on(&nlts.instance, &nlts.v_plus(), nlts.seed)
}

/// Exhaustive ground-state census.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GroundStateReport {
    pub fraction: Fraction,
    pub optimal: usize,
    /// Optima with sources −1, sinks +1 and constant inner variables.
    pub of_claimed_form: usize,
    pub assignments: Vec<Vec<i8>>,
}

impl GroundStateReport {
    /// Fully satisfiable, with exactly two optima of the claimed form.
    /// Bipartite inner graphs have two further optima (the cut assignments).
    pub fn matches_claim(&self) -> bool {
        self.fraction.satisfied == self.fraction.total && self.of_claimed_form == 2
    }
}

pub fn ground_states(nlts: &NltsInstance) -> Result<GroundStateReport> {
    let (fraction, assignments) = all_optima(&nlts.instance, DEFAULT_BRUTE_FORCE_CAP)?;
    let n_inner = nlts.inner.n;
    let of_claimed_form = assignments
        .iter()
        .filter(|x| {
            nlts.sources.iter().all(|&a| x[a] == -1)
                && nlts.sinks.iter().all(|&b| x[b] == 1)
                && x[..n_inner].iter().all(|&v| v == x[0])
        })
        .count();
    Ok(GroundStateReport { fraction, optimal: assignments.len(), of_claimed_form, assignments })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DepthBound {
    pub value: f64,
    pub note: Option<String>,
}

/// `log₂(n/5184)/(648·D)`; zero when `n ≤ 5184`.
pub fn qaoa_depth_bound(n: usize, d: usize) -> Result<DepthBound> {
    if d == 0 {
        return Err(invalid_arg("inner degree must be positive"));
    }
    if n <= 5184 {
        return Ok(DepthBound { value: 0.0, note: Some(format!("n = {n} ≤ 5184: no depth is excluded")) });
    }
    Ok(DepthBound { value: (n as f64 / 5184.0).log2() / (648.0 * d as f64), note: None })
}

/// Same bound with `n` given as `log₂ n`, for sizes beyond `usize`.
pub fn qaoa_depth_bound_log2(log2_n: f64, d: usize) -> Result<DepthBound> {
    if d == 0 {
        return Err(invalid_arg("inner degree must be positive"));
    }
    let excess = log2_n - 5184f64.log2();
    if excess <= 0.0 {
        return Ok(DepthBound { value: 0.0, note: Some("n ≤ 5184: no depth is excluded".into()) });
    }
    Ok(DepthBound { value: excess / (648.0 * d as f64), note: None })
}

/// `0.99 + (2√(D−1) + δ)/(100·D)`
pub fn fraction_bound(d: usize, delta: f64) -> Result<f64> {
    if d < 2 || !(delta >= 0.0) {
        return Err(invalid_arg("fraction bound needs D ≥ 2 and δ ≥ 0"));
    }
    let df = d as f64;
    Ok(0.99 + (2.0 * (df - 1.0).sqrt() + delta) / (100.0 * df))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::instances::check_triangle_free;
    use approx::assert_abs_diff_eq;

    #[test]
    fn six_cycle_counts() {
        let nl = construct_nlts(&SimpleGraph::cycle(6).unwrap(), DEFAULT_R, 1).unwrap();
        assert_eq!(nl.instance.num_clauses(), 12);
        assert_eq!((nl.sources.len(), nl.sinks.len()), (1, 1));
        assert!(!check_triangle_free(&nl.instance));
        assert_eq!(nl.instance.evaluate_fraction(&nl.claimed_ground_state(1)).unwrap(), 1.0);
        assert_eq!(nl.instance.evaluate_fraction(&nl.claimed_ground_state(-1)).unwrap(), 1.0);
    }

    #[test]
    fn degree_cap_respected() {
        let g = SimpleGraph::random_regular(60, 3, 2).unwrap();
        let nl = construct_nlts(&g, 5.0, 3).unwrap();
        assert_eq!(nl.sources.len() + nl.sinks.len(), 12);
        let deg = nl.instance.degrees();
        let cap = (2.0 * 3.0 * 5.0) as usize;
        assert!(nl.sources.iter().chain(&nl.sinks).all(|&v| deg[v] <= cap));
        let a: Vec<usize> = nl.sources.iter().map(|&v| deg[v]).collect();
        assert!(a.iter().max().unwrap() - a.iter().min().unwrap() <= 1);
    }

    #[test]
    fn infeasible_cap() {
        // ten edges over one source with cap ⌊2·1·4.5⌋ = 9
        let g = SimpleGraph::new(20, (0..10).map(|i| (2 * i, 2 * i + 1)).collect()).unwrap();
        assert!(matches!(construct_nlts_with(&g, 4.5, Some(2), 0), Err(Error::DegreeCapInfeasible { cap: 9, .. })));
        assert!(construct_nlts(&g, 4.5, 0).is_ok());
        assert!(construct_nlts(&g, 3.0, 0).is_err());
    }

    #[test]
    fn rewired_clause_breaks_symmetry() {
        let nl = construct_nlts(&SimpleGraph::cycle(6).unwrap(), DEFAULT_R, 1).unwrap();
        assert!(verify_partial_z2(&nl));
        let mut clauses = nl.instance.clauses().to_vec();
        clauses[0] = Clause::new(vec![0, 2, 4], clauses[0].sign);
        let bad = XorInstance::new(3, nl.instance.n(), clauses).unwrap();
        assert!(!verify_partial_z2_on(&bad, &nl.v_plus(), 0));
    }

    #[test]
    fn odd_cycles_have_two_ground_states() {
        for n in [5, 7] {
            let nl = construct_nlts(&SimpleGraph::cycle(n).unwrap(), DEFAULT_R, 0).unwrap();
            assert!(ground_states(&nl).unwrap().matches_claim());
        }
    }

    #[test]
    fn bounds() {
        assert_abs_diff_eq!(qaoa_depth_bound(5184 * 8, 1).unwrap().value, 3.0 / 648.0, epsilon = 1e-15);
        assert_abs_diff_eq!(qaoa_depth_bound_log2(5184f64.log2() + 648.0, 1).unwrap().value, 1.0, epsilon = 1e-12);
        assert_eq!(qaoa_depth_bound(100, 2).unwrap().value, 0.0);
        assert_abs_diff_eq!(fraction_bound(2, 0.0).unwrap(), 1.0, epsilon = 1e-15);
        assert_abs_diff_eq!(fraction_bound(100, 0.0).unwrap(), 0.99 + 2.0 * 99f64.sqrt() / 10000.0, epsilon = 1e-15);
    }
}
