use rand::seq::SliceRandom;
use serde::{Deserialize, Serialize};

use crate::error::{invalid_arg, Error, Result};
use crate::rng::{self, streams};

/// Simple undirected graph with edges stored as `(u, v)`, `u < v`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SimpleGraph {
    pub n: usize,
    pub edges: Vec<(usize, usize)>,
}

impl SimpleGraph {
    pub fn new(n: usize, edges: Vec<(usize, usize)>) -> Result<Self> {
        let mut norm: Vec<(usize, usize)> = Vec::with_capacity(edges.len());
        for (u, v) in edges {
            if u == v || u >= n || v >= n {
                return Err(invalid_arg(format!("bad edge ({u}, {v}) on {n} vertices")));
            }
            norm.push((u.min(v), u.max(v)));
        }
        let mut sorted = norm.clone();
        sorted.sort_unstable();
        if sorted.windows(2).any(|w| w[0] == w[1]) {
            return Err(invalid_arg("repeated edge"));
        }
        Ok(Self { n, edges: norm })
    }

    pub fn cycle(n: usize) -> Result<Self> {
        if n < 3 {
            return Err(invalid_arg("a cycle needs at least 3 vertices"));
        }
        Self::new(n, (0..n).map(|i| (i, (i + 1) % n)).collect())
    }

    /// Uniform `d`-regular simple graph by the pairing model, retrying on
    /// loops and multi-edges.
    pub fn random_regular(n: usize, d: usize, seed: u64) -> Result<Self> {
        if d >= n || (n * d) % 2 == 1 {
            return Err(invalid_arg(format!("no {d}-regular simple graph on {n} vertices")));
        }
        let budget = 10_000;
        let mut rng = rng::stream(seed, streams::GRAPH);
        let mut stubs: Vec<usize> = (0..n).flat_map(|v| std::iter::repeat_n(v, d)).collect();
        for _ in 0..budget {
            stubs.shuffle(&mut rng);
            let edges: Vec<(usize, usize)> = stubs.chunks(2).map(|p| (p[0], p[1])).collect();
            if let Ok(g) = Self::new(n, edges) {
                return Ok(g);
            }
        }
        Err(Error::BudgetExhausted { budget, detail: format!("pairing model for n={n}, d={d}") })
    }

    pub fn degrees(&self) -> Vec<usize> {
        let mut deg = vec![0; self.n];
        for &(u, v) in &self.edges {
            deg[u] += 1;
            deg[v] += 1;
        }
        deg
    }

    pub fn regular_degree(&self) -> Option<usize> {
        let deg = self.degrees();
        let first = *deg.first()?;
        deg.iter().all(|&d| d == first).then_some(first)
    }

    /// Edges crossing the partition given by ±1 labels.
    pub fn cut_size(&self, labels: &[i8]) -> usize {
        self.edges.iter().filter(|&&(u, v)| labels[u] != labels[v]).count()
    }

    /// Maximum cut by enumeration, with its labels (vertex 0 fixed to +1).
    pub fn max_cut(&self) -> Result<(usize, Vec<i8>)> {
        if self.n > 24 {
            return Err(Error::TooManyVariables { n: self.n, cap: 24 });
        }
        let mut best = (0usize, 0u64);
        for mask in 0..1u64 << self.n.saturating_sub(1) {
            let side = mask << 1;
            let cut = self.edges.iter().filter(|&&(u, v)| (side >> u ^ side >> v) & 1 == 1).count();
            if cut > best.0 {
                best = (cut, side);
            }
        }
        let labels = (0..self.n).map(|i| if best.1 >> i & 1 == 1 { -1 } else { 1 }).collect();
        Ok((best.0, labels))
    }
}
