use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

use super::structure::{clause_violations, Scratch};
use super::{Clause, XorInstance};
use crate::error::{invalid_arg, Error, Result};
use crate::rng::{self, streams};

#[derive(Debug, Clone)]
pub struct GenerateOptions {
    /// Maximum number of stub-swap proposals spent repairing the initial
    /// configuration.
    pub max_attempts: usize,
    /// Proposals per configuration before drawing a fresh one.
    pub round_budget: usize,
}

impl Default for GenerateOptions {
    fn default() -> Self {
        Self { max_attempts: 2_000_000, round_budget: 100_000 }
    }
}

/// Random `degree`-regular, triangle-free k-uniform instance with uniform
/// random signs. Deterministic in `(k, degree, n, seed)`.
pub fn generate_regular_triangle_free(k: usize, degree: usize, n: usize, seed: u64) -> Result<XorInstance> {
    generate_with_options(k, degree, n, seed, &GenerateOptions::default())
}

/// Configuration-model sampling followed by local repair, redrawn after
/// each `round_budget` proposals without success: stubs are paired
/// into clauses uniformly at random, then members of defective clauses are
/// swapped with random members of other clauses, keeping a swap whenever it
/// does not increase the local defect count.
pub fn generate_with_options(
    k: usize,
    degree: usize,
    n: usize,
    seed: u64,
    opts: &GenerateOptions,
) -> Result<XorInstance> {
    if k < 2 {
        return Err(invalid_arg(format!("arity k = {k} must be at least 2")));
    }
    if degree == 0 || n == 0 {
        return Err(invalid_arg("degree and n must be positive"));
    }
    if (n * degree) % k != 0 {
        return Err(invalid_arg(format!("n·degree = {} is not divisible by k = {k}", n * degree)));
    }
    if n < k {
        return Err(invalid_arg(format!("n = {n} is smaller than k = {k}")));
    }

    let mut rng = rng::stream(seed, streams::GENERATE);
    let mut repair = rng::stream(seed, streams::REPAIR);
    let mut spent = 0usize;
    let mut remaining;
    let clauses = loop {
        let round = opts.round_budget.max(1).min(opts.max_attempts - spent);
        match attempt(k, degree, n, &mut rng, &mut repair, round) {
            Ok(clauses) => break clauses,
            Err((used, bad)) => {
                spent += used;
                remaining = bad;
            }
        }
        if spent >= opts.max_attempts {
            return Err(Error::BudgetExhausted {
                budget: opts.max_attempts,
                detail: format!("{remaining} defective clauses remain for k={k}, degree={degree}, n={n}"),
            });
        }
    };

    let mut signs = rng::stream(seed, streams::SIGNS);
    let mut out: Vec<Clause> = clauses.into_iter().map(|vars| Clause::new(vars, 1)).collect();
    out.sort();
    for c in &mut out {
        c.sign = if signs.random::<bool>() { 1 } else { -1 };
    }
    XorInstance::new(k, n, out)
}

/// One configuration-model draw followed by at most `budget` repair
/// proposals. On failure returns the proposals used and the defect count.
fn attempt(
    k: usize,
    degree: usize,
    n: usize,
    rng: &mut ChaCha8Rng,
    repair: &mut ChaCha8Rng,
    budget: usize,
) -> std::result::Result<Vec<Vec<usize>>, (usize, usize)> {
    let mut stubs: Vec<usize> = (0..n).flat_map(|v| std::iter::repeat_n(v, degree)).collect();
    stubs.shuffle(rng);
    let mut clauses: Vec<Vec<usize>> = stubs.chunks(k).map(|c| c.to_vec()).collect();
    let m = clauses.len();

    let mut incidence = vec![Vec::with_capacity(degree); n];
    for (ci, c) in clauses.iter().enumerate() {
        for &v in c {
            if !incidence[v].contains(&ci) {
                incidence[v].push(ci);
            }
        }
    }

    let mut scratch = Scratch::new(n);
    let mut bad: Vec<usize> = (0..m).filter(|&ci| clause_violations(&clauses, &incidence, ci, &mut scratch) > 0).collect();
    let mut attempts = 0usize;
    while !bad.is_empty() {
        if attempts >= budget {
            return Err((attempts, bad.len()));
        }
        attempts += 1;
        let c1 = bad[repair.random_range(0..bad.len())];
        let c2 = repair.random_range(0..m);
        if c1 == c2 {
            continue;
        }
        let p1 = repair.random_range(0..k);
        let p2 = repair.random_range(0..k);
        let (u, w) = (clauses[c1][p1], clauses[c2][p2]);
        if u == w {
            continue;
        }

        let mut touched: Vec<usize> = Vec::new();
        for &v in clauses[c1].iter().chain(&clauses[c2]) {
            for &ci in &incidence[v] {
                if !touched.contains(&ci) {
                    touched.push(ci);
                }
            }
        }
        let before: usize = touched.iter().map(|&ci| clause_violations(&clauses, &incidence, ci, &mut scratch)).sum();
        swap_members(&mut clauses, &mut incidence, (c1, p1), (c2, p2));
        let after: Vec<usize> =
            touched.iter().map(|&ci| clause_violations(&clauses, &incidence, ci, &mut scratch)).collect();
        if after.iter().sum::<usize>() > before {
            swap_members(&mut clauses, &mut incidence, (c1, p1), (c2, p2));
            continue;
        }
        for (&ci, &v) in touched.iter().zip(&after) {
            let defective = v > 0;
            match bad.iter().position(|&b| b == ci) {
                Some(pos) if !defective => {
                    bad.swap_remove(pos);
                }
                None if defective => bad.push(ci),
                _ => {}
            }
        }
    }
    Ok(clauses)
}

fn swap_members(clauses: &mut [Vec<usize>], incidence: &mut [Vec<usize>], a: (usize, usize), b: (usize, usize)) {
    let u = clauses[a.0][a.1];
    let w = clauses[b.0][b.1];
    clauses[a.0][a.1] = w;
    clauses[b.0][b.1] = u;
    for &(ci, v) in &[(a.0, u), (b.0, w), (a.0, w), (b.0, u)] {
        let present = clauses[ci].contains(&v);
        let listed = incidence[v].iter().position(|&x| x == ci);
        match (present, listed) {
            (true, None) => incidence[v].push(ci),
            (false, Some(pos)) => {
                incidence[v].swap_remove(pos);
            }
            _ => {}
        }
    }
}
