use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{invalid_arg, Result};
use crate::instances::XorInstance;
use crate::rng::{self, streams};

#[derive(Debug, Clone)]
pub struct MonteCarloOptions {
    /// When set, a variable in fewer clauses than this gets the missing
    /// clauses as independent fair coins in its satisfied count.
    pub simulate_missing_to: Option<usize>,
    /// Trials per RNG block. Each block draws from its own stream.
    pub block: usize,
}

impl Default for MonteCarloOptions {
    fn default() -> Self {
        Self { simulate_missing_to: None, block: 1 << 14 }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MonteCarloResult {
    pub mean: f64,
    pub std_error: f64,
    pub trials: usize,
}

pub fn monte_carlo_run(inst: &XorInstance, mu: usize, trials: usize, seed: u64) -> Result<MonteCarloResult> {
    monte_carlo_run_with(inst, mu, trials, seed, &MonteCarloOptions::default())
}

/// Mean satisfied fraction after one synchronous threshold round, over
/// `trials` uniform random starts.
pub fn monte_carlo_run_with(
    inst: &XorInstance,
    mu: usize,
    trials: usize,
    seed: u64,
    opts: &MonteCarloOptions,
) -> Result<MonteCarloResult> {
    if trials == 0 {
        return Err(invalid_arg("trials must be at least 1"));
    }
    if opts.block == 0 {
        return Err(invalid_arg("block size must be positive"));
    }
    let m = inst.num_clauses();
    if m == 0 {
        return Err(invalid_arg("instance has no clauses"));
    }
    let n = inst.n();
    let k = inst.k();
    let vars: Vec<usize> = inst.clauses().iter().flat_map(|c| c.vars.iter().copied()).collect();
    let odd: Vec<bool> = inst.clauses().iter().map(|c| c.sign == -1).collect();
    let incidence = inst.incidence();
    let missing: Vec<usize> = match opts.simulate_missing_to {
        Some(target) => incidence.iter().map(|cs| target.saturating_sub(cs.len())).collect(),
        None => vec![0; n],
    };

    let mut x = vec![false; n];
    let mut flip = vec![false; n];
    let mut sat = vec![false; m];
    let (mut sum, mut sumsq) = (0.0f64, 0.0f64);
    let blocks = trials.div_ceil(opts.block);
    for b in 0..blocks {
        let mut rng = rng::stream(seed, streams::MONTE_CARLO << 32 | b as u64);
        let count = opts.block.min(trials - b * opts.block);
        let (mut bsum, mut bsumsq) = (0.0f64, 0.0f64);
        for _ in 0..count {
            for chunk in x.chunks_mut(64) {
                let bits: u64 = rng.random();
                for (i, xi) in chunk.iter_mut().enumerate() {
                    *xi = bits >> i & 1 == 1;
                }
            }
            for c in 0..m {
                let parity = vars[c * k..(c + 1) * k].iter().fold(false, |p, &v| p ^ x[v]);
                sat[c] = parity == odd[c];
            }
            for v in 0..n {
                let mut satisfied = incidence[v].iter().filter(|&&c| sat[c]).count();
                let mut extra = missing[v];
                while extra > 0 {
                    let take = extra.min(64);
                    let bits: u64 = rng.random();
                    let mask = if take == 64 { u64::MAX } else { (1u64 << take) - 1 };
                    satisfied += (bits & mask).count_ones() as usize;
                    extra -= take;
                }
                flip[v] = satisfied <= mu;
            }
            let mut after = 0usize;
            for c in 0..m {
                let flips = vars[c * k..(c + 1) * k].iter().fold(false, |p, &v| p ^ flip[v]);
                if sat[c] != flips {
                    after += 1;
                }
            }
            let f = after as f64 / m as f64;
            bsum += f;
            bsumsq += f * f;
        }
        sum += bsum;
        sumsq += bsumsq;
    }
    let t = trials as f64;
    let mean = sum / t;
    let var = if trials > 1 { ((sumsq - t * mean * mean) / (t - 1.0)).max(0.0) } else { 0.0 };
    Ok(MonteCarloResult { mean, std_error: (var / t).sqrt(), trials })
}
