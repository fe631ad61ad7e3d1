use num_bigint::{BigInt, BigUint};
use num_traits::{One, ToPrimitive, Zero};
use statrs::function::gamma::ln_gamma;

/// Degrees up to this use exact integer binomials; above it, log-space sums.
pub const EXACT_LIMIT: usize = 4096;

/// Binomial(D, ½) tail quantities for every threshold `μ ∈ 0..=D`.
#[derive(Debug, Clone)]
pub struct BinomialTails {
    pub d: usize,
    /// `2^{−D} Σ_{i≤μ} C(D,i)`
    pub g: Vec<f64>,
    /// `1 − 2g`, computed without cancellation.
    pub one_minus_2g: Vec<f64>,
    /// `2^{−D} C(D,μ)`
    pub delta: Vec<f64>,
}

impl BinomialTails {
    pub fn new(d: usize) -> Self {
        if d <= EXACT_LIMIT {
            Self::exact(d)
        } else {
            Self::log_space(d)
        }
    }

    pub(crate) fn exact(d: usize) -> Self {
        let total = BigInt::one() << d;
        let mut c = BigUint::one();
        let mut partial = BigUint::zero();
        let mut out = Self { d, g: Vec::with_capacity(d + 1), one_minus_2g: Vec::with_capacity(d + 1), delta: Vec::with_capacity(d + 1) };
        for i in 0..=d {
            partial += &c;
            let p = BigInt::from(partial.clone());
            out.g.push(scaled(&p, d));
            out.one_minus_2g.push(scaled(&(&total - (p << 1)), d));
            out.delta.push(scaled(&BigInt::from(c.clone()), d));
            c = c * (d - i) / (i + 1);
        }
        out
    }

    pub(crate) fn log_space(d: usize) -> Self {
        let df = d as f64;
        let ln2d = df * std::f64::consts::LN_2;
        let ln_c: Vec<f64> =
            (0..=d).map(|i| ln_gamma(df + 1.0) - ln_gamma(i as f64 + 1.0) - ln_gamma((d - i) as f64 + 1.0)).collect();
        let mut lower = vec![f64::NEG_INFINITY; d + 1];
        let mut acc = f64::NEG_INFINITY;
        for i in 0..=d {
            acc = log_add(acc, ln_c[i]);
            lower[i] = acc;
        }
        // upper[i] = ln Σ_{j>i} C(D,j)
        let mut upper = vec![f64::NEG_INFINITY; d + 1];
        let mut acc = f64::NEG_INFINITY;
        for i in (0..d).rev() {
            acc = log_add(acc, ln_c[i + 1]);
            upper[i] = acc;
        }
        Self {
            d,
            g: lower.iter().map(|&l| (l - ln2d).exp()).collect(),
            one_minus_2g: (0..=d).map(|i| (upper[i] - ln2d).exp() - (lower[i] - ln2d).exp()).collect(),
            delta: ln_c.iter().map(|&l| (l - ln2d).exp()).collect(),
        }
    }
}

fn log_add(a: f64, b: f64) -> f64 {
    if a == f64::NEG_INFINITY {
        return b;
    }
    let (hi, lo) = if a > b { (a, b) } else { (b, a) };
    hi + (lo - hi).exp().ln_1p()
}

/// `x / 2^d` as a double, keeping 60 significant bits before the final scale.
fn scaled(x: &BigInt, d: usize) -> f64 {
    let bits = x.bits();
    let shift = bits.saturating_sub(60);
    let mantissa = (x >> shift).to_f64().expect("60-bit integer fits");
    let e = shift as i64 - d as i64;
    // split to avoid an intermediate underflow of 2^e
    let half = e / 2;
    mantissa * 2f64.powi(half as i32) * 2f64.powi((e - half) as i32)
}
