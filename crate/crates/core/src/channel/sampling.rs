use rand::distr::Open01;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Binomial, Distribution, Gamma};

use super::simplex::{SampleCounts, SimplexPoint};
use crate::error::{ensure, Error, Result};

/// Random stream for work item `stream` under master seed `seed`.
///
/// Each stream is a separate ChaCha8 stream under one key, so item `i` sees the
/// same numbers no matter which worker runs it or in what order.
pub fn stream_rng(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

/// log S with S ~ Gamma(α, 1).
///
/// For α < 1 the draw is Gamma(α+1)·U^{1/α}, evaluated in logs so that tiny
/// values do not flush to zero.
fn log_gamma_draw<R: Rng + ?Sized>(alpha: f64, gamma: &Gamma<f64>, boosted: bool, rng: &mut R) -> f64 {
    let g = gamma.sample(rng).ln();
    if boosted {
        let u: f64 = rng.sample(Open01);
        g + u.ln() / alpha
    } else {
        g
    }
}

/// Gamma sampler for shape α, boosted to α+1 when α < 1.
fn gamma_for(alpha: f64) -> Result<(Gamma<f64>, bool)> {
    ensure(alpha > 0.0 && alpha.is_finite(), "alpha", alpha, "(0, inf)")?;
    let boosted = alpha < 1.0;
    let shape = if boosted { alpha + 1.0 } else { alpha };
    let gamma = Gamma::new(shape, 1.0).map_err(|e| Error::Config(e.to_string()))?;
    Ok((gamma, boosted))
}

/// Draws from Dirichlet(α₁, …, α_n).
pub fn sample_dirichlet_with<R: Rng + ?Sized>(alphas: &[f64], rng: &mut R) -> Result<SimplexPoint> {
    if alphas.is_empty() {
        return Err(Error::Config("Dirichlet dimension must be at least 1".into()));
    }
    let samplers = alphas.iter().map(|&a| gamma_for(a)).collect::<Result<Vec<_>>>()?;
    for _ in 0..2 {
        let log_w: Vec<f64> = alphas
            .iter()
            .zip(&samplers)
            .map(|(&a, (g, boosted))| log_gamma_draw(a, g, *boosted, rng))
            .collect();
        if log_w.iter().all(|l| l.is_finite()) {
            return SimplexPoint::from_log_weights(log_w);
        }
    }
    Err(Error::DegenerateSample)
}

/// Draws from the symmetric Dirichlet(α) on n coordinates.
pub fn sample_dirichlet<R: Rng + ?Sized>(n: usize, alpha: f64, rng: &mut R) -> Result<SimplexPoint> {
    if n == 0 {
        return Err(Error::Config("Dirichlet dimension must be at least 1".into()));
    }
    let (gamma, boosted) = gamma_for(alpha)?;
    for _ in 0..2 {
        let log_w: Vec<f64> = (0..n).map(|_| log_gamma_draw(alpha, &gamma, boosted, rng)).collect();
        if log_w.iter().all(|l| l.is_finite()) {
            return SimplexPoint::from_log_weights(log_w);
        }
    }
    Err(Error::DegenerateSample)
}

/// Multinomial counts via conditional binomials.
pub fn sample_multinomial<R: Rng + ?Sized>(p: &SimplexPoint, trials: u64, rng: &mut R) -> SampleCounts {
    let probs = p.probs();
    // suffix masses, so each conditional probability uses an exact remainder
    let mut tail = vec![0.0; probs.len() + 1];
    for i in (0..probs.len()).rev() {
        tail[i] = tail[i + 1] + probs[i];
    }
    let mut counts = vec![0u64; probs.len()];
    let mut left = trials;
    for i in 0..probs.len() {
        if left == 0 {
            break;
        }
        if i + 1 == probs.len() {
            counts[i] = left;
            break;
        }
        let q = if tail[i] > 0.0 { (probs[i] / tail[i]).clamp(0.0, 1.0) } else { 0.0 };
        let k = if q >= 1.0 {
            left
        } else if q <= 0.0 {
            0
        } else {
            Binomial::new(left, q).map(|b| b.sample(rng)).unwrap_or(0)
        };
        counts[i] = k;
        left -= k;
    }
    SampleCounts::new(counts)
}

/// M codewords drawn i.i.d. from the symmetric Dirichlet(α).
#[derive(Debug, Clone, PartialEq)]
pub struct Codebook {
    codewords: Vec<SimplexPoint>,
    alpha: f64,
    n: usize,
    seed: u64,
}

impl Codebook {
    /// Draws `m` codewords on stream `stream` of `seed`.
    pub fn generate(n: usize, m: usize, alpha: f64, seed: u64, stream: u64) -> Result<Self> {
        if m == 0 {
            return Err(Error::Config("a codebook needs at least one codeword".into()));
        }
        let mut rng = stream_rng(seed, stream);
        let codewords = (0..m)
            .map(|_| sample_dirichlet(n, alpha, &mut rng))
            .collect::<Result<Vec<_>>>()?;
        Ok(Self { codewords, alpha, n, seed })
    }

    /// Wraps explicit codewords, e.g. for oracles and tests.
    pub fn from_codewords(codewords: Vec<SimplexPoint>, alpha: f64, seed: u64) -> Result<Self> {
        let n = codewords.first().map(SimplexPoint::len).ok_or_else(|| {
            Error::Config("a codebook needs at least one codeword".into())
        })?;
        if let Some(bad) = codewords.iter().find(|c| c.len() != n) {
            return Err(Error::LengthMismatch { left: n, right: bad.len() });
        }
        Ok(Self { codewords, alpha, n, seed })
    }

    pub fn codewords(&self) -> &[SimplexPoint] {
        &self.codewords
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    pub fn len(&self) -> usize {
        self.codewords.len()
    }

    pub fn is_empty(&self) -> bool {
        self.codewords.is_empty()
    }
}
