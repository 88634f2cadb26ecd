use crate::error::{Error, Result};

/// A probability vector, kept together with its elementwise logarithm.
///
/// Dirichlet draws with small α routinely produce coordinates far below the
/// smallest normal double, so the log form is the one the decoder uses.
#[derive(Debug, Clone, PartialEq)]
pub struct SimplexPoint {
    probs: Vec<f64>,
    log_probs: Vec<f64>,
}

fn sum_tolerance(len: usize) -> f64 {
    1e-12 + len as f64 * f64::EPSILON
}

impl SimplexPoint {
    pub fn new(probs: Vec<f64>) -> Result<Self> {
        if probs.is_empty() {
            return Err(Error::Config("a simplex point needs at least one coordinate".into()));
        }
        if probs.iter().any(|p| !(*p >= 0.0 && p.is_finite())) {
            return Err(Error::Config("probabilities must be finite and nonnegative".into()));
        }
        let total: f64 = probs.iter().sum();
        if (total - 1.0).abs() > sum_tolerance(probs.len()) {
            return Err(Error::Config(format!("probabilities sum to {total}, not 1")));
        }
        let log_probs = probs.iter().map(|p| p.ln()).collect();
        Ok(Self { probs, log_probs })
    }

    /// Normalises unnormalised log-weights with log-sum-exp.
    pub fn from_log_weights(mut log_w: Vec<f64>) -> Result<Self> {
        let max = log_w.iter().copied().fold(f64::NEG_INFINITY, f64::max);
        if !max.is_finite() {
            return Err(Error::DegenerateSample);
        }
        let lse = max + log_w.iter().map(|l| (l - max).exp()).sum::<f64>().ln();
        for l in &mut log_w {
            *l -= lse;
        }
        let probs = log_w.iter().map(|l| l.exp()).collect();
        Ok(Self { probs, log_probs: log_w })
    }

    pub fn uniform(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::Config("a simplex point needs at least one coordinate".into()));
        }
        Self::from_log_weights(vec![0.0; n])
    }

    pub fn probs(&self) -> &[f64] {
        &self.probs
    }

    pub fn log_probs(&self) -> &[f64] {
        &self.log_probs
    }

    pub fn len(&self) -> usize {
        self.probs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.probs.is_empty()
    }
}

/// Per-type sample counts N_y(ℓ) from `trials` draws.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SampleCounts {
    counts: Vec<u64>,
    trials: u64,
}

impl SampleCounts {
    pub fn new(counts: Vec<u64>) -> Self {
        let trials = counts.iter().sum();
        Self { counts, trials }
    }

    pub fn counts(&self) -> &[u64] {
        &self.counts
    }

    pub fn trials(&self) -> u64 {
        self.trials
    }

    pub fn len(&self) -> usize {
        self.counts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.counts.is_empty()
    }

    /// The empirical PMF N/trials.
    pub fn empirical(&self) -> Result<SimplexPoint> {
        if self.trials == 0 {
            return Err(Error::Config("empirical PMF of zero samples".into()));
        }
        let t = self.trials as f64;
        SimplexPoint::new(self.counts.iter().map(|&c| c as f64 / t).collect())
    }
}

fn check_len(a: usize, b: usize) -> Result<()> {
    if a == b {
        Ok(())
    } else {
        Err(Error::LengthMismatch { left: a, right: b })
    }
}

/// D(q‖p) in nats; +∞ when q puts mass where p has none.
pub fn kl_divergence(q: &SimplexPoint, p: &SimplexPoint) -> Result<f64> {
    check_len(q.len(), p.len())?;
    Ok(q.probs
        .iter()
        .zip(&q.log_probs)
        .zip(&p.log_probs)
        .filter(|((qi, _), _)| **qi > 0.0)
        .map(|((qi, lq), lp)| qi * (lq - lp))
        .sum::<f64>()
        .max(0.0))
}

/// D(N/T ‖ p) computed straight from counts.
pub fn kl_from_counts(counts: &SampleCounts, p: &SimplexPoint) -> Result<f64> {
    check_len(counts.len(), p.len())?;
    Ok(kl_counts_unchecked(counts, p.log_probs()))
}

pub(crate) fn kl_counts_unchecked(counts: &SampleCounts, log_p: &[f64]) -> f64 {
    let t = counts.trials as f64;
    let log_t = t.ln();
    counts
        .counts
        .iter()
        .zip(log_p)
        .filter(|(c, _)| **c > 0)
        .map(|(&c, lp)| {
            let c = c as f64;
            c / t * (c.ln() - log_t - lp)
        })
        .sum::<f64>()
        .max(0.0)
}

/// BC(p, q) = Σ √(p_k q_k).
pub fn bhattacharyya(p: &SimplexPoint, q: &SimplexPoint) -> Result<f64> {
    check_len(p.len(), q.len())?;
    Ok(bc_unchecked(p.log_probs(), q.log_probs()))
}

pub(crate) fn bc_unchecked(log_p: &[f64], log_q: &[f64]) -> f64 {
    let bc: f64 = log_p.iter().zip(log_q).map(|(a, b)| (0.5 * (a + b)).exp()).sum();
    bc.min(1.0)
}
