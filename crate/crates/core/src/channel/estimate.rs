//! Monte Carlo estimators and exact small-instance oracles.

use std::fmt;
use std::str::FromStr;

use rand::Rng;
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use rayon::prelude::*;

use super::decode::{log_likelihood, ml_decode};
use super::sampling::{sample_dirichlet, sample_dirichlet_with, sample_multinomial, stream_rng, Codebook};
use super::simplex::{bc_unchecked, kl_counts_unchecked, SampleCounts};
use crate::error::{ensure, Error, Result};
use crate::ex_bounds::{f_kappa, ExpurgatedBounds, FQuadrature};
use crate::rc_bounds::{
    chernoff_pairwise_bound, delta_fn, lemma1_tail_bound_with_delta, rc_exponent_fixed_alpha,
    thm1_bound_from_exponent, BoundQuery, RcSettings,
};
use crate::special_fn::log_gamma;

/// Two-sided 95% normal quantile.
pub const Z95: f64 = 1.959_963_984_540_054;

/// Codebooks larger than this are refused.
pub const MAX_MESSAGES: u64 = 1 << 30;

/// Draws per RNG stream in the moment estimators.
const CHUNK: u64 = 8192;

/// Stream used for the shared codebook in fixed-codebook mode.
const FIXED_CODEBOOK_STREAM: u64 = u64::MAX;

/// A positive rational r = num/den, so that n·r can be checked for integrality.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SampleRatio {
    num: u64,
    den: u64,
}

fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

impl SampleRatio {
    pub fn new(num: u64, den: u64) -> Result<Self> {
        if num == 0 || den == 0 {
            return Err(Error::Config(format!("r = {num}/{den} must be a positive ratio")));
        }
        let g = gcd(num, den);
        Ok(Self { num: num / g, den: den / g })
    }

    pub fn integer(r: u64) -> Result<Self> {
        Self::new(r, 1)
    }

    pub fn num(&self) -> u64 {
        self.num
    }

    pub fn den(&self) -> u64 {
        self.den
    }

    pub fn as_f64(&self) -> f64 {
        self.num as f64 / self.den as f64
    }

    /// Total samples n·r, which must be a whole number.
    pub fn samples(&self, n: usize) -> Result<u64> {
        let prod = (n as u128) * (self.num as u128);
        if !prod.is_multiple_of(self.den as u128) {
            return Err(Error::Config(format!("n*r = {n}*{self} is not a whole number of samples")));
        }
        u64::try_from(prod / self.den as u128).map_err(|_| Error::Config("n*r overflows".into()))
    }
}

impl fmt::Display for SampleRatio {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den == 1 {
            write!(f, "{}", self.num)
        } else {
            write!(f, "{}/{}", self.num, self.den)
        }
    }
}

impl FromStr for SampleRatio {
    type Err = Error;

    /// Accepts `a/b`, an integer, or a finite decimal such as `2.5`.
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Config(format!("cannot parse r = {s:?}; expected a/b or a decimal"));
        let s = s.trim();
        if let Some((a, b)) = s.split_once('/') {
            let a = a.trim().parse::<u64>().map_err(|_| bad())?;
            let b = b.trim().parse::<u64>().map_err(|_| bad())?;
            return Self::new(a, b);
        }
        let (whole, frac) = s.split_once('.').unwrap_or((s, ""));
        if whole.is_empty() && frac.is_empty() || frac.len() > 18 {
            return Err(bad());
        }
        if !whole.chars().chain(frac.chars()).all(|c| c.is_ascii_digit()) {
            return Err(bad());
        }
        let den = 10u64.pow(frac.len() as u32);
        let whole = if whole.is_empty() { 0 } else { whole.parse::<u64>().map_err(|_| bad())? };
        let frac = if frac.is_empty() { 0 } else { frac.parse::<u64>().map_err(|_| bad())? };
        let num = whole.checked_mul(den).and_then(|w| w.checked_add(frac)).ok_or_else(bad)?;
        Self::new(num, den)
    }
}

/// Either the codebook size M or the rate R with M = ⌊e^{nR}⌋.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum CodebookSize {
    Messages(u64),
    Rate(f64),
}

/// Runs `f` on a pool of `parallelism` workers (0 means rayon's default).
fn with_pool<T: Send>(parallelism: usize, f: impl FnOnce() -> T + Send) -> Result<T> {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(parallelism)
        .build()
        .map_err(|e| Error::Config(format!("thread pool: {e}")))?;
    Ok(pool.install(f))
}

/// Wilson score interval for `k` successes in `t` trials.
pub fn wilson_interval(k: u64, t: u64, z: f64) -> (f64, f64) {
    if t == 0 {
        return (0.0, 1.0);
    }
    let (k, t) = (k as f64, t as f64);
    let p = k / t;
    let z2 = z * z;
    let denom = 1.0 + z2 / t;
    let centre = (p + z2 / (2.0 * t)) / denom;
    let half = z / denom * (p * (1.0 - p) / t + z2 / (4.0 * t * t)).sqrt();
    let lo = if k == 0.0 { 0.0 } else { (centre - half).max(0.0) };
    let hi = if k == t { 1.0 } else { (centre + half).min(1.0) };
    (lo, hi)
}

/// Binomial standard error √(p(1−p)/t) of a frequency.
pub fn binomial_std_err(k: u64, t: u64) -> f64 {
    if t == 0 {
        return f64::INFINITY;
    }
    let p = k as f64 / t as f64;
    (p * (1.0 - p) / t as f64).sqrt()
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SimConfig {
    pub n: usize,
    pub r: SampleRatio,
    pub alpha: f64,
    pub size: CodebookSize,
    pub trials: u64,
    pub seed: u64,
    /// Worker threads; 0 uses every available core. Never affects results.
    pub parallelism: usize,
    /// Reuse one codebook for every trial instead of drawing a fresh one.
    pub fixed_codebook: bool,
}

impl SimConfig {
    pub fn validate(&self) -> Result<()> {
        if self.n == 0 {
            return Err(Error::Config("n must be at least 1".into()));
        }
        if self.trials == 0 {
            return Err(Error::Config("trials must be at least 1".into()));
        }
        ensure(self.alpha > 0.0 && self.alpha.is_finite(), "alpha", self.alpha, "(0, inf)")?;
        self.r.samples(self.n)?;
        self.messages().map(|_| ())
    }

    pub fn samples(&self) -> Result<u64> {
        self.r.samples(self.n)
    }

    pub fn messages(&self) -> Result<u64> {
        let m = match self.size {
            CodebookSize::Messages(m) => m,
            CodebookSize::Rate(rate) => {
                ensure(rate >= 0.0 && rate.is_finite(), "R", rate, "[0, inf)")?;
                let m = (self.n as f64 * rate).exp().floor();
                if m > MAX_MESSAGES as f64 {
                    return Err(Error::Config(format!("e^(nR) = {m:e} codewords is too many")));
                }
                (m as u64).max(1)
            }
        };
        if m == 0 || m > MAX_MESSAGES {
            return Err(Error::Config(format!("codebook size {m} outside [1, {MAX_MESSAGES}]")));
        }
        Ok(m)
    }

    /// The rate actually simulated, log(M)/n.
    pub fn rate(&self) -> Result<f64> {
        Ok((self.messages()? as f64).ln() / self.n as f64)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SimReport {
    pub errors: u64,
    pub trials: u64,
    pub messages: u64,
    pub rate: f64,
    pub eps_hat: f64,
    pub wilson_ci: (f64, f64),
    /// Ensemble ceiling at the simulated α, or `None` when α < ½.
    pub thm1_bound: Option<f64>,
}

impl SimReport {
    pub fn std_err(&self) -> f64 {
        binomial_std_err(self.errors, self.trials)
    }
}

/// Error ceiling for a Dirichlet(α) ensemble at the simulated (n, r, R).
pub fn thm1_bound_for(config: &SimConfig, rc: &RcSettings) -> Result<Option<f64>> {
    if config.alpha < 0.5 {
        return Ok(None);
    }
    let r = config.r.as_f64();
    let delta = delta_fn(r, rc)?;
    let query = BoundQuery::new(config.rate()?, r);
    let point = rc_exponent_fixed_alpha(&query, config.alpha, delta, rc)?;
    Ok(Some(thm1_bound_from_exponent(config.n as u64, r, point.exponent)))
}

/// One trial with a fresh codebook: true if the ML decoder errs.
///
/// Codewords are drawn lazily. The transmitted one is drawn first, so that
/// each competitor can be compared as soon as it exists and the trial stops
/// at the first competitor that beats or (from a lower index) ties it.
fn fresh_trial(config: &SimConfig, messages: u64, samples: u64, rng: &mut ChaCha8Rng) -> Result<bool> {
    let sent = rng.random_range(0..messages);
    let truth = sample_dirichlet(config.n, config.alpha, rng)?;
    let counts = sample_multinomial(&truth, samples, rng);
    let ll_true = log_likelihood(&counts, truth.log_probs());
    for m in (0..messages).filter(|&m| m != sent) {
        let cw = sample_dirichlet(config.n, config.alpha, rng)?;
        let ll = log_likelihood(&counts, cw.log_probs());
        if ll > ll_true || (ll == ll_true && m < sent) {
            return Ok(true);
        }
    }
    Ok(false)
}

/// Estimates ε_n: message, codebook and sampling are all random per trial.
///
/// Ties that the decoder resolves away from the sent message count as errors.
pub fn estimate_error_probability(config: &SimConfig, rc: &RcSettings) -> Result<SimReport> {
    config.validate()?;
    let messages = config.messages()?;
    let samples = config.samples()?;
    let thm1_bound = thm1_bound_for(config, rc)?;

    let errors = if config.fixed_codebook {
        let m = usize::try_from(messages).map_err(|_| Error::Config("codebook too large".into()))?;
        let codebook = Codebook::generate(config.n, m, config.alpha, config.seed, FIXED_CODEBOOK_STREAM)?;
        with_pool(config.parallelism, || {
            (0..config.trials)
                .into_par_iter()
                .map(|t| {
                    let mut rng = stream_rng(config.seed, t);
                    let sent = rng.random_range(0..m);
                    let counts = sample_multinomial(&codebook.codewords()[sent], samples, &mut rng);
                    Ok(u64::from(ml_decode(&counts, &codebook)? != sent))
                })
                .try_reduce(|| 0, |a, b| Ok(a + b))
        })??
    } else {
        with_pool(config.parallelism, || {
            (0..config.trials)
                .into_par_iter()
                .map(|t| fresh_trial(config, messages, samples, &mut stream_rng(config.seed, t)).map(u64::from))
                .try_reduce(|| 0, |a, b| Ok(a + b))
        })??
    };

    Ok(SimReport {
        errors,
        trials: config.trials,
        messages,
        rate: config.rate()?,
        eps_hat: errors as f64 / config.trials as f64,
        wilson_ci: wilson_interval(errors, config.trials, Z95),
        thm1_bound,
    })
}

/// Shared inputs of the tail estimators.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TailConfig {
    pub n: usize,
    pub r: SampleRatio,
    pub alpha: f64,
    pub trials: u64,
    pub seed: u64,
    pub parallelism: usize,
}

impl TailConfig {
    fn validate(&self) -> Result<u64> {
        if self.n == 0 || self.trials == 0 {
            return Err(Error::Config("n and trials must be at least 1".into()));
        }
        ensure(self.alpha > 0.0 && self.alpha.is_finite(), "alpha", self.alpha, "(0, inf)")?;
        self.r.samples(self.n)
    }
}

/// Frequency of D(Z/nr ‖ p) ≥ (Δ(r)+μ)/r against its analytic ceiling.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TailReport {
    pub mu: f64,
    pub threshold: f64,
    pub hits: u64,
    pub trials: u64,
    pub empirical: f64,
    pub bound: f64,
}

/// KL tail frequencies for several μ from one shared set of draws.
pub fn estimate_kl_tails(config: &TailConfig, mus: &[f64], rc: &RcSettings) -> Result<Vec<TailReport>> {
    let samples = config.validate()?;
    for &mu in mus {
        ensure(mu > 0.0 && mu.is_finite(), "mu", mu, "(0, inf)")?;
    }
    let r = config.r.as_f64();
    let delta = delta_fn(r, rc)?;
    let divergences: Vec<f64> = with_pool(config.parallelism, || {
        (0..config.trials)
            .into_par_iter()
            .map(|t| {
                let mut rng = stream_rng(config.seed, t);
                let p = sample_dirichlet(config.n, config.alpha, &mut rng)?;
                let z = sample_multinomial(&p, samples, &mut rng);
                Ok(kl_counts_unchecked(&z, p.log_probs()))
            })
            .collect::<Result<Vec<f64>>>()
    })??;
    Ok(mus
        .iter()
        .map(|&mu| {
            let tb = lemma1_tail_bound_with_delta(config.n as u64, r, mu, delta);
            let hits = divergences.iter().filter(|&&d| d >= tb.threshold).count() as u64;
            TailReport {
                mu,
                threshold: tb.threshold,
                hits,
                trials: config.trials,
                empirical: hits as f64 / config.trials as f64,
                bound: tb.bound,
            }
        })
        .collect())
}

pub fn estimate_kl_tail(config: &TailConfig, mu: f64, rc: &RcSettings) -> Result<TailReport> {
    Ok(estimate_kl_tails(config, &[mu], rc)?[0])
}

/// Frequency of BC(U, V) ≥ λ for independent Dirichlet(½) pairs.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BcTailReport {
    pub lam: f64,
    pub l_value: f64,
    pub hits: u64,
    pub trials: u64,
    pub empirical: f64,
    /// 4·exp(−n L(λ)).
    pub bound: f64,
}

pub fn estimate_bc_tails(
    n: usize,
    lams: &[f64],
    trials: u64,
    seed: u64,
    parallelism: usize,
    ex: &ExpurgatedBounds,
) -> Result<Vec<BcTailReport>> {
    if n == 0 || trials == 0 {
        return Err(Error::Config("n and trials must be at least 1".into()));
    }
    let l_values = lams.iter().map(|&lam| ex.l(lam).map(|v| v.value)).collect::<Result<Vec<_>>>()?;
    let bcs: Vec<f64> = with_pool(parallelism, || {
        (0..trials)
            .into_par_iter()
            .map(|t| {
                let mut rng = stream_rng(seed, t);
                let u = sample_dirichlet(n, 0.5, &mut rng)?;
                let v = sample_dirichlet(n, 0.5, &mut rng)?;
                Ok(bc_unchecked(u.log_probs(), v.log_probs()))
            })
            .collect::<Result<Vec<f64>>>()
    })??;
    Ok(lams
        .iter()
        .zip(l_values)
        .map(|(&lam, l_value)| {
            let hits = bcs.iter().filter(|&&b| b >= lam).count() as u64;
            BcTailReport {
                lam,
                l_value,
                hits,
                trials,
                empirical: hits as f64 / trials as f64,
                bound: 4.0 * (-(n as f64) * l_value).exp(),
            }
        })
        .collect())
}

/// Inputs for the pairwise confusion experiment behind the Chernoff bound.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PairwiseConfig {
    pub tail: TailConfig,
    pub xi: f64,
    /// Competing codewords drawn per (p, P̂) instance.
    pub competitors: u64,
}

/// For one (p, P̂) instance: how often a fresh codeword looks at least as close.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PairwiseReport {
    pub divergence: f64,
    pub hits: u64,
    pub competitors: u64,
    pub empirical: f64,
    pub bound: f64,
}

/// `tail.trials` instances; in each, P[D(P̂‖P′) ≤ D(P̂‖p)] over competitors P′.
pub fn estimate_pairwise(config: &PairwiseConfig) -> Result<Vec<PairwiseReport>> {
    let tc = &config.tail;
    let samples = tc.validate()?;
    if config.competitors == 0 {
        return Err(Error::Config("competitors must be at least 1".into()));
    }
    let r = tc.r.as_f64();
    with_pool(tc.parallelism, || {
        (0..tc.trials)
            .into_par_iter()
            .map(|t| {
                let mut rng = stream_rng(tc.seed, t);
                let p = sample_dirichlet(tc.n, tc.alpha, &mut rng)?;
                let z = sample_multinomial(&p, samples, &mut rng);
                let d = kl_counts_unchecked(&z, p.log_probs());
                let mut hits = 0;
                for _ in 0..config.competitors {
                    let q = sample_dirichlet(tc.n, tc.alpha, &mut rng)?;
                    hits += u64::from(kl_counts_unchecked(&z, q.log_probs()) <= d);
                }
                Ok(PairwiseReport {
                    divergence: d,
                    hits,
                    competitors: config.competitors,
                    empirical: hits as f64 / config.competitors as f64,
                    bound: chernoff_pairwise_bound(d, tc.n as u64, r, tc.alpha, config.xi)?,
                })
            })
            .collect::<Result<Vec<_>>>()
    })?
}

/// Closed form against a Monte Carlo mean.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MomentReport {
    pub closed_form: f64,
    pub mc_estimate: f64,
    pub mc_std_err: f64,
    pub draws: u64,
}

impl MomentReport {
    /// |closed − estimate| in standard errors.
    pub fn z_score(&self) -> f64 {
        (self.mc_estimate - self.closed_form).abs() / self.mc_std_err
    }
}

/// E[Π P_i^{β_i}] = Γ(Σα)/Γ(Σ(α+β)) · Π Γ(α_i+β_i)/Γ(α_i) under Dirichlet(α).
pub fn dirichlet_product_moment(alphas: &[f64], betas: &[f64]) -> Result<f64> {
    if alphas.len() != betas.len() {
        return Err(Error::LengthMismatch { left: alphas.len(), right: betas.len() });
    }
    if alphas.is_empty() {
        return Err(Error::Config("need at least one coordinate".into()));
    }
    let mut log_m = 0.0;
    for (&a, &b) in alphas.iter().zip(betas) {
        ensure(a > 0.0 && a.is_finite(), "alpha", a, "(0, inf)")?;
        ensure(b >= 0.0 && b.is_finite(), "beta", b, "[0, inf)")?;
        log_m += log_gamma(a + b)? - log_gamma(a)?;
    }
    let sa: f64 = alphas.iter().sum();
    let sb: f64 = betas.iter().sum();
    Ok((log_m + log_gamma(sa)? - log_gamma(sa + sb)?).exp())
}

/// Count, mean and sum of squared deviations of a batch.
#[derive(Debug, Clone, Copy)]
struct Moments {
    count: f64,
    mean: f64,
    m2: f64,
}

impl Moments {
    const EMPTY: Self = Self { count: 0.0, mean: 0.0, m2: 0.0 };

    fn push(&mut self, x: f64) {
        self.count += 1.0;
        let d = x - self.mean;
        self.mean += d / self.count;
        self.m2 += d * (x - self.mean);
    }

    fn merge(a: Self, b: Self) -> Self {
        let count = a.count + b.count;
        if count == 0.0 {
            return Self::EMPTY;
        }
        let d = b.mean - a.mean;
        Self {
            count,
            mean: a.mean + d * b.count / count,
            m2: a.m2 + b.m2 + d * d * a.count * b.count / count,
        }
    }

    /// Merges a slice as a balanced tree, so the result depends only on the
    /// slice contents and never on how the chunks were scheduled.
    fn merge_pairwise(parts: &[Self]) -> Self {
        match parts.len() {
            0 => Self::EMPTY,
            1 => parts[0],
            k => Self::merge(Self::merge_pairwise(&parts[..k / 2]), Self::merge_pairwise(&parts[k / 2..])),
        }
    }
}

/// Mean and standard error of `draw` over `total` draws, in fixed-size chunks
/// with one RNG stream per chunk.
fn chunked_mean<F>(total: u64, seed: u64, parallelism: usize, draw: F) -> Result<(f64, f64)>
where
    F: Fn(&mut ChaCha8Rng) -> Result<f64> + Sync,
{
    if total < 2 {
        return Err(Error::Config("need at least two draws".into()));
    }
    let chunks = total.div_ceil(CHUNK);
    let parts: Vec<Moments> = with_pool(parallelism, || {
        (0..chunks)
            .into_par_iter()
            .map(|c| {
                let mut rng = stream_rng(seed, c);
                let len = CHUNK.min(total - c * CHUNK);
                let mut m = Moments::EMPTY;
                for _ in 0..len {
                    m.push(draw(&mut rng)?);
                }
                Ok(m)
            })
            .collect::<Result<Vec<_>>>()
    })??;
    let m = Moments::merge_pairwise(&parts);
    let var = m.m2 / (m.count - 1.0);
    Ok((m.mean, (var / m.count).sqrt()))
}

/// Monte Carlo check of [`dirichlet_product_moment`].
pub fn estimate_product_moment(
    alphas: &[f64],
    betas: &[f64],
    draws: u64,
    seed: u64,
    parallelism: usize,
) -> Result<MomentReport> {
    let closed_form = dirichlet_product_moment(alphas, betas)?;
    let (mean, se) = chunked_mean(draws, seed, parallelism, |rng| {
        let p = sample_dirichlet_with(alphas, rng)?;
        let log_prod: f64 = p
            .log_probs()
            .iter()
            .zip(betas)
            .filter(|(_, b)| **b > 0.0)
            .map(|(lp, b)| b * lp)
            .sum();
        Ok(log_prod.exp())
    })?;
    Ok(MomentReport { closed_form, mc_estimate: mean, mc_std_err: se, draws })
}

/// Quadrature F(κ) against the sample mean of exp(κ|XY|).
///
/// For κ ≥ ½ the summand has infinite variance, so the reported standard
/// error understates the real spread and should be read with care.
pub fn estimate_f_kappa(
    kappa: f64,
    pairs: u64,
    seed: u64,
    parallelism: usize,
    quadrature: &FQuadrature,
) -> Result<MomentReport> {
    let closed_form = f_kappa(kappa, quadrature)?;
    let (mean, se) = chunked_mean(pairs, seed, parallelism, |rng| {
        let x: f64 = rng.sample(StandardNormal);
        let y: f64 = rng.sample(StandardNormal);
        Ok((kappa * (x * y).abs()).exp())
    })?;
    Ok(MomentReport { closed_form, mc_estimate: mean, mc_std_err: se, draws: pairs })
}

/// Calls `visit` with every vector of `len` nonnegative counts summing to `total`.
fn for_each_composition(len: usize, total: u64, visit: &mut impl FnMut(&[u64]) -> Result<()>) -> Result<()> {
    fn rec(buf: &mut Vec<u64>, len: usize, left: u64, visit: &mut impl FnMut(&[u64]) -> Result<()>) -> Result<()> {
        if buf.len() + 1 == len {
            buf.push(left);
            visit(buf)?;
            buf.pop();
            return Ok(());
        }
        for k in 0..=left {
            buf.push(k);
            rec(buf, len, left - k, visit)?;
            buf.pop();
        }
        Ok(())
    }
    rec(&mut Vec::with_capacity(len), len, total, visit)
}

/// Exact ML error probability of one codebook, uniform over messages, by
/// enumerating every multinomial outcome of `samples` draws.
pub fn exact_error_probability(codebook: &Codebook, samples: u64) -> Result<f64> {
    let n = codebook.n();
    let m = codebook.len() as f64;
    let log_fact_total = log_gamma(samples as f64 + 1.0)?;
    let mut err = 0.0;
    for_each_composition(n, samples, &mut |c| {
        let counts = SampleCounts::new(c.to_vec());
        let decoded = ml_decode(&counts, codebook)?;
        let mut log_coef = log_fact_total;
        for &k in c {
            log_coef -= log_gamma(k as f64 + 1.0)?;
        }
        for (idx, cw) in codebook.codewords().iter().enumerate() {
            if idx != decoded {
                err += (log_coef + log_likelihood(&counts, cw.log_probs())).exp() / m;
            }
        }
        Ok(())
    })?;
    Ok(err)
}

/// Ensemble average of [`exact_error_probability`] over `codebooks` draws.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EnsembleOracle {
    pub mean: f64,
    pub std_err: f64,
    pub codebooks: u64,
}

pub fn exact_ensemble_error(
    n: usize,
    samples: u64,
    messages: usize,
    alpha: f64,
    codebooks: u64,
    seed: u64,
) -> Result<EnsembleOracle> {
    if codebooks < 2 {
        return Err(Error::Config("need at least two codebooks".into()));
    }
    let mut m = Moments::EMPTY;
    for c in 0..codebooks {
        let cb = Codebook::generate(n, messages, alpha, seed, c)?;
        m.push(exact_error_probability(&cb, samples)?);
    }
    let var = m.m2 / (m.count - 1.0);
    Ok(EnsembleOracle { mean: m.mean, std_err: (var / m.count).sqrt(), codebooks })
}
