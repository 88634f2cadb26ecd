//! Monte Carlo model of the sampling channel: Dirichlet codebooks, multinomial
//! sampling, maximum-likelihood decoding, and stochastic checks of the bounds.
//!
//! All estimators draw from counter-based streams keyed by a master seed and
//! a work-item index, and reduce in index order. Results are therefore the
//! same for every thread count.

mod decode;
mod estimate;
mod sampling;
mod simplex;

pub use decode::{kl_decode, log_likelihood, ml_decode};
pub use estimate::{
    binomial_std_err, dirichlet_product_moment, estimate_bc_tails, estimate_error_probability,
    estimate_f_kappa, estimate_kl_tail, estimate_kl_tails, estimate_pairwise, estimate_product_moment,
    exact_ensemble_error, exact_error_probability, thm1_bound_for, wilson_interval, BcTailReport,
    CodebookSize, EnsembleOracle, MomentReport, PairwiseConfig, PairwiseReport, SampleRatio, SimConfig,
    SimReport, TailConfig, TailReport, MAX_MESSAGES, Z95,
};
pub use sampling::{sample_dirichlet, sample_dirichlet_with, sample_multinomial, stream_rng, Codebook};
pub use simplex::{bhattacharyya, kl_divergence, kl_from_counts, SampleCounts, SimplexPoint};
