//! Scalar special functions shared by every bound.
//!
//! All logarithms are natural; rates and exponents are in nats.

use std::f64::consts::PI;

use crate::error::{ensure, Result};

/// Stirling bracket `lower <= Γ(t) <= upper` with
/// `lower = √(2π) t^(t-½) e^(-t)` and `upper = lower · e^(1/(12t))`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StirlingBracket {
    pub t: f64,
    pub lower: f64,
    pub upper: f64,
}

impl StirlingBracket {
    /// Log-domain endpoints, usable where `lower`/`upper` overflow.
    pub fn log_bounds(t: f64) -> (f64, f64) {
        let lo = 0.5 * (2.0 * PI).ln() + (t - 0.5) * t.ln() - t;
        (lo, lo + 1.0 / (12.0 * t))
    }

    pub fn contains(&self, value: f64) -> bool {
        self.lower <= value && value <= self.upper
    }
}

fn check_positive(name: &'static str, t: f64) -> Result<()> {
    ensure(t.is_finite() && t > 0.0, name, t, "(0, inf)")
}

/// log Γ(t) for real t > 0.
pub fn log_gamma(t: f64) -> Result<f64> {
    check_positive("t", t)?;
    Ok(libm::lgamma(t))
}

pub fn stirling_bracket(t: f64) -> Result<StirlingBracket> {
    check_positive("t", t)?;
    let (lo, hi) = StirlingBracket::log_bounds(t);
    Ok(StirlingBracket {
        t,
        lower: lo.exp(),
        upper: hi.exp(),
    })
}

const ZETA_TERM_BUDGET: u64 = 1_000_000;
const ZETA_MIN_TERMS: u64 = 10_000;

/// Riemann zeta for real s > 1.
///
/// Sums `max(10^4, 10^6 / ⌈s⌉)` terms with compensated summation, then closes
/// the tail with the integral `N^(1-s)/(s-1)` plus the first Euler–Maclaurin
/// corrections. The leftover term is of order `s^5 N^(-s-5)`, far below 1e-10
/// relative for every admissible s. Summation stops early once the integral
/// tail drops below one ulp of the partial sum.
pub fn zeta(s: f64) -> Result<f64> {
    ensure(s.is_finite() && s > 1.0, "s", s, "(1, inf)")?;
    let terms = (ZETA_TERM_BUDGET / s.ceil() as u64).max(ZETA_MIN_TERMS);

    let mut sum = 0.0_f64;
    let mut comp = 0.0_f64;
    let mut last = terms;
    for k in 1..terms {
        let kf = k as f64;
        let term = (-s * kf.ln()).exp();
        let t = sum + term;
        if sum.abs() >= term.abs() {
            comp += (sum - t) + term;
        } else {
            comp += (term - t) + sum;
        }
        sum = t;
        if k > 16 && (1.0 - s) * kf.ln() - (s - 1.0).ln() < (sum * f64::EPSILON * 1e-2).ln() {
            last = k + 1;
            break;
        }
    }
    let n = last as f64;
    let ln_n = n.ln();
    let n_pow = (-s * ln_n).exp();
    let tail = n * n_pow / (s - 1.0) + 0.5 * n_pow + s * n_pow / (12.0 * n)
        - s * (s + 1.0) * (s + 2.0) * n_pow / (720.0 * n * n * n);
    Ok(sum + comp + tail)
}

/// Binary entropy in nats with the convention `0·log 0 = 0`.
pub fn binary_entropy(p: f64) -> Result<f64> {
    ensure((0.0..=1.0).contains(&p), "p", p, "[0, 1]")?;
    Ok(xlogx_neg(p) + xlogx_neg(1.0 - p))
}

fn xlogx_neg(p: f64) -> f64 {
    if p == 0.0 {
        0.0
    } else {
        -p * p.ln()
    }
}

/// Ψ(t) = (1+t)·log(1+t) − t·log t, with Ψ(0) = 0.
///
/// Evaluated as `log1p(t) + t·log1p(1/t)`, the same expression regrouped so
/// that large t does not cancel two nearly equal products.
pub fn psi_fn(t: f64) -> Result<f64> {
    ensure(t >= 0.0 && !t.is_nan(), "t", t, "[0, inf)")?;
    Ok(psi_unchecked(t))
}

#[inline]
pub(crate) fn psi_unchecked(t: f64) -> f64 {
    if t == 0.0 {
        0.0
    } else if t.is_infinite() {
        f64::INFINITY
    } else {
        t.ln_1p() + t * (1.0 / t).ln_1p()
    }
}

/// Standard normal CDF Φ(x).
pub fn normal_cdf(x: f64) -> Result<f64> {
    ensure(x.is_finite(), "x", x, "finite reals")?;
    Ok(normal_cdf_unchecked(x))
}

#[inline]
pub(crate) fn normal_cdf_unchecked(x: f64) -> f64 {
    if x >= 40.0 {
        1.0
    } else {
        0.5 * libm::erfc(-x / std::f64::consts::SQRT_2)
    }
}
