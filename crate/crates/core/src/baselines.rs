//! Reference curves: the converse ½·log r and the achievable rate of a
//! finite-input-resolution scheme with `g` objects per type.

use crate::error::{ensure, Result};
use crate::special_fn::psi_unchecked;

/// Objects-per-type budget `g` and samples-per-type `r`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FirQuery {
    pub g: f64,
    pub r: f64,
}

impl FirQuery {
    pub fn new(g: f64, r: f64) -> Self {
        Self { g, r }
    }

    pub fn validate(&self) -> Result<()> {
        ensure(self.g > 0.0 && self.g.is_finite(), "g", self.g, "(0, inf)")?;
        ensure(self.r > 0.0 && self.r.is_finite(), "r", self.r, "(0, inf)")
    }
}

/// ½·log r in nats, without vanishing correction terms.
pub fn converse_rate(r: f64) -> Result<f64> {
    ensure(r > 0.0 && r.is_finite(), "r", r, "(0, inf)")?;
    Ok(0.5 * r.ln())
}

/// ½·log r − Ψ(r/g).
pub fn fir_rate(query: &FirQuery) -> Result<f64> {
    query.validate()?;
    Ok(0.5 * query.r.ln() - psi_unchecked(query.r / query.g))
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;
    use std::f64::consts::{E, LN_2};

    #[test]
    fn converse_values() {
        assert_eq!(converse_rate(1.0).unwrap(), 0.0);
        assert_abs_diff_eq!(converse_rate(E * E).unwrap(), 1.0, epsilon = 1e-15);
        assert_abs_diff_eq!(converse_rate(400.0).unwrap(), 2.995_732_273_553_991, epsilon = 1e-12);
        assert!(converse_rate(0.0).is_err());
        assert!(converse_rate(-3.0).is_err());
    }

    #[test]
    fn fir_values() {
        let v = fir_rate(&FirQuery::new(200.0, 200.0)).unwrap();
        assert_abs_diff_eq!(v, 0.5 * 200f64.ln() - 2.0 * LN_2, epsilon = 1e-12);
        let tiny = fir_rate(&FirQuery::new(1e12, 50.0)).unwrap();
        assert_abs_diff_eq!(tiny, converse_rate(50.0).unwrap(), epsilon = 1e-8);
        assert!(fir_rate(&FirQuery::new(0.0, 1.0)).is_err());
    }

    #[test]
    fn fir_peaks_near_0398_g() {
        let g = 1000.0;
        let (best_r, _) = (1..=20_000)
            .map(|i| i as f64 * 0.05)
            .map(|r| (r, fir_rate(&FirQuery::new(g, r)).unwrap()))
            .fold((0.0, f64::NEG_INFINITY), |acc, p| if p.1 > acc.1 { p } else { acc });
        assert!((396.0..=400.0).contains(&best_r), "argmax {best_r}");
        let peak = fir_rate(&FirQuery::new(g, 0.398 * g)).unwrap();
        assert!(fir_rate(&FirQuery::new(g, 10.0 * g)).unwrap() < peak);
    }
}
