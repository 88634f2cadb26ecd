use super::sampling::Codebook;
use super::simplex::{kl_counts_unchecked, SampleCounts};
use crate::error::{Error, Result};

/// Σ_ℓ N(ℓ) log p(ℓ), skipping empty cells so that 0·log 0 counts as zero.
pub fn log_likelihood(counts: &SampleCounts, log_p: &[f64]) -> f64 {
    counts
        .counts()
        .iter()
        .zip(log_p)
        .filter(|(c, _)| **c > 0)
        .map(|(&c, lp)| c as f64 * lp)
        .sum()
}

fn check(counts: &SampleCounts, codebook: &Codebook) -> Result<()> {
    if counts.len() != codebook.n() {
        return Err(Error::LengthMismatch { left: counts.len(), right: codebook.n() });
    }
    Ok(())
}

/// Index of the first maximiser of `score` over the codebook, or `None` if
/// every score is −∞.
fn first_argmax(codebook: &Codebook, score: impl Fn(&[f64]) -> f64) -> Option<usize> {
    let mut best: Option<(usize, f64)> = None;
    for (m, cw) in codebook.codewords().iter().enumerate() {
        let s = score(cw.log_probs());
        if s == f64::NEG_INFINITY || s.is_nan() {
            continue;
        }
        if best.is_none_or(|(_, b)| s > b) {
            best = Some((m, s));
        }
    }
    best.map(|(m, _)| m)
}

/// Maximum-likelihood message; ties go to the lowest index.
pub fn ml_decode(counts: &SampleCounts, codebook: &Codebook) -> Result<usize> {
    check(counts, codebook)?;
    first_argmax(codebook, |lp| log_likelihood(counts, lp)).ok_or(Error::Decode)
}

/// Minimum-divergence message argmin_m D(N/T ‖ p_m); ties go to the lowest index.
///
/// D(N/T‖p) differs from −log-likelihood/T only by a term that does not
/// depend on the codeword, so this agrees with [`ml_decode`] whenever no two
/// scores are within rounding of each other.
pub fn kl_decode(counts: &SampleCounts, codebook: &Codebook) -> Result<usize> {
    check(counts, codebook)?;
    if counts.trials() == 0 {
        return Err(Error::Config("cannot decode zero samples".into()));
    }
    first_argmax(codebook, |lp| -kl_counts_unchecked(counts, lp)).ok_or(Error::Decode)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::channel::simplex::SimplexPoint;

    #[test]
    fn exact_empirical_codeword_wins() {
        let cws = vec![
            SimplexPoint::new(vec![0.2, 0.8]).unwrap(),
            SimplexPoint::new(vec![0.75, 0.25]).unwrap(),
            SimplexPoint::new(vec![0.5, 0.5]).unwrap(),
        ];
        let cb = Codebook::from_codewords(cws, 1.0, 0).unwrap();
        let counts = SampleCounts::new(vec![3, 1]);
        assert_eq!(ml_decode(&counts, &cb).unwrap(), 1);
        assert_eq!(kl_decode(&counts, &cb).unwrap(), 1);
    }

    #[test]
    fn ties_go_to_lowest_index() {
        let p = SimplexPoint::new(vec![0.3, 0.7]).unwrap();
        let cb = Codebook::from_codewords(vec![p.clone(), p.clone(), p], 1.0, 0).unwrap();
        assert_eq!(ml_decode(&SampleCounts::new(vec![1, 1]), &cb).unwrap(), 0);
    }

    #[test]
    fn zero_likelihood_everywhere_is_an_error() {
        let cb = Codebook::from_codewords(vec![SimplexPoint::new(vec![1.0, 0.0]).unwrap()], 1.0, 0).unwrap();
        assert_eq!(ml_decode(&SampleCounts::new(vec![0, 2]), &cb), Err(Error::Decode));
        assert!(ml_decode(&SampleCounts::new(vec![1, 1, 1]), &cb).is_err());
    }
}
