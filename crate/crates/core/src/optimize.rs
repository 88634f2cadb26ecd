//! Deterministic one-dimensional search used by every sup/inf in the bounds.
//!
//! A coarse uniform scan locates the best cell, then golden-section search
//! refines inside the neighbouring cells. Nested suprema are handled by nesting
//! calls, never by multivariate optimisation.

use crate::error::{Error, Result};

/// A search domain; open endpoints are inset and never evaluated exactly.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SearchInterval {
    pub lo: f64,
    pub hi: f64,
    pub open_lo: bool,
    pub open_hi: bool,
}

impl SearchInterval {
    pub fn closed(lo: f64, hi: f64) -> Self {
        Self { lo, hi, open_lo: false, open_hi: false }
    }

    pub fn open(lo: f64, hi: f64) -> Self {
        Self { lo, hi, open_lo: true, open_hi: true }
    }

    /// `(lo, hi]`
    pub fn open_closed(lo: f64, hi: f64) -> Self {
        Self { lo, hi, open_lo: true, open_hi: false }
    }

    /// `[lo, hi)`
    pub fn closed_open(lo: f64, hi: f64) -> Self {
        Self { lo, hi, open_lo: false, open_hi: true }
    }

    pub fn validate(&self) -> Result<()> {
        if self.lo.is_finite() && self.hi.is_finite() && self.lo < self.hi {
            Ok(())
        } else {
            Err(Error::Config(format!(
                "search interval needs finite lo < hi, got [{}, {}]",
                self.lo, self.hi
            )))
        }
    }

    /// The closed interval actually searched, after insetting open ends by
    /// `margin · max(|endpoint|, 1)`.
    pub fn inset(&self, margin: f64) -> (f64, f64) {
        let lo = if self.open_lo {
            self.lo + margin * self.lo.abs().max(1.0)
        } else {
            self.lo
        };
        let hi = if self.open_hi {
            self.hi - margin * self.hi.abs().max(1.0)
        } else {
            self.hi
        };
        (lo, hi)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OptimizerSettings {
    pub coarse_points: usize,
    pub refine_iters: usize,
    pub tol: f64,
    pub open_margin: f64,
}

impl Default for OptimizerSettings {
    fn default() -> Self {
        Self {
            coarse_points: 512,
            refine_iters: 80,
            tol: 1e-9,
            open_margin: 1e-8,
        }
    }
}

impl OptimizerSettings {
    pub fn validate(&self) -> Result<()> {
        if self.coarse_points < 3 {
            return Err(Error::Config("coarse_points must be at least 3".into()));
        }
        if !(self.tol > 0.0) {
            return Err(Error::Config("tol must be positive".into()));
        }
        if !(self.open_margin >= 0.0 && self.open_margin < 0.5) {
            return Err(Error::Config("open_margin must lie in [0, 0.5)".into()));
        }
        Ok(())
    }

    /// Same tolerances with a different grid density.
    pub fn with_coarse_points(self, coarse_points: usize) -> Self {
        Self { coarse_points, ..self }
    }
}

/// Location and value of an optimum.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Extremum {
    pub arg: f64,
    pub value: f64,
}

const INV_PHI: f64 = 0.618_033_988_749_894_9;

#[inline]
fn grid_point(a: f64, b: f64, n: usize, i: usize) -> f64 {
    if i + 1 == n {
        b
    } else {
        a + (b - a) / (n - 1) as f64 * i as f64
    }
}

/// The coarse scan points `maximize_scalar` evaluates, in order.
///
/// Callers with an expensive objective can tabulate it here once and serve
/// the scan from the table.
pub fn coarse_grid(interval: SearchInterval, settings: &OptimizerSettings) -> Vec<f64> {
    let (a, b) = interval.inset(settings.open_margin);
    (0..settings.coarse_points)
        .map(|i| grid_point(a, b, settings.coarse_points, i))
        .collect()
}

/// Maximises `objective` over `interval`.
///
/// The returned value is never below any coarse-grid value. Non-finite
/// objective values are treated as `-inf`; if every grid point is non-finite
/// an [`Error::Evaluation`] is returned.
pub fn maximize_scalar<F>(
    mut objective: F,
    interval: SearchInterval,
    settings: &OptimizerSettings,
) -> Result<Extremum>
where
    F: FnMut(f64) -> f64,
{
    interval.validate()?;
    settings.validate()?;
    let (a, b) = interval.inset(settings.open_margin);
    if !(a < b) {
        return Err(Error::Config(format!("inset interval [{a}, {b}] is empty")));
    }

    let n = settings.coarse_points;
    let grid = |i: usize| grid_point(a, b, n, i);

    let mut best = Extremum { arg: f64::NAN, value: f64::NEG_INFINITY };
    let mut best_idx = None;
    let mut last = a;
    for i in 0..n {
        let x = grid(i);
        let v = objective(x);
        last = x;
        if v.is_finite() && v > best.value {
            best = Extremum { arg: x, value: v };
            best_idx = Some(i);
        }
    }
    let Some(idx) = best_idx else {
        return Err(Error::Evaluation { at: last });
    };

    let mut lo = grid(idx.saturating_sub(1));
    let mut hi = grid((idx + 1).min(n - 1));
    let eval = |x: f64, f: &mut F| {
        let v = f(x);
        if v.is_finite() {
            v
        } else {
            f64::NEG_INFINITY
        }
    };

    let mut x1 = hi - INV_PHI * (hi - lo);
    let mut x2 = lo + INV_PHI * (hi - lo);
    let mut f1 = eval(x1, &mut objective);
    let mut f2 = eval(x2, &mut objective);
    for _ in 0..settings.refine_iters {
        if hi - lo <= settings.tol * (1.0 + best.arg.abs()) {
            break;
        }
        if f1 >= f2 {
            if f1 > best.value {
                best = Extremum { arg: x1, value: f1 };
            }
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - INV_PHI * (hi - lo);
            f1 = eval(x1, &mut objective);
        } else {
            if f2 > best.value {
                best = Extremum { arg: x2, value: f2 };
            }
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + INV_PHI * (hi - lo);
            f2 = eval(x2, &mut objective);
        }
    }
    for (x, v) in [(x1, f1), (x2, f2)] {
        if v > best.value {
            best = Extremum { arg: x, value: v };
        }
    }
    Ok(best)
}

/// Minimises `objective`; `maximize_scalar` on the negation.
pub fn minimize_scalar<F>(
    mut objective: F,
    interval: SearchInterval,
    settings: &OptimizerSettings,
) -> Result<Extremum>
where
    F: FnMut(f64) -> f64,
{
    let m = maximize_scalar(|x| -objective(x), interval, settings)?;
    Ok(Extremum { arg: m.arg, value: -m.value })
}

/// Bisection for the point where a nondecreasing `rising` meets a
/// nonincreasing `falling` on `[lo, hi]`.
///
/// Returns the point maximising `min(rising, falling)`: the crossing if one
/// exists, otherwise the endpoint where the min is largest. Every evaluation
/// of `min(rising, falling)` is tracked, so the returned value is attained.
pub fn monotone_crossing<R, F>(
    mut rising: R,
    mut falling: F,
    lo: f64,
    hi: f64,
    tol: f64,
    max_iters: usize,
) -> Extremum
where
    R: FnMut(f64) -> f64,
    F: FnMut(f64) -> f64,
{
    let mut best = Extremum { arg: lo, value: f64::NEG_INFINITY };
    let mut probe = |x: f64, best: &mut Extremum| {
        let (r, f) = (rising(x), falling(x));
        let v = r.min(f);
        if v > best.value {
            *best = Extremum { arg: x, value: v };
        }
        r - f
    };
    let d_lo = probe(lo, &mut best);
    let d_hi = probe(hi, &mut best);
    if d_lo >= 0.0 || d_hi <= 0.0 {
        // no sign change: the min is one monotone curve throughout
        return best;
    }
    let (mut a, mut b) = (lo, hi);
    for _ in 0..max_iters {
        if b - a <= tol * (1.0 + a.abs()) {
            break;
        }
        let m = 0.5 * (a + b);
        if probe(m, &mut best) < 0.0 {
            a = m;
        } else {
            b = m;
        }
    }
    best
}
