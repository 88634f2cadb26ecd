//! Expurgated side: F(κ) by quadrature, then G, J, L, S and E_ex(R, r).
//!
//! Every function here concerns Dirichlet(½) codebooks, where a codeword is
//! the normalised square of a standard normal vector.
//!
//! The nesting is deep (E_ex → S → L → G → F), so [`ExpurgatedBounds`]
//! tabulates log F on the κ scan grid once and reuses it for every G call.
//! L and S are suprema of the minimum of a nondecreasing and a nonincreasing
//! curve; both are resolved by bisecting for the crossing.

use std::f64::consts::{FRAC_2_PI, PI};

use rayon::prelude::*;

use crate::error::{ensure, Error, Result};
use crate::optimize::{coarse_grid, maximize_scalar, monotone_crossing, Extremum, OptimizerSettings, SearchInterval};
use crate::quad::{integrate, QuadSettings};
use crate::rc_bounds::{check_r, BoundQuery, ExponentPoint};
use crate::special_fn::normal_cdf_unchecked;

/// E|XY| for independent standard normals; G and L vanish up to here.
pub const MEAN_ABS_PRODUCT: f64 = FRAC_2_PI;

const MAX_BISECTIONS: usize = 200;

/// Witness for the expurgated exponent.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ExParams {
    pub kappa: f64,
    pub sigma: f64,
    pub lam: f64,
    pub rho: f64,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FQuadrature {
    pub panels: usize,
    /// Upper integration limit; `None` uses `max(12, 12/√(1−κ²))`.
    pub truncation: Option<f64>,
    pub abs_tol: f64,
}

impl Default for FQuadrature {
    fn default() -> Self {
        Self { panels: 8, truncation: None, abs_tol: 1e-10 }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ExSettings {
    /// Upper limit ρ₀ of the ρ search.
    pub rho_max: f64,
    pub quadrature: FQuadrature,
    pub optimizer: OptimizerSettings,
}

impl Default for ExSettings {
    fn default() -> Self {
        Self {
            rho_max: 1000.0,
            quadrature: FQuadrature::default(),
            optimizer: OptimizerSettings::default(),
        }
    }
}

impl ExSettings {
    pub fn validate(&self) -> Result<()> {
        self.optimizer.validate()?;
        if !(self.rho_max > 1.0 && self.rho_max.is_finite()) {
            return Err(Error::Config(format!("rho_max must exceed 1, got {}", self.rho_max)));
        }
        let q = &self.quadrature;
        if q.panels == 0 || !(q.abs_tol > 0.0) || q.truncation.is_some_and(|t| !(t > 0.0)) {
            return Err(Error::Config("invalid quadrature settings".into()));
        }
        Ok(())
    }
}

/// L(λ) with the inner maximisers.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LValue {
    pub value: f64,
    pub sigma: f64,
    pub kappa: f64,
}

/// S(r, ρ) with the maximising λ.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SValue {
    pub value: f64,
    pub lam: f64,
}

/// F(κ) = (4/√(2π)) ∫₀^∞ exp{−½(1−κ²)x²} Φ(κx) dx = E[exp(κ|XY|)].
pub fn f_kappa(kappa: f64, quadrature: &FQuadrature) -> Result<f64> {
    ensure((0.0..1.0).contains(&kappa), "kappa", kappa, "[0, 1)")?;
    Ok(f_kappa_unchecked(kappa, quadrature))
}

fn f_kappa_unchecked(kappa: f64, quadrature: &FQuadrature) -> f64 {
    let a = 1.0 - kappa * kappa;
    let upper = quadrature.truncation.unwrap_or_else(|| 12f64.max(12.0 / a.sqrt()));
    let settings = QuadSettings {
        panels: quadrature.panels,
        abs_tol: quadrature.abs_tol,
        ..QuadSettings::default()
    };
    let integral = integrate(
        |x| (-0.5 * a * x * x).exp() * normal_cdf_unchecked(kappa * x),
        0.0,
        upper,
        &settings,
    );
    4.0 / (2.0 * PI).sqrt() * integral
}

/// J(σ) = ½[σ − log σ − 1].
pub fn j_fn(sigma: f64) -> Result<f64> {
    ensure(sigma > 0.0 && sigma <= 1.0, "sigma", sigma, "(0, 1]")?;
    Ok(j_unchecked(sigma))
}

#[inline]
fn j_unchecked(sigma: f64) -> f64 {
    0.5 * (sigma - sigma.ln() - 1.0)
}

/// G(x) = sup_{κ∈(0,1)} [κx − log F(κ)].
pub fn g_fn(x: f64, settings: &ExSettings) -> Result<f64> {
    ExpurgatedBounds::new(settings)?.g(x).map(|m| m.value)
}

/// L(λ) = sup_{σ∈(0,1)} min{G(λσ), J(σ)}.
pub fn l_fn(lam: f64, settings: &ExSettings) -> Result<f64> {
    ExpurgatedBounds::new(settings)?.l(lam).map(|v| v.value)
}

/// S(r, ρ) = sup_{λ∈(0,1)} min[(r/ρ) log(1/λ), L(λ)].
pub fn s_fn(r: f64, rho: f64, settings: &ExSettings) -> Result<f64> {
    ExpurgatedBounds::new(settings)?.s(r, rho).map(|v| v.value)
}

/// E_ex(R, r) = sup_{1<ρ≤ρ₀} ρ·(S(r, ρ) − R), clipped at zero.
pub fn ex_exponent(query: &BoundQuery, settings: &ExSettings) -> Result<ExponentPoint<ExParams>> {
    ExpurgatedBounds::new(settings)?.exponent(query)
}

/// Evaluator for the expurgated bound family that caches log F on the κ grid.
#[derive(Debug, Clone)]
pub struct ExpurgatedBounds {
    settings: ExSettings,
    kappa_grid: Vec<f64>,
    log_f_grid: Vec<f64>,
}

fn kappa_interval() -> SearchInterval {
    SearchInterval::open(0.0, 1.0)
}

/// Serves `f` from a table on the exact grid points, computing elsewhere.
fn tabulated<'a>(grid: &'a [f64], values: &'a [f64], f: impl Fn(f64) -> f64 + 'a) -> impl Fn(f64) -> f64 + 'a {
    move |x| match grid.binary_search_by(|g| g.total_cmp(&x)) {
        Ok(i) => values[i],
        Err(_) => f(x),
    }
}

impl ExpurgatedBounds {
    pub fn new(settings: &ExSettings) -> Result<Self> {
        settings.validate()?;
        let kappa_grid = coarse_grid(kappa_interval(), &settings.optimizer);
        let log_f_grid = kappa_grid
            .par_iter()
            .map(|&k| f_kappa_unchecked(k, &settings.quadrature).ln())
            .collect();
        Ok(Self { settings: *settings, kappa_grid, log_f_grid })
    }

    pub fn settings(&self) -> &ExSettings {
        &self.settings
    }

    pub fn log_f(&self, kappa: f64) -> Result<f64> {
        ensure((0.0..1.0).contains(&kappa), "kappa", kappa, "[0, 1)")?;
        let quad = self.settings.quadrature;
        Ok(tabulated(&self.kappa_grid, &self.log_f_grid, move |k| f_kappa_unchecked(k, &quad).ln())(kappa))
    }

    /// G(x) and its maximising κ. The value is clipped at zero, the κ → 0 limit.
    pub fn g(&self, x: f64) -> Result<Extremum> {
        ensure((0.0..1.0).contains(&x), "x", x, "[0, 1)")?;
        let quad = self.settings.quadrature;
        let log_f = tabulated(&self.kappa_grid, &self.log_f_grid, move |k| f_kappa_unchecked(k, &quad).ln());
        let m = maximize_scalar(|k| k * x - log_f(k), kappa_interval(), &self.settings.optimizer)?;
        if m.value > 0.0 {
            Ok(m)
        } else {
            Ok(Extremum { arg: 0.0, value: 0.0 })
        }
    }

    fn g_value(&self, x: f64) -> f64 {
        self.g(x).map(|m| m.value).unwrap_or(f64::NAN)
    }

    fn bisection_tol(&self) -> f64 {
        self.settings.optimizer.tol
    }

    pub fn l(&self, lam: f64) -> Result<LValue> {
        ensure(lam > 0.0 && lam < 1.0, "lambda", lam, "(0, 1)")?;
        let (lo, hi) = SearchInterval::open(0.0, 1.0).inset(self.settings.optimizer.open_margin);
        let c = monotone_crossing(
            |sigma| self.g_value(lam * sigma),
            j_unchecked,
            lo,
            hi,
            self.bisection_tol(),
            MAX_BISECTIONS,
        );
        if !c.value.is_finite() {
            return Err(Error::Evaluation { at: c.arg });
        }
        let kappa = self.g(lam * c.arg)?.arg;
        Ok(LValue { value: c.value.max(0.0), sigma: c.arg, kappa })
    }

    fn l_value(&self, lam: f64) -> f64 {
        self.l(lam).map(|v| v.value).unwrap_or(f64::NAN)
    }

    /// λ range searched by S: L vanishes on (0, 2/π].
    fn lambda_range(&self) -> (f64, f64) {
        SearchInterval::open(MEAN_ABS_PRODUCT, 1.0).inset(self.settings.optimizer.open_margin)
    }

    pub fn s(&self, r: f64, rho: f64) -> Result<SValue> {
        check_r(r)?;
        ensure(rho > 1.0 && !rho.is_nan(), "rho", rho, "(1, inf)")?;
        if rho.is_infinite() {
            return Ok(SValue { value: 0.0, lam: 1.0 });
        }
        let (lo, hi) = self.lambda_range();
        let c = monotone_crossing(
            |lam| self.l_value(lam),
            |lam: f64| r / rho * (1.0 / lam).ln(),
            lo,
            hi,
            self.bisection_tol(),
            MAX_BISECTIONS,
        );
        if !c.value.is_finite() {
            return Err(Error::Evaluation { at: c.arg });
        }
        Ok(SValue { value: c.value.max(0.0), lam: c.arg })
    }

    /// E_ex(R, r) over ρ ∈ (1, ρ₀].
    ///
    /// The S crossing ties each ρ to a unique λ with `ρ = r log(1/λ) / L(λ)`,
    /// and that map is decreasing. The ρ search is therefore carried out over
    /// λ between the crossings for ρ₀ and for ρ = 1, with `S = L(λ)` at each
    /// point; this needs one L evaluation per candidate instead of a full S
    /// bisection.
    pub fn exponent(&self, query: &BoundQuery) -> Result<ExponentPoint<ExParams>> {
        ensure(query.rate >= 0.0 && query.rate.is_finite(), "R", query.rate, "[0, inf)")?;
        check_r(query.r)?;
        let (rate, r) = (query.rate, query.r);
        let rho_max = self.settings.rho_max;

        let lam_lo = self.s(r, rho_max)?.lam;
        let lam_hi = self.s(r, 1.0 + self.settings.optimizer.open_margin)?.lam;
        if !(lam_lo < lam_hi) {
            return Err(Error::Evaluation { at: lam_lo });
        }

        let rho_of = |lam: f64, l: f64| (r * (1.0 / lam).ln() / l).min(rho_max);
        let objective = |lam: f64| {
            let l = self.l_value(lam);
            if l > 0.0 {
                rho_of(lam, l) * (l - rate)
            } else {
                f64::NAN
            }
        };

        let interval = SearchInterval::closed(lam_lo, lam_hi);
        let opt = &self.settings.optimizer;
        let grid = coarse_grid(interval, opt);
        let values: Vec<f64> = grid.par_iter().map(|&lam| objective(lam)).collect();
        let best = maximize_scalar(tabulated(&grid, &values, objective), interval, opt)?;

        let lam = best.arg;
        let lv = self.l(lam)?;
        let rho = rho_of(lam, lv.value);
        let capped = lam - lam_lo <= (lam_hi - lam_lo) / (opt.coarse_points - 1) as f64;
        Ok(ExponentPoint {
            rate,
            exponent: best.value.max(0.0),
            argmax: ExParams { kappa: lv.kappa, sigma: lv.sigma, lam, rho },
            capped,
        })
    }
}
