//! Built-in verification suites.
//!
//! These are quick versions of the library's own test oracles, meant for a
//! user to run on an installed binary. Each check reports one line.

use std::f64::consts::{FRAC_2_PI, LN_2, PI};

use molrate::baselines::{converse_rate, fir_rate, FirQuery};
use molrate::channel::{
    estimate_bc_tails, estimate_error_probability, estimate_f_kappa, estimate_kl_tail, estimate_product_moment,
    exact_ensemble_error, kl_decode, ml_decode, sample_multinomial, stream_rng, Codebook, CodebookSize, SampleRatio,
    SimConfig, TailConfig,
};
use molrate::ex_bounds::{f_kappa, FQuadrature};
use molrate::rc_bounds::{delta_fn, rate_lower_bound, rc_exponent_with_delta};
use molrate::special_fn::{log_gamma, psi_fn, stirling_bracket, zeta};
use molrate::{BoundQuery, ExSettings, ExpurgatedBounds, RcSettings};
use rand::Rng;

use crate::args::Suite;

#[derive(Debug, Clone, PartialEq)]
pub struct Check {
    pub suite: &'static str,
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

impl Check {
    /// `PASS\tsuite\tname\tdetail`, tab-separated for easy parsing.
    pub fn line(&self) -> String {
        let status = if self.passed { "PASS" } else { "FAIL" };
        format!("{status}\t{}\t{}\t{}", self.suite, self.name, self.detail)
    }
}

struct Recorder {
    suite: &'static str,
    checks: Vec<Check>,
}

impl Recorder {
    fn new(suite: &'static str) -> Self {
        Self { suite, checks: Vec::new() }
    }

    fn check(&mut self, name: &'static str, outcome: molrate::Result<(bool, String)>) {
        let (passed, detail) = outcome.unwrap_or_else(|e| (false, format!("error: {e}")));
        self.checks.push(Check { suite: self.suite, name, passed, detail });
    }
}

fn special() -> Vec<Check> {
    let mut rec = Recorder::new("special");
    rec.check("stirling_sandwich", (|| {
        let mut worst = 0usize;
        for i in 1..=2000 {
            let t = 0.05 * i as f64;
            let b = stirling_bracket(t)?;
            let g = log_gamma(t)?.exp();
            if !(b.lower <= g * (1.0 + 1e-12) && g <= b.upper * (1.0 + 1e-12)) {
                worst += 1;
            }
        }
        Ok((worst == 0, format!("{worst} violations on t in (0, 100]")))
    })());
    rec.check("zeta_closed_forms", (|| {
        let e2 = (zeta(2.0)? - PI * PI / 6.0).abs();
        let e4 = (zeta(4.0)? - PI.powi(4) / 90.0).abs();
        Ok((e2 < 1e-10 && e4 < 1e-10, format!("|err| = {e2:.1e}, {e4:.1e}")))
    })());
    rec.check("log_gamma_recurrence", (|| {
        let mut worst: f64 = 0.0;
        for i in 1..=500 {
            let t = 0.1 * i as f64;
            let lhs = log_gamma(t + 1.0)?;
            worst = worst.max((lhs - log_gamma(t)? - t.ln()).abs() / lhs.abs().max(1.0));
        }
        Ok((worst < 1e-12, format!("max rel err {worst:.1e}")))
    })());
    rec.check("psi_values", (|| {
        let e = (psi_fn(1.0)? - 2.0 * LN_2).abs();
        Ok((e < 1e-14 && psi_fn(0.0)? == 0.0, format!("|psi(1) - 2 ln 2| = {e:.1e}")))
    })());
    rec.checks
}

fn rc() -> Vec<Check> {
    let mut rec = Recorder::new("rc");
    let s = RcSettings::default();
    let delta = delta_fn(400.0, &s);
    let table = [(0.0, 1.7595), (0.5, 1.2993), (1.0, 0.8423), (1.5, 0.3890), (1.9, 0.0296)];
    rec.check("exponent_table_r400", (|| {
        let d = delta.clone()?;
        let mut worst: f64 = 0.0;
        for (rate, want) in table {
            let got = rc_exponent_with_delta(&BoundQuery::new(rate, 400.0), d, &s)?.exponent;
            worst = worst.max((got - want).abs());
        }
        Ok((worst <= 0.02, format!("max |err| = {worst:.2e}")))
    })());
    rec.check("rate_lower_bound_r400", (|| {
        let v = rate_lower_bound(400.0, &s)?.value;
        Ok(((1.90..=1.96).contains(&v), format!("R_LB(400) = {v:.5}")))
    })());
    rec.check("exponent_nonincreasing", (|| {
        let d = delta.clone()?;
        let mut prev = f64::INFINITY;
        let mut ok = true;
        for i in 0..=20 {
            let e = rc_exponent_with_delta(&BoundQuery::new(0.1 * i as f64, 400.0), d, &s)?.exponent;
            ok &= e <= prev + 1e-9;
            prev = e;
        }
        Ok((ok, "E_r(R, 400) on R = 0, 0.1, ..., 2".into()))
    })());
    let (best, _) = (1..=4000)
        .map(|i| 0.25 * i as f64)
        .map(|r| (r, fir_rate(&FirQuery::new(1000.0, r)).unwrap_or(f64::NAN)))
        .fold((0.0, f64::NEG_INFINITY), |a, b| if b.1 > a.1 { b } else { a });
    rec.check("fir_peak_g1000", Ok(((396.0..=400.0).contains(&best), format!("argmax r = {best}"))));
    rec.check("converse_dominance", (|| {
        let mut ok = true;
        for r in [10.0, 100.0, 400.0, 2000.0] {
            let c = converse_rate(r)?;
            ok &= rate_lower_bound(r, &s)?.value < c;
            for g in [50.0, 200.0, 1000.0] {
                ok &= fir_rate(&FirQuery::new(g, r))? <= c;
            }
        }
        Ok((ok, "R_LB and FIR below 1/2 log r".into()))
    })());
    rec.checks
}

fn ex() -> Vec<Check> {
    let mut rec = Recorder::new("ex");
    let ev = ExpurgatedBounds::new(&ExSettings::default());
    rec.check("f_closed_form", (|| {
        let q = FQuadrature::default();
        let mut worst: f64 = 0.0;
        for i in 0..=99 {
            let k = 0.01 * i as f64;
            let exact = (1.0 + FRAC_2_PI * k.asin()) / (1.0 - k * k).sqrt();
            worst = worst.max((f_kappa(k, &q)? - exact).abs());
        }
        Ok((worst <= 1e-8, format!("max |err| = {worst:.1e} on [0, 0.99]")))
    })());
    rec.check("zero_regions", (|| {
        let ev = ev.clone()?;
        let mut worst: f64 = 0.0;
        for i in 0..=50 {
            let x = (FRAC_2_PI - 1e-3) * i as f64 / 50.0;
            worst = worst.max(ev.g(x)?.value).max(if x > 0.0 { ev.l(x)?.value } else { 0.0 });
        }
        Ok((worst <= 1e-6, format!("max G, L below 2/pi = {worst:.1e}")))
    })());
    rec.check("exponent_r400", (|| {
        let ev = ev.clone()?;
        let e = ev.exponent(&BoundQuery::new(0.012, 400.0))?.exponent;
        Ok(((e - 0.8055).abs() <= 0.05, format!("E_ex(0.012, 400) = {e:.4}")))
    })());
    rec.check("s_nonincreasing_in_rho", (|| {
        let ev = ev.clone()?;
        let s2 = ev.s(400.0, 2.0)?.value;
        let s10 = ev.s(400.0, 10.0)?.value;
        let s1000 = ev.s(400.0, 1000.0)?.value;
        Ok((s2 > s10 && s10 >= s1000, format!("S = {s2:.5}, {s10:.5}, {s1000:.5}")))
    })());
    rec.checks
}

fn channel(seed: u64) -> Vec<Check> {
    let mut rec = Recorder::new("channel");
    let rc = RcSettings::default();
    rec.check("dirichlet_mean", (|| {
        let m = estimate_product_moment(&[0.5; 4], &[1.0, 0.0, 0.0, 0.0], 200_000, seed, 0)?;
        Ok((m.z_score() < 3.0, format!("E[P1] = {:.5} (z = {:.2})", m.mc_estimate, m.z_score())))
    })());
    rec.check("product_moment", (|| {
        let m = estimate_product_moment(&[0.5; 3], &[0.3, 1.2, 0.0], 200_000, seed, 0)?;
        Ok((m.z_score() < 3.0, format!("closed {:.5}, mc {:.5} (z = {:.2})", m.closed_form, m.mc_estimate, m.z_score())))
    })());
    rec.check("f_kappa_monte_carlo", (|| {
        let m = estimate_f_kappa(0.2, 200_000, seed, 0, &FQuadrature::default())?;
        Ok((m.z_score() < 3.0, format!("F(0.2): z = {:.2}", m.z_score())))
    })());
    rec.check("decoder_equivalence", (|| {
        let mut rng = stream_rng(seed, 0);
        let mut agree = 0;
        for i in 0..1000 {
            let cb = Codebook::generate(6, 8, 0.5, seed, i + 1)?;
            let sent = rng.random_range(0..8);
            let counts = sample_multinomial(&cb.codewords()[sent], 12, &mut rng);
            agree += usize::from(ml_decode(&counts, &cb)? == kl_decode(&counts, &cb)?);
        }
        Ok((agree == 1000, format!("{agree}/1000 agree")))
    })());
    rec.check("exact_small_instance", (|| {
        let oracle = exact_ensemble_error(2, 4, 2, 0.5, 1000, seed)?;
        let config = SimConfig {
            n: 2,
            r: SampleRatio::integer(2)?,
            alpha: 0.5,
            size: CodebookSize::Messages(2),
            trials: 100_000,
            seed,
            parallelism: 0,
            fixed_codebook: false,
        };
        let sim = estimate_error_probability(&config, &rc)?;
        let se = (sim.std_err().powi(2) + oracle.std_err.powi(2)).sqrt();
        let z = (sim.eps_hat - oracle.mean).abs() / se;
        Ok((z < 3.0, format!("sim {:.5}, exact {:.5} (z = {z:.2})", sim.eps_hat, oracle.mean)))
    })());
    rec.check("lemma1_ceiling", (|| {
        let cfg = TailConfig { n: 100, r: SampleRatio::integer(4)?, alpha: 0.5, trials: 100_000, seed, parallelism: 0 };
        let t = estimate_kl_tail(&cfg, 0.1, &rc)?;
        Ok((t.empirical <= t.bound, format!("empirical {:.2e} <= bound {:.2e}", t.empirical, t.bound)))
    })());
    rec.check("bc_tail_ceiling", (|| {
        let ev = ExpurgatedBounds::new(&ExSettings::default())?;
        let t = estimate_bc_tails(50, &[0.95], 100_000, seed, 0, &ev)?[0];
        Ok((t.empirical <= t.bound, format!("empirical {:.2e} <= bound {:.2e}", t.empirical, t.bound)))
    })());
    rec.check("thm1_ceiling", (|| {
        let config = SimConfig {
            n: 8,
            r: SampleRatio::integer(400)?,
            alpha: 0.5,
            size: CodebookSize::Rate(0.5),
            trials: 20_000,
            seed,
            parallelism: 0,
            fixed_codebook: false,
        };
        let sim = estimate_error_probability(&config, &rc)?;
        let bound = sim.thm1_bound.unwrap_or(f64::INFINITY);
        let ok = bound >= 1.0 || sim.eps_hat <= bound + 3.0 * sim.std_err();
        Ok((ok, format!("eps_hat {:.2e}, bound {bound:.2e}", sim.eps_hat)))
    })());
    rec.checks
}

/// Runs the selected suite(s).
pub fn run_suite(suite: Suite, seed: u64) -> Vec<Check> {
    match suite {
        Suite::Special => special(),
        Suite::Rc => rc(),
        Suite::Ex => ex(),
        Suite::Channel => channel(seed),
        Suite::All => [special(), rc(), ex(), channel(seed)].concat(),
    }
}
