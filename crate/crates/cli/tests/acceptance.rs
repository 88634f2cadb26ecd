//! Acceptance gate. Runs every criterion at its stated tolerance and prints
//! one `PASS`/`FAIL` line each; exits nonzero if any criterion fails.

use std::error::Error;
use std::f64::consts::{E, FRAC_2_PI, PI};
use std::time::{Duration, Instant};

use molrate::baselines::{converse_rate, fir_rate, FirQuery};
use molrate::channel::{
    estimate_bc_tails, estimate_error_probability, estimate_f_kappa, estimate_kl_tail, estimate_product_moment,
    exact_ensemble_error, CodebookSize, SampleRatio, SimConfig, TailConfig, Z95,
};
use molrate::ex_bounds::{f_kappa, FQuadrature};
use molrate::rc_bounds::{delta_fn, lambda_fn, rate_lower_bound, rc_exponent, rc_exponent_with_delta};
use molrate::{BoundQuery, ExSettings, ExpurgatedBounds, RcSettings};
use molrate_cli::{cmd_simulate, SimulateArgs};

type Outcome = Result<(bool, String), Box<dyn Error>>;

const SEED: u64 = 20_241_016;

fn sweep_rc_fig1() -> Outcome {
    let s = RcSettings::default();
    let table = [(0.0, 1.7595), (0.5, 1.2993), (1.0, 0.8423), (1.5, 0.3890), (1.9, 0.0296)];
    let mut worst: f64 = 0.0;
    for (rate, want) in table {
        let got = rc_exponent(&BoundQuery::new(rate, 400.0), &s)?.exponent;
        worst = worst.max((got - want).abs());
    }
    let start = Instant::now();
    let delta = delta_fn(400.0, &s)?;
    for i in 0..=40 {
        rc_exponent_with_delta(&BoundQuery::new(0.05 * i as f64, 400.0), delta, &s)?;
    }
    let took = start.elapsed();
    Ok((
        worst <= 0.02 && took < Duration::from_secs(60),
        format!("max |err| = {worst:.2e}; 41-point sweep in {:.2} s", took.as_secs_f64()),
    ))
}

fn sweep_ex_fig1() -> Outcome {
    let start = Instant::now();
    let ev = ExpurgatedBounds::new(&ExSettings { rho_max: 1000.0, ..ExSettings::default() })?;
    let table = [(0.0, 12.5969, 0.1), (0.005, 7.5969, 0.05), (0.01, 2.5969, 0.05), (0.012, 0.8055, 0.05), (0.014, 0.0357, 0.05)];
    let mut ok = true;
    let mut got = Vec::new();
    for (rate, want, tol) in table {
        let e = ev.exponent(&BoundQuery::new(rate, 400.0))?.exponent;
        ok &= (e - want).abs() <= tol;
        got.push(format!("{e:.4}"));
    }
    let took = start.elapsed();
    Ok((
        ok && took < Duration::from_secs(300),
        format!("E_ex = [{}] in {:.1} s", got.join(", "), took.as_secs_f64()),
    ))
}

fn zero_crossing() -> Outcome {
    let v = rate_lower_bound(400.0, &RcSettings::default())?.value;
    Ok(((1.90..=1.96).contains(&v), format!("R_LB(400) = {v:.5}")))
}

fn fir_peak() -> Outcome {
    let mut best = (0.0, f64::NEG_INFINITY);
    for i in 1..=8000 {
        let r = 0.25 * i as f64;
        let v = fir_rate(&FirQuery::new(1000.0, r))?;
        if v > best.1 {
            best = (r, v);
        }
    }
    Ok(((390.0..=406.0).contains(&best.0), format!("argmax r = {} (rate {:.5})", best.0, best.1)))
}

fn converse_dominance() -> Outcome {
    let s = RcSettings::default();
    let mut failures = Vec::new();
    for r in [10.0, 50.0, 100.0, 400.0, 2000.0] {
        let c = converse_rate(r)?;
        let lb = rate_lower_bound(r, &s)?.value;
        if lb >= c {
            failures.push(format!("R_LB({r})"));
        }
        for g in [50.0, 200.0, 1000.0] {
            if fir_rate(&FirQuery::new(g, r))? > c {
                failures.push(format!("fir({g},{r})"));
            }
        }
    }
    Ok((failures.is_empty(), format!("20 comparisons, violations: {failures:?}")))
}

fn lemma1_ceiling() -> Outcome {
    let cfg = TailConfig { n: 100, r: SampleRatio::integer(4)?, alpha: 0.5, trials: 1_000_000, seed: SEED, parallelism: 0 };
    let t = estimate_kl_tail(&cfg, 0.1, &RcSettings::default())?;
    let closed = (2.0 * PI * E * 400.0).sqrt() * (-10f64).exp();
    Ok((
        t.empirical <= t.bound && (t.bound - closed).abs() < 1e-12,
        format!("empirical {:.3e} ({} hits) <= bound {:.3e}", t.empirical, t.hits, t.bound),
    ))
}

fn thm1_ceiling() -> Outcome {
    let rc = RcSettings::default();
    let mut checked = 0;
    let mut failures = Vec::new();
    for (n, r) in [(6, 100), (8, 100), (6, 400), (8, 400), (10, 400)] {
        for alpha in [0.5, 1.0] {
            for rate in [0.25, 0.5, 0.75] {
                let config = SimConfig {
                    n,
                    r: SampleRatio::integer(r)?,
                    alpha,
                    size: CodebookSize::Rate(rate),
                    trials: 20_000,
                    seed: SEED,
                    parallelism: 0,
                    fixed_codebook: false,
                };
                let sim = estimate_error_probability(&config, &rc)?;
                let Some(bound) = sim.thm1_bound.filter(|b| *b < 1.0) else { continue };
                checked += 1;
                let wilson_se = (sim.wilson_ci.1 - sim.wilson_ci.0) / (2.0 * Z95);
                if sim.eps_hat > bound + 3.0 * wilson_se {
                    failures.push(format!("n={n} r={r} a={alpha} R={rate}: {:.3e} > {bound:.3e}", sim.eps_hat));
                }
            }
        }
    }
    Ok((
        checked > 0 && failures.is_empty(),
        format!("{checked} configs with a nonvacuous bound; violations: {failures:?}"),
    ))
}

fn product_moments() -> Outcome {
    let configs: [(&[f64], &[f64]); 20] = [
        (&[0.5, 0.5, 0.5], &[0.3, 1.2, 0.0]),
        (&[0.5; 2], &[1.0, 0.0]),
        (&[0.5; 2], &[0.5, 0.5]),
        (&[0.5; 3], &[1.0, 1.0, 1.0]),
        (&[0.5; 4], &[2.0, 0.0, 0.0, 0.0]),
        (&[0.5; 4], &[0.25, 0.25, 0.25, 0.25]),
        (&[0.5; 5], &[1.5, 0.5, 0.0, 0.0, 0.0]),
        (&[1.0; 2], &[1.0, 1.0]),
        (&[1.0; 3], &[0.7, 0.0, 2.3]),
        (&[1.0; 4], &[0.5, 0.5, 0.5, 0.5]),
        (&[2.0; 3], &[1.0, 2.0, 3.0]),
        (&[2.0; 2], &[0.1, 0.9]),
        (&[0.3, 0.7, 1.5], &[1.0, 0.0, 0.5]),
        (&[0.8, 0.8, 0.8, 0.8, 0.8, 0.8], &[0.4, 0.4, 0.4, 0.0, 0.0, 0.0]),
        (&[5.0, 1.0], &[0.5, 1.5]),
        (&[0.5, 2.0, 3.5], &[2.5, 0.0, 0.0]),
        (&[1.2; 8], &[1.0, 1.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0]),
        (&[0.5; 10], &[0.5; 10]),
        (&[3.0, 3.0, 3.0], &[0.05, 0.05, 0.05]),
        (&[0.6, 0.9], &[1.75, 0.35]),
    ];
    let mut worst: f64 = 0.0;
    for (i, (alphas, betas)) in configs.iter().enumerate() {
        let m = estimate_product_moment(alphas, betas, 10_000_000, SEED + i as u64, 0)?;
        worst = worst.max(m.z_score());
    }
    Ok((worst < 3.0, format!("20 configs, 1e7 draws each, max z = {worst:.2}")))
}

fn exact_small_instance() -> Outcome {
    let oracle = exact_ensemble_error(2, 4, 2, 0.5, 1000, SEED)?;
    let config = SimConfig {
        n: 2,
        r: SampleRatio::integer(2)?,
        alpha: 0.5,
        size: CodebookSize::Messages(2),
        trials: 1_000_000,
        seed: SEED,
        parallelism: 0,
        fixed_codebook: false,
    };
    let sim = estimate_error_probability(&config, &RcSettings::default())?;
    let se = (sim.std_err().powi(2) + oracle.std_err.powi(2)).sqrt();
    let z = (sim.eps_hat - oracle.mean).abs() / se;
    Ok((z < 3.0, format!("simulated {:.5}, enumerated {:.5}, z = {z:.2}", sim.eps_hat, oracle.mean)))
}

fn f_kappa_cross_check() -> Outcome {
    let q = FQuadrature::default();
    let f0 = (f_kappa(0.0, &q)? - 1.0).abs();
    let mut ok = f0 <= 1e-9;
    let mut zs = Vec::new();
    for (i, kappa) in [0.2, 0.5, 0.8].into_iter().enumerate() {
        let m = estimate_f_kappa(kappa, 10_000_000, SEED + i as u64, 0, &q)?;
        ok &= m.z_score() < 3.0;
        zs.push(format!("z({kappa}) = {:.2}", m.z_score()));
    }
    Ok((ok, format!("|F(0) - 1| = {f0:.1e}; {}", zs.join(", "))))
}

fn zero_regions() -> Outcome {
    let ev = ExpurgatedBounds::new(&ExSettings::default())?;
    let edge = FRAC_2_PI - 1e-3;
    let (mut g_max, mut l_max): (f64, f64) = (0.0, 0.0);
    for i in 0..=400 {
        let x = edge * i as f64 / 400.0;
        g_max = g_max.max(ev.g(x)?.value);
        if x > 0.0 {
            l_max = l_max.max(ev.l(x)?.value);
        }
    }
    Ok((g_max <= 1e-6 && l_max <= 1e-6, format!("max G = {g_max:.1e}, max L = {l_max:.1e}")))
}

fn bc_tail_ceiling() -> Outcome {
    let ev = ExpurgatedBounds::new(&ExSettings::default())?;
    let t = estimate_bc_tails(50, &[0.95], 1_000_000, SEED, 0, &ev)?[0];
    let bound = 4.0 * (-50.0 * ev.l(0.95)?.value).exp();
    Ok((t.empirical <= bound, format!("empirical {:.3e} ({} hits) <= 4 e^(-50 L) = {bound:.3e}", t.empirical, t.hits)))
}

/// Brute-force maximum of min{[Λ − ξ(Δ+μ) − R]₊, μ} over a 100³ grid, then a
/// second 100³ grid spanning the neighbouring cells of the best point.
fn brute_force_rc(rate: f64, r: f64) -> Result<f64, Box<dyn Error>> {
    let s = RcSettings::default();
    let delta = delta_fn(r, &s)?;
    const K: usize = 100;
    // geometric spacing above each lower limit reaches the small ξ and α − ½ regions
    let geom = |lo: f64, hi: f64| -> Vec<f64> {
        (0..K).map(|i| lo * (hi / lo).powf(i as f64 / (K - 1) as f64)).collect()
    };
    let linear = |lo: f64, hi: f64| -> Vec<f64> { (0..K).map(|i| lo + (hi - lo) * i as f64 / (K - 1) as f64).collect() };
    let search = |alphas: &[f64], xis: &[f64], mus: &[f64]| -> Result<(f64, [usize; 3]), Box<dyn Error>> {
        let mut best = (f64::NEG_INFINITY, [0; 3]);
        for (i, &a) in alphas.iter().enumerate() {
            for (j, &x) in xis.iter().enumerate() {
                let lam = lambda_fn(r, a, x)?;
                for (k, &m) in mus.iter().enumerate() {
                    let v = (lam - x * (delta + m) - rate).max(0.0).min(m);
                    if v > best.0 {
                        best = (v, [i, j, k]);
                    }
                }
            }
        }
        Ok(best)
    };
    let alphas: Vec<f64> = geom(1e-4, s.alpha_cap - 0.5).into_iter().map(|d| 0.5 + d).collect();
    let xis = geom(1e-5, s.xi_cap);
    let mus = geom(1e-4, s.mu_cap);
    let (coarse, [i, j, k]) = search(&alphas, &xis, &mus)?;
    let around = |v: &[f64], idx: usize, lo: f64, hi: f64| {
        let a = if idx == 0 { lo } else { v[idx - 1] };
        let b = if idx + 1 == v.len() { hi } else { v[idx + 1] };
        linear(a.max(lo), b.min(hi))
    };
    let (fine, _) = search(
        &around(&alphas, i, 0.5 + 1e-9, s.alpha_cap),
        &around(&xis, j, 1e-9, s.xi_cap),
        &around(&mus, k, 1e-9, s.mu_cap),
    )?;
    Ok(coarse.max(fine))
}

fn mu_reduction_vs_grid() -> Outcome {
    let s = RcSettings::default();
    let mut worst: f64 = 0.0;
    let mut details = Vec::new();
    for (rate, r) in [(0.0, 400.0), (1.0, 400.0), (0.5, 10.0)] {
        let closed = rc_exponent(&BoundQuery::new(rate, r), &s)?.exponent;
        let grid = brute_force_rc(rate, r)?;
        worst = worst.max((closed - grid).abs());
        details.push(format!("({rate}, {r}): {closed:.5} vs {grid:.5}"));
    }
    Ok((worst <= 1e-3, format!("max |diff| = {worst:.1e}; {}", details.join("; "))))
}

fn simulate_determinism() -> Outcome {
    let args = |parallelism| SimulateArgs {
        n: 6,
        r: "5/2".parse().expect("valid ratio"),
        messages: Some(16),
        rate: None,
        alpha: 0.5,
        trials: 20_000,
        seed: SEED,
        parallelism,
        fixed_codebook: false,
        out: None,
    };
    let outputs = [1, 4, 16]
        .into_iter()
        .map(|p| cmd_simulate(&args(p)).map(|(csv, _)| csv))
        .collect::<Result<Vec<_>, _>>()?;
    let same = outputs.windows(2).all(|w| w[0].as_bytes() == w[1].as_bytes());
    Ok((same, format!("{} bytes, identical at parallelism 1, 4, 16: {same}", outputs[0].len())))
}

type Criterion = (&'static str, fn() -> Outcome);

fn main() {
    let criteria: [Criterion; 14] = [
        ("01 rc exponent table and sweep time", sweep_rc_fig1),
        ("02 expurgated exponent table", sweep_ex_fig1),
        ("03 rate lower bound zero crossing", zero_crossing),
        ("04 FIR peak location", fir_peak),
        ("05 converse dominance", converse_dominance),
        ("06 KL tail ceiling", lemma1_ceiling),
        ("07 error probability ceiling", thm1_ceiling),
        ("08 Dirichlet product moments", product_moments),
        ("09 exact small-instance decode", exact_small_instance),
        ("10 F(kappa) cross-check", f_kappa_cross_check),
        ("11 structural zero regions", zero_regions),
        ("12 BC tail ceiling", bc_tail_ceiling),
        ("13 closed-form mu step vs 3-D grid", mu_reduction_vs_grid),
        ("14 simulate determinism", simulate_determinism),
    ];
    let mut failed = 0;
    for (name, run) in criteria {
        let start = Instant::now();
        let (passed, detail) = run().unwrap_or_else(|e| (false, format!("error: {e}")));
        failed += usize::from(!passed);
        println!(
            "{} criterion {name}: {detail} [{:.1} s]",
            if passed { "PASS" } else { "FAIL" },
            start.elapsed().as_secs_f64()
        );
    }
    println!("acceptance: {} passed, {failed} failed", 14 - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
