use molrate::baselines::{converse_rate, fir_rate, FirQuery};
use molrate::channel::{estimate_error_probability, CodebookSize, SimConfig, SimReport};
use molrate::rc_bounds::{delta_fn, rate_lower_bound, rc_exponent_with_delta};
use molrate::{BoundQuery, ExSettings, ExpurgatedBounds, RcSettings};
use rayon::prelude::*;

use crate::args::{ExponentsArgs, RatesArgs, SimulateArgs};
use crate::error::CliError;
use crate::format::{csv, num, opt};

pub const EXPONENTS_HEADER: [&str; 7] = ["R", "E_rc", "E_ex", "argmax_alpha", "argmax_xi", "argmax_rho", "rho_capped"];

struct ExponentRow {
    rate: f64,
    rc: Option<(f64, f64, f64)>,
    ex: Option<(f64, f64, bool)>,
}

/// Exponent sweep as CSV, or as `R E` columns when `gnuplot` is set.
pub fn cmd_exponents(args: &ExponentsArgs) -> Result<String, CliError> {
    if args.gnuplot && args.which.rc() && args.which.ex() {
        return Err(CliError::Usage("--gnuplot needs a single curve: --which rc or --which ex".into()));
    }
    let rates = args.rate.points();
    if rates.iter().any(|&r| r < 0.0) {
        return Err(CliError::Usage("rates must be nonnegative".into()));
    }
    let rc_settings = RcSettings::default();
    let delta = if args.which.rc() { Some(delta_fn(args.r, &rc_settings)?) } else { None };
    let ex = if args.which.ex() {
        Some(ExpurgatedBounds::new(&ExSettings { rho_max: args.rho_max, ..ExSettings::default() })?)
    } else {
        None
    };

    let mut rows = Vec::with_capacity(rates.len());
    for &rate in &rates {
        let q = BoundQuery::new(rate, args.r);
        let rc = match delta {
            Some(d) => {
                let p = rc_exponent_with_delta(&q, d, &rc_settings)?;
                Some((p.exponent, p.argmax.alpha, p.argmax.xi))
            }
            None => None,
        };
        let ex = match &ex {
            Some(ev) => {
                let p = ev.exponent(&q)?;
                Some((p.exponent, p.argmax.rho, p.capped))
            }
            None => None,
        };
        rows.push(ExponentRow { rate, rc, ex });
    }

    if args.gnuplot {
        let mut out = format!("# R E_{}\n", args.which.name());
        for row in &rows {
            let e = row.rc.map(|t| t.0).or(row.ex.map(|t| t.0)).unwrap_or(f64::NAN);
            out.push_str(&format!("{} {}\n", num(row.rate), num(e)));
        }
        return Ok(out);
    }

    let header: Vec<String> = EXPONENTS_HEADER.iter().map(|s| s.to_string()).collect();
    let body: Vec<Vec<String>> = rows
        .iter()
        .map(|row| {
            vec![
                num(row.rate),
                opt(row.rc.map(|t| t.0)),
                opt(row.ex.map(|t| t.0)),
                opt(row.rc.map(|t| t.1)),
                opt(row.rc.map(|t| t.2)),
                opt(row.ex.map(|t| t.1)),
                row.ex.map(|t| t.2.to_string()).unwrap_or_default(),
            ]
        })
        .collect();
    Ok(csv(&header, &body))
}

/// Header of the rates CSV for the given g values.
pub fn rates_header(gs: &[f64]) -> Vec<String> {
    let mut h = vec!["r".to_string(), "R_LB".to_string(), "converse".to_string()];
    h.extend(gs.iter().map(|g| format!("fir_g{g}")));
    h
}

pub fn cmd_rates(args: &RatesArgs) -> Result<String, CliError> {
    let rs = args.r.points();
    if rs.iter().any(|&r| r <= 0.0) {
        return Err(CliError::Usage("r must be positive".into()));
    }
    let settings = RcSettings::default();
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(args.parallelism)
        .build()
        .map_err(|e| CliError::Usage(format!("thread pool: {e}")))?;
    let lower: Vec<f64> = pool.install(|| {
        rs.par_iter()
            .map(|&r| rate_lower_bound(r, &settings).map(|b| b.value))
            .collect::<Result<Vec<_>, _>>()
    })?;

    let mut body = Vec::with_capacity(rs.len());
    for (&r, &lb) in rs.iter().zip(&lower) {
        let mut row = vec![num(r), num(lb), num(converse_rate(r)?)];
        for &g in &args.g.0 {
            row.push(num(fir_rate(&FirQuery::new(g, r))?));
        }
        body.push(row);
    }
    Ok(csv(&rates_header(&args.g.0), &body))
}

pub const SIMULATE_HEADER: [&str; 14] = [
    "n", "r", "alpha", "M", "R", "trials", "errors", "eps_hat", "ci_lo", "ci_hi", "std_err", "thm1_bound", "seed",
    "fixed_codebook",
];

pub fn sim_config(args: &SimulateArgs) -> SimConfig {
    SimConfig {
        n: args.n,
        r: args.r,
        alpha: args.alpha,
        size: match (args.messages, args.rate) {
            (Some(m), _) => CodebookSize::Messages(m),
            (None, Some(rate)) => CodebookSize::Rate(rate),
            (None, None) => CodebookSize::Messages(0),
        },
        trials: args.trials,
        seed: args.seed,
        parallelism: args.parallelism,
        fixed_codebook: args.fixed_codebook,
    }
}

/// Runs the simulation; returns the CSV text and the report.
///
/// The CSV holds nothing that depends on the worker count, so it is identical
/// for every `--parallelism`.
pub fn cmd_simulate(args: &SimulateArgs) -> Result<(String, SimReport), CliError> {
    let config = sim_config(args);
    config.validate()?;
    let report = estimate_error_probability(&config, &RcSettings::default())?;
    let header: Vec<String> = SIMULATE_HEADER.iter().map(|s| s.to_string()).collect();
    let row = vec![
        args.n.to_string(),
        args.r.to_string(),
        num(args.alpha),
        report.messages.to_string(),
        num(report.rate),
        report.trials.to_string(),
        report.errors.to_string(),
        num(report.eps_hat),
        num(report.wilson_ci.0),
        num(report.wilson_ci.1),
        num(report.std_err()),
        opt(report.thm1_bound),
        args.seed.to_string(),
        args.fixed_codebook.to_string(),
    ];
    Ok((csv(&header, &[row]), report))
}

/// Human-readable summary of a simulation.
pub fn sim_summary(report: &SimReport) -> String {
    let bound = match report.thm1_bound {
        Some(b) => format!("{b:.6e}"),
        None => "n/a (alpha < 1/2)".into(),
    };
    let mut s = format!(
        "M = {}  R = {:.6} nats\nerrors = {} / {}\neps_hat = {:.6e}  95% Wilson CI = [{:.6e}, {:.6e}]\nthm1_bound = {bound}\n",
        report.messages, report.rate, report.errors, report.trials, report.eps_hat, report.wilson_ci.0, report.wilson_ci.1
    );
    if let Some(b) = report.thm1_bound.filter(|&b| b < 1.0) {
        let ok = report.eps_hat <= b + 3.0 * report.std_err();
        s.push_str(&format!("ceiling eps_hat <= bound + 3 SE: {}\n", if ok { "holds" } else { "VIOLATED" }));
    }
    s
}
