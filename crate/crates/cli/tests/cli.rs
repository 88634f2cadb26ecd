use std::fs;
use std::process::Command;

use molrate_cli::{run, RunManifest};

fn molrate(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("molrate").chain(args.iter().copied());
    let code = run(argv, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

fn column(csv: &str, name: &str) -> Vec<String> {
    let mut lines = csv.lines();
    let header: Vec<&str> = lines.next().unwrap().split(',').collect();
    let idx = header.iter().position(|h| *h == name).unwrap();
    lines.map(|l| l.split(',').nth(idx).unwrap().to_string()).collect()
}

#[test]
fn rc_sweep_has_41_rows_and_matches_reference_at_zero() {
    let (code, out, _) = molrate(&["exponents", "--r", "400", "--rate", "0:2:0.05", "--which", "rc"]);
    assert_eq!(code, 0);
    assert_eq!(out.lines().next().unwrap(), "R,E_rc,E_ex,argmax_alpha,argmax_xi,argmax_rho,rho_capped");
    assert_eq!(out.lines().count(), 42);
    let e0: f64 = column(&out, "E_rc")[0].parse().unwrap();
    assert!((e0 - 1.7595).abs() < 0.02);
    assert!(column(&out, "E_ex").iter().all(String::is_empty));
    assert!(!out.contains('\r'));
}

#[test]
fn ex_column_and_cap_flag() {
    let (code, out, _) = molrate(&["exponents", "--r", "400", "--rate", "0:0.012:0.012", "--which", "ex"]);
    assert_eq!(code, 0);
    let e: Vec<f64> = column(&out, "E_ex").iter().map(|s| s.parse().unwrap()).collect();
    assert!((e[1] - 0.8055).abs() < 0.05);
    assert_eq!(column(&out, "rho_capped"), ["true", "false"]);
    assert!(column(&out, "E_rc").iter().all(String::is_empty));
}

#[test]
fn gnuplot_variant_needs_one_curve() {
    let (code, out, _) = molrate(&["exponents", "--r", "10", "--rate", "0:0.2:0.1", "--which", "rc", "--gnuplot"]);
    assert_eq!(code, 0);
    assert_eq!(out.lines().count(), 4);
    assert!(out.lines().nth(1).unwrap().split(' ').count() == 2);
    let (code, _, _) = molrate(&["exponents", "--r", "10", "--rate", "0:0.2:0.1", "--gnuplot"]);
    assert_eq!(code, 64);
}

#[test]
fn usage_errors_exit_64() {
    for args in [
        vec!["exponents", "--r", "400", "--rate", "0:0:1"],
        vec!["exponents", "--r", "400", "--rate", "0:1"],
        vec!["simulate", "--n", "3", "--r", "1/2", "--M", "2"],
        vec!["simulate", "--n", "3", "--r", "2", "--M", "2", "--rate", "0.1"],
        vec!["simulate", "--n", "3", "--r", "2"],
        vec!["simulate", "--n", "3", "--r", "2", "--M", "0"],
        vec!["bogus"],
    ] {
        let (code, _, err) = molrate(&args);
        assert_eq!(code, 64, "{args:?}: {err}");
    }
}

#[test]
fn unwritable_output_exits_2() {
    let (code, _, err) = molrate(&["rates", "--r", "10:20:10", "--out", "/nonexistent/dir/x.csv"]);
    assert_eq!(code, 2, "{err}");
}

#[test]
fn rates_columns() {
    let (code, out, _) = molrate(&["rates", "--r", "10:410:200", "--g", "50,1000"]);
    assert_eq!(code, 0);
    assert_eq!(out.lines().next().unwrap(), "r,R_LB,converse,fir_g50,fir_g1000");
    let rs: Vec<f64> = column(&out, "r").iter().map(|s| s.parse().unwrap()).collect();
    let lb: Vec<f64> = column(&out, "R_LB").iter().map(|s| s.parse().unwrap()).collect();
    let conv: Vec<f64> = column(&out, "converse").iter().map(|s| s.parse().unwrap()).collect();
    for i in 0..rs.len() {
        assert_eq!(conv[i], 0.5 * rs[i].ln());
        assert!(lb[i] < conv[i]);
    }
}

#[test]
fn simulate_is_deterministic_and_replayable() {
    let dir = tempfile::tempdir().unwrap();
    let mut texts = Vec::new();
    for p in ["1", "4", "16"] {
        let path = dir.path().join(format!("sim{p}.csv"));
        let (code, out, err) = molrate(&[
            "simulate", "--n", "4", "--r", "5/2", "--M", "6", "--trials", "5000", "--seed", "7", "--parallelism", p,
            "--out", path.to_str().unwrap(),
        ]);
        assert_eq!(code, 0, "{err}");
        assert!(out.contains("eps_hat"));
        texts.push(fs::read(&path).unwrap());
    }
    assert!(texts.windows(2).all(|w| w[0] == w[1]));

    let first = dir.path().join("sim1.csv");
    let manifest = RunManifest::read(&molrate_cli::manifest_path(&first)).unwrap();
    assert_eq!((manifest.command.as_str(), manifest.seed), ("simulate", 7));
    let replayed = dir.path().join("again.csv");
    let (code, _, _) = molrate(&[
        "replay",
        molrate_cli::manifest_path(&first).to_str().unwrap(),
        "--out",
        replayed.to_str().unwrap(),
    ]);
    assert_eq!(code, 0);
    assert_eq!(fs::read(&replayed).unwrap(), texts[0]);
}

#[test]
fn single_message_simulation_has_no_errors() {
    let (code, out, _) = molrate(&["simulate", "--n", "3", "--r", "2", "--M", "1", "--trials", "100"]);
    assert_eq!(code, 0);
    assert_eq!(column(&out, "errors"), ["0"]);
    assert_eq!(column(&out, "eps_hat")[0].parse::<f64>().unwrap(), 0.0);
}

#[test]
fn seed_comes_from_the_environment() {
    let bin = env!("CARGO_BIN_EXE_molrate");
    let sim = |seed: &str| {
        Command::new(bin)
            .args(["simulate", "--n", "3", "--r", "2", "--M", "4", "--trials", "2000"])
            .env("MOLRATE_SEED", seed)
            .output()
            .unwrap()
    };
    let (a, b, c) = (sim("11"), sim("11"), sim("12"));
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    assert_ne!(a.stdout, c.stdout);
    assert_eq!(column(&String::from_utf8(a.stdout).unwrap(), "seed"), ["11"]);
}

#[test]
fn verify_special_passes() {
    let (code, out, _) = molrate(&["verify", "--suite", "special"]);
    assert_eq!(code, 0, "{out}");
    assert!(out.lines().all(|l| l.starts_with("PASS") || l.starts_with("verify:")));
}

#[test]
fn binary_reports_exit_codes() {
    let bin = env!("CARGO_BIN_EXE_molrate");
    let bad = Command::new(bin).args(["exponents", "--r", "4", "--rate", "0:0:1"]).output().unwrap();
    assert_eq!(bad.status.code(), Some(64));
    assert!(String::from_utf8_lossy(&bad.stderr).contains("empty range"));
    let help = Command::new(bin).arg("--help").output().unwrap();
    assert_eq!(help.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&help.stdout).contains("simulate"));
}
