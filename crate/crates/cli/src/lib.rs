//! The `molrate` command line: exponent and rate sweeps, channel simulation,
//! verification suites and manifest replay.
//!
//! Every command that writes a file also writes `<file>.manifest`, which
//! `molrate replay` turns back into the same command line.

pub mod args;
pub mod commands;
pub mod error;
pub mod format;
pub mod manifest;
pub mod range;
pub mod verify;

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::error::ErrorKind;
use clap::Parser;

pub use args::{Cli, Command, ExponentsArgs, RatesArgs, SimulateArgs, Suite, VerifyArgs, Which};
pub use commands::{cmd_exponents, cmd_rates, cmd_simulate, sim_summary};
pub use error::CliError;
pub use manifest::RunManifest;

fn emit(out: &mut dyn Write, text: &str) -> Result<(), CliError> {
    out.write_all(text.as_bytes()).map_err(|e| CliError::io("<stdout>", e))
}

/// Writes `content` to `path` and its manifest next to it.
fn write_output(
    path: &Path,
    content: &str,
    command: &str,
    mut parameters: Vec<(String, String)>,
    seed: u64,
    started: Instant,
) -> Result<(), CliError> {
    fs::write(path, content).map_err(|e| CliError::io(path, e))?;
    parameters.push(("out".into(), path.display().to_string()));
    let manifest = RunManifest {
        command: command.into(),
        parameters,
        seed,
        tool_version: env!("CARGO_PKG_VERSION").into(),
        wall_time: started.elapsed().as_secs_f64(),
    };
    manifest.write(&RunManifest::path_for(path))
}

/// Runs the command in `command`, writing human output to `out`.
pub fn execute(command: Command, out: &mut dyn Write) -> Result<(), CliError> {
    let started = Instant::now();
    match command {
        Command::Exponents(a) => {
            let text = cmd_exponents(&a)?;
            match &a.out {
                Some(p) => {
                    write_output(p, &text, "exponents", a.params(), 0, started)?;
                    emit(out, &format!("wrote {} rows to {}\n", a.rate.points().len(), p.display()))
                }
                None => emit(out, &text),
            }
        }
        Command::Rates(a) => {
            let text = cmd_rates(&a)?;
            match &a.out {
                Some(p) => {
                    write_output(p, &text, "rates", a.params(), 0, started)?;
                    emit(out, &format!("wrote {} rows to {}\n", a.r.points().len(), p.display()))
                }
                None => emit(out, &text),
            }
        }
        Command::Simulate(a) => {
            let (text, report) = cmd_simulate(&a)?;
            match &a.out {
                Some(p) => {
                    write_output(p, &text, "simulate", a.params(), a.seed, started)?;
                    emit(out, &sim_summary(&report))
                }
                None => {
                    emit(out, &text)?;
                    eprint!("{}", sim_summary(&report));
                    Ok(())
                }
            }
        }
        Command::Verify(a) => {
            let checks = verify::run_suite(a.suite, a.seed);
            let failed = checks.iter().filter(|c| !c.passed).count();
            for c in &checks {
                emit(out, &format!("{}\n", c.line()))?;
            }
            emit(out, &format!("verify: {} passed, {failed} failed\n", checks.len() - failed))?;
            if failed > 0 {
                Err(CliError::Verification(format!("{failed} check(s) failed")))
            } else {
                Ok(())
            }
        }
        Command::Replay(a) => {
            let manifest = RunManifest::read(&a.manifest)?;
            let mut argv = manifest.to_args();
            if let Some(p) = &a.out {
                override_out(&mut argv, p);
            }
            let cli = parse(argv)?;
            if matches!(cli.command, Command::Replay(_)) {
                return Err(CliError::Usage("a manifest cannot replay another replay".into()));
            }
            execute(cli.command, out)
        }
    }
}

fn override_out(argv: &mut Vec<String>, path: &Path) {
    let value = path.display().to_string();
    match argv.iter().position(|a| a == "--out") {
        Some(i) if i + 1 < argv.len() => argv[i + 1] = value,
        _ => argv.extend(["--out".to_string(), value]),
    }
}

/// Parses a recorded command line.
fn parse(argv: Vec<String>) -> Result<Cli, CliError> {
    Cli::try_parse_from(argv).map_err(|e| CliError::Usage(e.render().to_string()))
}

/// Entry point shared by the binary and the tests. Returns the exit code.
pub fn run<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = out.write_all(text.as_bytes());
                    0
                }
                _ => {
                    let _ = err.write_all(text.as_bytes());
                    CliError::EXIT_USAGE
                }
            };
        }
    };
    match execute(cli.command, out) {
        Ok(()) => 0,
        Err(e) => {
            let _ = writeln!(err, "molrate: {e}");
            e.exit_code()
        }
    }
}

/// The manifest path that accompanies an output file.
pub fn manifest_path(output: &Path) -> PathBuf {
    RunManifest::path_for(output)
}
