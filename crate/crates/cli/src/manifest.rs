//! Run manifests: a flat `key=value` file written next to every output.

use std::fs;
use std::path::{Path, PathBuf};

use crate::error::CliError;

#[derive(Debug, Clone, PartialEq)]
pub struct RunManifest {
    pub command: String,
    /// Long flag names (without dashes) and their values, in argument order.
    /// A value of `true` with no other meaning marks a boolean switch.
    pub parameters: Vec<(String, String)>,
    pub seed: u64,
    pub tool_version: String,
    pub wall_time: f64,
}

const PARAM_PREFIX: &str = "param.";

impl RunManifest {
    /// `<output>.manifest`.
    pub fn path_for(output: &Path) -> PathBuf {
        let mut s = output.as_os_str().to_owned();
        s.push(".manifest");
        PathBuf::from(s)
    }

    pub fn to_text(&self) -> String {
        let mut out = format!(
            "command={}\ntool_version={}\nseed={}\nwall_time={:.3}\n",
            self.command, self.tool_version, self.seed, self.wall_time
        );
        for (k, v) in &self.parameters {
            out.push_str(&format!("{PARAM_PREFIX}{k}={v}\n"));
        }
        out
    }

    pub fn parse(text: &str) -> Result<Self, String> {
        let mut command = None;
        let mut tool_version = String::new();
        let mut seed = 0;
        let mut wall_time = 0.0;
        let mut parameters = Vec::new();
        for (i, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let (k, v) = line.split_once('=').ok_or_else(|| format!("line {}: expected key=value", i + 1))?;
            match k {
                "command" => command = Some(v.to_string()),
                "tool_version" => tool_version = v.to_string(),
                "seed" => seed = v.parse().map_err(|_| format!("line {}: bad seed", i + 1))?,
                "wall_time" => wall_time = v.parse().map_err(|_| format!("line {}: bad wall_time", i + 1))?,
                _ => match k.strip_prefix(PARAM_PREFIX) {
                    Some(name) => parameters.push((name.to_string(), v.to_string())),
                    None => return Err(format!("line {}: unknown key {k:?}", i + 1)),
                },
            }
        }
        let command = command.ok_or("manifest has no command")?;
        Ok(Self { command, parameters, seed, tool_version, wall_time })
    }

    pub fn write(&self, path: &Path) -> Result<(), CliError> {
        fs::write(path, self.to_text()).map_err(|e| CliError::io(path, e))
    }

    pub fn read(path: &Path) -> Result<Self, CliError> {
        let text = fs::read_to_string(path).map_err(|e| CliError::io(path, e))?;
        Self::parse(&text).map_err(|e| CliError::Usage(format!("{}: {e}", path.display())))
    }

    /// Command-line arguments that re-run this manifest.
    pub fn to_args(&self) -> Vec<String> {
        let mut args = vec!["molrate".to_string(), self.command.clone()];
        for (k, v) in &self.parameters {
            args.push(format!("--{k}"));
            if v != "true" {
                args.push(v.clone());
            }
        }
        args
    }
}
