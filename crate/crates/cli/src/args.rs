use std::path::PathBuf;

use clap::{ArgGroup, Args, Parser, Subcommand, ValueEnum};
use molrate::channel::SampleRatio;

use crate::range::{NumberList, Sweep};

/// Seed used when neither `--seed` nor this variable is given is 0.
pub const SEED_ENV: &str = "MOLRATE_SEED";

#[derive(Debug, Parser)]
#[command(name = "molrate", version, about = "Error exponents, achievable rates and channel simulation for Dirichlet codebooks over the multinomial sampling channel")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Random-coding and expurgated exponents over a range of rates.
    Exponents(ExponentsArgs),
    /// R_LB, the converse and finite-resolution rates over a range of r.
    Rates(RatesArgs),
    /// Monte Carlo estimate of the ML error probability.
    Simulate(SimulateArgs),
    /// Run built-in verification checks.
    Verify(VerifyArgs),
    /// Re-run the command recorded in a manifest.
    Replay(ReplayArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Which {
    Rc,
    Ex,
    Both,
}

impl Which {
    pub fn rc(self) -> bool {
        matches!(self, Which::Rc | Which::Both)
    }

    pub fn ex(self) -> bool {
        matches!(self, Which::Ex | Which::Both)
    }

    pub fn name(self) -> &'static str {
        match self {
            Which::Rc => "rc",
            Which::Ex => "ex",
            Which::Both => "both",
        }
    }
}

#[derive(Debug, Clone, Args)]
pub struct ExponentsArgs {
    /// Samples per type, r.
    #[arg(long)]
    pub r: f64,
    /// Rates as lo:hi:step (inclusive).
    #[arg(long)]
    pub rate: Sweep,
    #[arg(long, value_enum, default_value_t = Which::Both)]
    pub which: Which,
    /// Upper limit of the ρ search in the expurgated exponent.
    #[arg(long, default_value_t = 1000.0)]
    pub rho_max: f64,
    /// Emit whitespace-separated `R E` columns instead of CSV (needs --which rc or ex).
    #[arg(long)]
    pub gnuplot: bool,
    /// Output file; a manifest is written next to it. Standard output if omitted.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, Args)]
pub struct RatesArgs {
    /// Samples per type as lo:hi:step (inclusive).
    #[arg(long)]
    pub r: Sweep,
    /// Objects-per-type budgets for the finite-resolution curves.
    #[arg(long, default_value = "50,200,1000")]
    pub g: NumberList,
    /// Worker threads for the sweep; 0 uses all cores. Does not affect the output.
    #[arg(long, default_value_t = 0)]
    pub parallelism: usize,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, Args)]
#[command(group(ArgGroup::new("size").required(true).args(["messages", "rate"])))]
pub struct SimulateArgs {
    /// Number of types n.
    #[arg(long)]
    pub n: usize,
    /// Samples per type as a ratio a/b or decimal; n·r must be a whole number.
    #[arg(long)]
    pub r: SampleRatio,
    /// Codebook size M.
    #[arg(long = "M", id = "messages")]
    pub messages: Option<u64>,
    /// Rate R in nats; M = floor(exp(nR)).
    #[arg(long)]
    pub rate: Option<f64>,
    /// Dirichlet parameter of the codebook.
    #[arg(long, default_value_t = 0.5)]
    pub alpha: f64,
    #[arg(long, default_value_t = 10_000)]
    pub trials: u64,
    #[arg(long, env = SEED_ENV, default_value_t = 0)]
    pub seed: u64,
    /// Worker threads; 0 uses all cores. Does not affect the output.
    #[arg(long, default_value_t = 0)]
    pub parallelism: usize,
    /// Draw one codebook and reuse it for every trial.
    #[arg(long)]
    pub fixed_codebook: bool,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Suite {
    Special,
    Rc,
    Ex,
    Channel,
    All,
}

#[derive(Debug, Clone, Args)]
pub struct VerifyArgs {
    #[arg(long, value_enum, default_value_t = Suite::All)]
    pub suite: Suite,
    #[arg(long, env = SEED_ENV, default_value_t = 0)]
    pub seed: u64,
}

#[derive(Debug, Clone, Args)]
pub struct ReplayArgs {
    /// Manifest written by an earlier run.
    pub manifest: PathBuf,
    /// Write here instead of the recorded output path.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

fn push(params: &mut Vec<(String, String)>, key: &str, value: impl ToString) {
    params.push((key.to_string(), value.to_string()));
}

impl ExponentsArgs {
    pub fn params(&self) -> Vec<(String, String)> {
        let mut p = Vec::new();
        push(&mut p, "r", self.r);
        push(&mut p, "rate", self.rate);
        push(&mut p, "which", self.which.name());
        push(&mut p, "rho-max", self.rho_max);
        if self.gnuplot {
            push(&mut p, "gnuplot", true);
        }
        p
    }
}

impl RatesArgs {
    pub fn params(&self) -> Vec<(String, String)> {
        let mut p = Vec::new();
        push(&mut p, "r", self.r);
        push(&mut p, "g", &self.g);
        push(&mut p, "parallelism", self.parallelism);
        p
    }
}

impl SimulateArgs {
    pub fn params(&self) -> Vec<(String, String)> {
        let mut p = Vec::new();
        push(&mut p, "n", self.n);
        push(&mut p, "r", self.r);
        if let Some(m) = self.messages {
            push(&mut p, "M", m);
        }
        if let Some(rate) = self.rate {
            push(&mut p, "rate", rate);
        }
        push(&mut p, "alpha", self.alpha);
        push(&mut p, "trials", self.trials);
        push(&mut p, "seed", self.seed);
        push(&mut p, "parallelism", self.parallelism);
        if self.fixed_codebook {
            push(&mut p, "fixed-codebook", true);
        }
        p
    }
}
