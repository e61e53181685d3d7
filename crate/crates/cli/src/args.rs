use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use two_inner_core::{Execution, FieldTag, Tolerance};

use crate::error::CliError;

#[derive(Debug, Parser)]
#[command(name = "two-inner", version, about = "Verify 2-inner-product axioms and reverse CBS bounds")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    #[command(flatten)]
    pub common: Common,
}

#[derive(Debug, Clone, Args)]
pub struct Common {
    /// Base seed; trial i draws from sub-seed `seed ^ i`.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,

    /// Trials per (field, dimension) group.
    #[arg(long, global = true, default_value_t = 1000)]
    pub trials: usize,

    #[arg(long, global = true, value_delimiter = ',', default_value = "2,3,4,5,6,7,8")]
    pub dims: Vec<usize>,

    #[arg(long, global = true, value_enum, default_value_t = FieldArg::Both)]
    pub field: FieldArg,

    #[arg(long = "tol-abs", global = true, default_value_t = Tolerance::DEFAULT.abs)]
    pub tol_abs: f64,

    #[arg(long = "tol-rel", global = true, default_value_t = Tolerance::DEFAULT.rel)]
    pub tol_rel: f64,

    /// Instance JSON (bounds) or node CSV (integral).
    #[arg(long, global = true)]
    pub input: Option<PathBuf>,

    /// Write the JSON report here.
    #[arg(long, global = true)]
    pub output: Option<PathBuf>,

    /// Print the JSON report to stdout instead of the table.
    #[arg(long, global = true)]
    pub json: bool,

    /// Run trials on the calling thread only.
    #[arg(long, global = true)]
    pub sequential: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum FieldArg {
    Real,
    Complex,
    Both,
}

impl FieldArg {
    pub fn fields(self) -> Vec<FieldTag> {
        match self {
            FieldArg::Real => vec![FieldTag::Real],
            FieldArg::Complex => vec![FieldTag::Complex],
            FieldArg::Both => vec![FieldTag::Real, FieldTag::Complex],
        }
    }
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Axiom, identity and conditional-bound sweeps.
    Verify {
        /// Add a constant to every 2-inner-product value (defect injection).
        #[arg(long, hide = true)]
        perturb: Option<f64>,
    },
    /// Condition and every applicable reverse bound for one instance.
    Bounds {
        /// Report only this inequality id.
        #[arg(long)]
        which: Option<String>,
    },
    /// Determinantal bounds for sampled functions on a grid.
    Integral {
        #[arg(long = "m")]
        lower: f64,

        #[arg(long = "M")]
        upper: f64,

        /// Report only this inequality id.
        #[arg(long)]
        which: Option<String>,

        /// Largest weighted node count for the pairwise synchronicity scan.
        #[arg(long, default_value_t = two_inner_core::integral::DEFAULT_SYNC_NODE_CAP)]
        sync_cap: usize,

        /// Scan any number of nodes.
        #[arg(long)]
        no_sync_cap: bool,
    },
    /// Probe a trial constant against the sharp constant of a theorem.
    Sharpness {
        #[arg(long)]
        constant: f64,

        /// `thm2.1` or `thm2.2`.
        #[arg(long)]
        which: String,
    },
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::Verify { .. } => "verify",
            Command::Bounds { .. } => "bounds",
            Command::Integral { .. } => "integral",
            Command::Sharpness { .. } => "sharpness",
        }
    }
}

/// Validated settings shared by every command.
#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub command: &'static str,
    pub seed: u64,
    pub trials: usize,
    pub dims: Vec<usize>,
    pub fields: Vec<FieldTag>,
    pub tol: Tolerance,
    pub input: Option<PathBuf>,
    pub output: Option<PathBuf>,
    pub exec: Execution,
}

impl RunConfig {
    pub fn from_cli(cli: &Cli) -> Result<Self, CliError> {
        let c = &cli.common;
        if c.trials == 0 {
            return Err(CliError::Config("--trials must be >= 1".into()));
        }
        if c.dims.is_empty() {
            return Err(CliError::Config("--dims must list at least one dimension".into()));
        }
        if let Some(d) = c.dims.iter().find(|d| **d < 2) {
            return Err(CliError::Config(format!("--dims entries must be >= 2, got {d}")));
        }
        let tol = Tolerance::new(c.tol_abs, c.tol_rel).map_err(|e| CliError::Config(e.to_string()))?;
        Ok(Self {
            command: cli.command.name(),
            seed: c.seed,
            trials: c.trials,
            dims: c.dims.clone(),
            fields: c.field.fields(),
            tol,
            input: c.input.clone(),
            output: c.output.clone(),
            exec: if c.sequential { Execution::Sequential } else { Execution::Parallel },
        })
    }

    pub fn require_input(&self) -> Result<&PathBuf, CliError> {
        self.input
            .as_ref()
            .ok_or_else(|| CliError::Config(format!("{} needs --input", self.command)))
    }
}
