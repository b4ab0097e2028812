use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Parser, Debug)]
#[command(name = "dball", version, about = "Experiments on Dirichlet-type spaces in the unit ball of C^2")]
pub struct Cli {
    /// Worker threads for parallel sweeps (default: all cores)
    #[arg(long, global = true)]
    pub threads: Option<usize>,

    /// Write the result here instead of stdout
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,

    /// Re-run the command recorded in a result file and compare byte for byte
    #[arg(long, conflicts_with = "out")]
    pub verify: Option<PathBuf>,

    #[command(subcommand)]
    pub command: Option<Command>,
}

#[derive(Subcommand, Debug, Clone)]
pub enum Command {
    /// Squared D_alpha norm of a polynomial
    Norm(NormArgs),
    /// Optimal approximant distances for a range of degrees (CSV)
    Dist(DistArgs),
    /// Fitted decay rate of dist^2 against the degree
    Rate(RateArgs),
    /// Truncated D_{-alpha} norm of a Cauchy transform, optionally with an annihilation check
    Cauchy(CauchyArgs),
    /// Riesz energy of a measure
    Energy(EnergyArgs),
    /// Minimized energy and capacity estimate of a point set
    Capacity(CapacityArgs),
    /// Distances and capacity estimates side by side
    Evidence(EvidenceArgs),
}

#[derive(Args, Debug, Clone)]
pub struct PolyArg {
    /// Polynomial text such as "1 - 2*z1*z2", inline JSON, or a file holding either
    #[arg(long = "f")]
    pub f: String,
}

#[derive(Args, Debug, Clone)]
pub struct NormArgs {
    #[command(flatten)]
    pub poly: PolyArg,
    #[arg(long, allow_hyphen_values = true)]
    pub alpha: f64,
    /// Compose with a unitary first: "hadamard", "identity", inline JSON or a file
    #[arg(long)]
    pub unitary: Option<String>,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum FamilyArg {
    Axis,
    Diagonal,
}

#[derive(Args, Debug, Clone)]
pub struct DistArgs {
    #[command(flatten)]
    pub poly: PolyArg,
    #[arg(long, allow_hyphen_values = true)]
    pub alpha: f64,
    #[arg(long)]
    pub dmax: u32,
    #[arg(long, default_value_t = 0)]
    pub dmin: u32,
    #[arg(long, default_value_t = 1)]
    pub dstep: u32,
    /// Rate family for the prediction column (default: inferred from f)
    #[arg(long, value_enum)]
    pub family: Option<FamilyArg>,
}

#[derive(Args, Debug, Clone)]
pub struct RateArgs {
    #[command(flatten)]
    pub poly: PolyArg,
    #[arg(long, allow_hyphen_values = true)]
    pub alpha: f64,
    #[arg(long, default_value_t = 10)]
    pub dmin: u32,
    #[arg(long, default_value_t = 40)]
    pub dmax: u32,
    #[arg(long, value_enum)]
    pub family: Option<FamilyArg>,
}

#[derive(Args, Debug, Clone)]
pub struct CauchyArgs {
    /// Measure name (diag_circle, sphere, point_10, point_diag), inline JSON, or a file
    #[arg(long)]
    pub measure: String,
    #[arg(long, allow_hyphen_values = true)]
    pub alpha: f64,
    #[arg(long = "K")]
    pub k: u32,
    /// Also check that the transform annihilates z^a f for a + b <= M
    #[arg(long = "f")]
    pub f: Option<String>,
    #[arg(long = "M", default_value_t = 40)]
    pub m: u32,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum EnergyMethodArg {
    Series,
    Discrete,
}

#[derive(Args, Debug, Clone)]
pub struct EnergyArgs {
    #[arg(long)]
    pub measure: String,
    #[arg(long, default_value_t = 2.0)]
    pub alpha: f64,
    /// Fixed truncation; without it K is doubled until the value settles
    #[arg(long = "K")]
    pub k: Option<u32>,
    #[arg(long, value_enum, default_value_t = EnergyMethodArg::Series)]
    pub method: EnergyMethodArg,
    /// Quadrature nodes when a closed-form measure is discretized
    #[arg(long = "N", default_value_t = 512)]
    pub n: usize,
    #[arg(long, default_value_t = 1e12)]
    pub ceiling: f64,
}

#[derive(Args, Debug, Clone)]
pub struct CapacityArgs {
    /// Zero-set family: point_10, point_diag, diag_circle, flat_curve
    #[arg(long, default_value = "diag_circle", conflicts_with = "measure")]
    pub set: String,
    /// Use the points of a cloud measure instead of a zero set
    #[arg(long)]
    pub measure: Option<String>,
    #[arg(long = "N", default_value_t = 256)]
    pub n: usize,
    #[arg(long, default_value_t = 2.0)]
    pub alpha: f64,
    #[arg(long, default_value_t = 20_000)]
    pub iters: usize,
    /// Kernel truncation radius
    #[arg(long, default_value_t = dball_core::capacity::DEFAULT_CUTOFF)]
    pub cutoff: f64,
}

#[derive(Args, Debug, Clone)]
pub struct EvidenceArgs {
    #[arg(long = "f", default_value = "1 - 2*z1*z2")]
    pub f: String,
    #[arg(long, default_value_t = 2.0)]
    pub alpha: f64,
    #[arg(long, default_value_t = 40)]
    pub dmax: u32,
    #[arg(long, default_value = "diag_circle")]
    pub set: String,
    #[arg(long = "N", value_delimiter = ',', default_value = "64,256,1024")]
    pub n: Vec<usize>,
    #[arg(long, default_value_t = 20_000)]
    pub iters: usize,
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::Norm(_) => "norm",
            Command::Dist(_) => "dist",
            Command::Rate(_) => "rate",
            Command::Cauchy(_) => "cauchy",
            Command::Energy(_) => "energy",
            Command::Capacity(_) => "capacity",
            Command::Evidence(_) => "evidence",
        }
    }
}

/// Drops the options that do not affect the result (`--out`, `--threads`,
/// `--verify`) so the rest can be replayed.
pub fn replayable_argv(raw: &[String]) -> Vec<String> {
    let mut out = Vec::new();
    let mut skip_next = false;
    for arg in raw {
        if skip_next {
            skip_next = false;
            continue;
        }
        let dropped = ["--out", "--threads", "--verify"];
        if dropped.contains(&arg.as_str()) {
            skip_next = true;
            continue;
        }
        if dropped.iter().any(|d| arg.starts_with(&format!("{d}="))) {
            continue;
        }
        out.push(arg.clone());
    }
    out
}
