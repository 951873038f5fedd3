use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(name = "rgglab", version, about = "Random geometric graph experiments and closed-form predictions")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

/// Flags shared by every experiment.
#[derive(Debug, Clone, Args)]
pub struct Common {
    /// Master seed; falls back to RGGLAB_SEED, then to the clock
    #[arg(long, env = "RGGLAB_SEED")]
    pub seed: Option<u64>,
    /// Worker threads (output does not depend on it)
    #[arg(long)]
    pub jobs: Option<usize>,
    /// Output file (default: standard output)
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// File of `key = value` lines supplying defaults for the other flags
    #[arg(long)]
    pub config: Option<PathBuf>,
    /// Write a JSON run manifest here
    #[arg(long)]
    pub manifest: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Formula {
    /// Pick from the domain and the obstacle regime
    Auto,
    /// Leave the analytic column empty
    None,
    Disk,
    AnnulusSmall,
    AnnulusLarge,
    AnnulusLargeLimit,
    ShellSmall,
    ShellLarge,
    SquareObstacles,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Monte Carlo full-connection probability against the closed form
    Connectivity(ConnectivityArgs),
    /// Betweenness of probe vertices against the continuum profile
    Betweenness(BetweennessArgs),
    /// Optimal-hop path counts between two terminals
    Geodesics(GeodesicsArgs),
    /// Distribution of the optimal-hop path count
    Dispersion(DispersionArgs),
    /// Coupled bond percolation sweep on a square lattice
    Percolation(PercolationArgs),
    /// Strauss process sample by Metropolis-Hastings
    Strauss(StraussArgs),
    /// How often disconnected samples contain an isolated vertex
    Isolation(IsolationArgs),
    /// Closed-form full-connection probability
    Pfc(PfcArgs),
    /// Expected number of isolated vertices by quadrature
    Isolated(IsolatedArgs),
    /// Connectivity mass of one point
    Mass(MassArgs),
    /// Closed-form (and optionally recursive) geodesic counts
    GeodesicCount(GeodesicCountArgs),
    /// Re-run the experiment recorded in a manifest
    Rerun(RerunArgs),
    /// Print the JSON schema of run manifests
    Schema,
}

#[derive(Debug, Args)]
pub struct ConnectivityArgs {
    /// Domain, e.g. disk:R=5, annulus:r=2,R=20, square:L=10,obstacles=3/3/0.5+7/6/0.5
    #[arg(long)]
    pub domain: String,
    /// Rayleigh fading parameter
    #[arg(long)]
    pub beta: f64,
    /// Path-loss exponent (the closed forms need 2)
    #[arg(long, default_value_t = 2.0)]
    pub eta: f64,
    /// Intensities as start:stop:count
    #[arg(long)]
    pub rho_grid: String,
    #[arg(long, default_value_t = 1000)]
    pub trials: usize,
    #[arg(long, value_enum, default_value_t = Formula::Auto)]
    pub formula: Formula,
    /// Join pairs regardless of line of sight
    #[arg(long)]
    pub no_visibility: bool,
    #[command(flatten)]
    pub common: Common,
}

#[derive(Debug, Args)]
pub struct BetweennessArgs {
    /// Intensity (required unless --analytic-only)
    #[arg(long)]
    pub rho: Option<f64>,
    /// Rayleigh fading parameter (required unless --analytic-only)
    #[arg(long)]
    pub beta: Option<f64>,
    /// Disk radius
    #[arg(long, default_value_t = 1.0)]
    pub radius: f64,
    /// Probe radii in units of the disk radius, start:stop:count
    #[arg(long, default_value = "0:1:11")]
    pub eps_grid: String,
    #[arg(long, default_value_t = 200)]
    pub trials: usize,
    /// Print the continuum curve only
    #[arg(long)]
    pub analytic_only: bool,
    #[command(flatten)]
    pub common: Common,
}

#[derive(Debug, Args)]
pub struct GeodesicsArgs {
    /// Dimension (experiments are planar)
    #[arg(long = "d", default_value_t = 2)]
    pub dim: usize,
    #[arg(long)]
    pub rho: f64,
    /// Terminal separations as start:stop:count
    #[arg(long)]
    pub r_grid: String,
    #[arg(long, default_value_t = 1000)]
    pub trials: usize,
    #[command(flatten)]
    pub common: Common,
}

#[derive(Debug, Args)]
pub struct DispersionArgs {
    #[arg(long)]
    pub rho: f64,
    /// Terminal separation
    #[arg(long)]
    pub r: f64,
    #[arg(long, default_value_t = 10000)]
    pub trials: usize,
    #[command(flatten)]
    pub common: Common,
}

#[derive(Debug, Args)]
pub struct PercolationArgs {
    /// Lattice side
    #[arg(long = "L")]
    pub side: usize,
    /// Bond probabilities as start:stop:count
    #[arg(long)]
    pub p_grid: String,
    #[arg(long, default_value_t = 1000)]
    pub trials: usize,
    #[command(flatten)]
    pub common: Common,
}

#[derive(Debug, Args)]
pub struct StraussArgs {
    #[arg(long, default_value = "square:L=1")]
    pub domain: String,
    /// Number of points
    #[arg(long)]
    pub n: usize,
    /// Repulsion strength in [0, 1]
    #[arg(long)]
    pub omega: f64,
    /// Interaction range
    #[arg(long)]
    pub range: f64,
    #[arg(long, default_value_t = 10000)]
    pub steps: usize,
    #[command(flatten)]
    pub common: Common,
}

#[derive(Debug, Args)]
pub struct IsolationArgs {
    #[arg(long)]
    pub domain: String,
    #[arg(long)]
    pub beta: f64,
    #[arg(long, default_value_t = 2.0)]
    pub eta: f64,
    #[arg(long)]
    pub rho_grid: String,
    #[arg(long, default_value_t = 1000)]
    pub trials: usize,
    #[command(flatten)]
    pub common: Common,
}

#[derive(Debug, Args)]
pub struct PfcArgs {
    #[arg(long)]
    pub domain: String,
    #[arg(long)]
    pub beta: f64,
    #[arg(long)]
    pub rho_grid: String,
    #[arg(long, value_enum, default_value_t = Formula::Auto)]
    pub formula: Formula,
    #[command(flatten)]
    pub common: Common,
}

#[derive(Debug, Args)]
pub struct IsolatedArgs {
    #[arg(long)]
    pub domain: String,
    #[arg(long)]
    pub beta: f64,
    #[arg(long, default_value_t = 2.0)]
    pub eta: f64,
    #[arg(long)]
    pub rho_grid: String,
    #[command(flatten)]
    pub common: Common,
}

#[derive(Debug, Args)]
pub struct MassArgs {
    #[arg(long)]
    pub domain: String,
    #[arg(long)]
    pub beta: f64,
    #[arg(long, default_value_t = 2.0)]
    pub eta: f64,
    /// Comma-separated coordinates
    #[arg(long)]
    pub point: String,
    #[command(flatten)]
    pub common: Common,
}

#[derive(Debug, Args)]
pub struct GeodesicCountArgs {
    #[arg(long = "d", default_value_t = 2)]
    pub dim: usize,
    #[arg(long)]
    pub rho: f64,
    #[arg(long)]
    pub r_grid: String,
    /// Add the numerical recursion as a second column (d = 2, 3)
    #[arg(long)]
    pub recursion: bool,
    #[command(flatten)]
    pub common: Common,
}

#[derive(Debug, Args)]
pub struct RerunArgs {
    /// Manifest written by --manifest
    pub manifest: PathBuf,
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::Connectivity(_) => "connectivity",
            Command::Betweenness(_) => "betweenness",
            Command::Geodesics(_) => "geodesics",
            Command::Dispersion(_) => "dispersion",
            Command::Percolation(_) => "percolation",
            Command::Strauss(_) => "strauss",
            Command::Isolation(_) => "isolation",
            Command::Pfc(_) => "pfc",
            Command::Isolated(_) => "isolated",
            Command::Mass(_) => "mass",
            Command::GeodesicCount(_) => "geodesic-count",
            Command::Rerun(_) => "rerun",
            Command::Schema => "schema",
        }
    }

    /// Whether the command draws random numbers.
    pub fn is_stochastic(&self) -> bool {
        match self {
            Command::Betweenness(a) => !a.analytic_only,
            Command::Connectivity(_)
            | Command::Geodesics(_)
            | Command::Dispersion(_)
            | Command::Percolation(_)
            | Command::Strauss(_)
            | Command::Isolation(_) => true,
            _ => false,
        }
    }

    pub fn common(&self) -> Option<&Common> {
        match self {
            Command::Connectivity(a) => Some(&a.common),
            Command::Betweenness(a) => Some(&a.common),
            Command::Geodesics(a) => Some(&a.common),
            Command::Dispersion(a) => Some(&a.common),
            Command::Percolation(a) => Some(&a.common),
            Command::Strauss(a) => Some(&a.common),
            Command::Isolation(a) => Some(&a.common),
            Command::Pfc(a) => Some(&a.common),
            Command::Isolated(a) => Some(&a.common),
            Command::Mass(a) => Some(&a.common),
            Command::GeodesicCount(a) => Some(&a.common),
            Command::Rerun(_) | Command::Schema => None,
        }
    }
}
