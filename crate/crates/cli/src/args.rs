use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use gausscap::{CoherentArg, Units};

#[derive(Debug, Parser)]
#[command(name = "gausscap", version, about = "Private-capacity bounds for bosonic Gaussian channels")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Evaluate every bound over a grid of input photon numbers.
    Bounds(BoundsArgs),
    /// Regenerate the beam-splitter (tau = 0.85) and amplifier (kappa = 5) bound curves.
    Fig2(Fig2Args),
    /// Monte Carlo check of an entropy power inequality family.
    VerifyEpi(VerifyArgs),
    /// Inspect a covariance matrix: symplectic spectrum, entropy, photon number.
    Entropy(EntropyArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ChannelFlag {
    Bs,
    Amp,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum UnitsFlag {
    Nats,
    Bits,
}

impl From<UnitsFlag> for Units {
    fn from(u: UnitsFlag) -> Self {
        match u {
            UnitsFlag::Nats => Units::Nats,
            UnitsFlag::Bits => Units::Bits,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum FormatFlag {
    Csv,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum CoherentArgFlag {
    Square,
    Half,
}

impl From<CoherentArgFlag> for CoherentArg {
    fn from(c: CoherentArgFlag) -> Self {
        match c {
            CoherentArgFlag::Square => CoherentArg::Square,
            CoherentArgFlag::Half => CoherentArg::Half,
        }
    }
}

#[derive(Debug, Clone, Args)]
pub struct GridArgs {
    #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
    pub n_start: f64,
    #[arg(long, default_value_t = 10.0, allow_negative_numbers = true)]
    pub n_stop: f64,
    /// Number of grid points (>= 1), endpoints included.
    #[arg(long, default_value_t = 101)]
    pub n_steps: usize,
}

#[derive(Debug, Clone, Args)]
pub struct NoiseArgs {
    /// Thermal photon number of the environment (N_th when --squeeze is given).
    #[arg(long, default_value_t = 1.0, allow_negative_numbers = true)]
    pub ne: f64,
    /// Squeezing parameter r of a squeezed-thermal environment.
    #[arg(long, allow_negative_numbers = true)]
    pub squeeze: Option<f64>,
}

#[derive(Debug, Clone, Args)]
pub struct EvalArgs {
    #[arg(long, value_enum, default_value_t = UnitsFlag::Nats)]
    pub units: UnitsFlag,
    #[arg(long, value_enum, default_value_t = FormatFlag::Csv)]
    pub format: FormatFlag,
    /// Second argument of the coherent-information lower bound.
    #[arg(long, value_enum, default_value_t = CoherentArgFlag::Square)]
    pub coherent_arg: CoherentArgFlag,
}

#[derive(Debug, Clone, Args)]
pub struct BoundsArgs {
    #[arg(long, value_enum, default_value_t = ChannelFlag::Bs)]
    pub channel: ChannelFlag,
    #[arg(long, default_value_t = 0.85, allow_negative_numbers = true)]
    pub tau: f64,
    #[arg(long, default_value_t = 5.0, allow_negative_numbers = true)]
    pub kappa: f64,
    #[command(flatten)]
    pub noise: NoiseArgs,
    #[command(flatten)]
    pub grid: GridArgs,
    #[command(flatten)]
    pub eval: EvalArgs,
    /// Output file; stdout when omitted.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, Args)]
pub struct Fig2Args {
    #[arg(long, default_value_t = 0.85, allow_negative_numbers = true)]
    pub tau: f64,
    #[arg(long, default_value_t = 5.0, allow_negative_numbers = true)]
    pub kappa: f64,
    #[command(flatten)]
    pub noise: NoiseArgs,
    #[command(flatten)]
    pub grid: GridArgs,
    #[command(flatten)]
    pub eval: EvalArgs,
    /// Output directory for the two panel files.
    #[arg(long, default_value = ".")]
    pub out: PathBuf,
    /// Print why curves from external references are not generated.
    #[arg(long)]
    pub note: bool,
}

#[derive(Debug, Clone, Args)]
pub struct VerifyArgs {
    /// QEPI_BS, QEPI_AMP, CQEPI_BS, CQEPI_AMP, MOE_CHAIN_BS or WC_CHAIN_BS.
    #[arg(long, default_value = "QEPI_BS")]
    pub inequality: String,
    #[arg(long, default_value_t = 10_000)]
    pub trials: u64,
    #[arg(long, env = "GAUSSCAP_SEED", default_value_t = 42)]
    pub seed: u64,
    #[arg(long, default_value_t = gausscap::epi::DEFAULT_TOLERANCE)]
    pub tolerance: f64,
    #[arg(long, default_value_t = 5.0)]
    pub max_n: f64,
    #[arg(long, default_value_t = 1.5)]
    pub max_r: f64,
    /// Lower end of the tau/kappa sampling range.
    #[arg(long)]
    pub param_min: Option<f64>,
    /// Upper end of the tau/kappa sampling range.
    #[arg(long)]
    pub param_max: Option<f64>,
    /// Worker threads; 0 uses the rayon default.
    #[arg(long, default_value_t = 0)]
    pub threads: usize,
    /// Output file; stdout when omitted.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, Args)]
pub struct EntropyArgs {
    /// Row-major entries separated by commas or whitespace, or a JSON
    /// object `{"n_modes": n, "data": [...]}`.
    #[arg(long, allow_hyphen_values = true)]
    pub matrix: Option<String>,
    /// File holding the matrix in either form.
    #[arg(long, conflicts_with = "matrix")]
    pub matrix_file: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = FormatFlag::Json)]
    pub format: FormatFlag,
}
