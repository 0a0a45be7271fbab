//! The `fluctus` command line.
//!
//! [`run`] never panics on user input. Exit codes: 0 success, 1 a
//! verification check failed, 2 usage or domain error.

mod commands;
mod materials;
pub mod output;
pub mod sweep;

use std::ffi::OsString;
use std::io::Write;

use clap::{Args, Parser, Subcommand, ValueEnum};

pub use output::{Format, OutputRecord, Quantity, QuantityValue};
pub use sweep::Sweep;

use crate::verify::Suite;

/// Environment variable naming extra directories searched for material files.
pub const MATERIAL_PATH_VAR: &str = "FLUCTUS_MATERIAL_PATH";

#[derive(Debug, Parser)]
#[command(
    name = "fluctus",
    version,
    about = "Zero-point density fluctuations of liquids and the light scattering they cause"
)]
struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value = "table", global = true)]
    format: Format,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Vacuum density correlator, or the shift near a rigid wall.
    Correlator(CorrelatorArgs),
    /// Differential scattering cross section.
    Xsection(XsectionArgs),
    /// Ratio of zero-point to thermal Brillouin scattering.
    Ratio(RatioArgs),
    /// Run the cross-checks between closed forms and numerical oracles.
    Verify {
        #[arg(value_enum)]
        suite: VerifySuite,
    },
    /// List or inspect materials.
    Materials {
        #[command(subcommand)]
        action: MaterialsAction,
    },
}

#[derive(Debug, Args)]
struct CorrelatorArgs {
    /// Built-in name, material file, or name on FLUCTUS_MATERIAL_PATH.
    #[arg(long, default_value = "water")]
    material: String,
    /// Separation |Δx| in m. Accepts lo..hi:steps or lo..hi:stepsL.
    #[arg(long)]
    r: Option<Sweep>,
    /// Time lag Δt in s.
    #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
    dt: f64,
    /// Distance from a rigid wall in m. Alone: the equal-point shift; with
    /// --r: the correlator of two points at this height, r apart along the wall.
    #[arg(long)]
    boundary: Option<Sweep>,
    /// Also evaluate the regulated mode integral and extrapolate ε → 0.
    #[arg(long)]
    oracle: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum XsKind {
    /// ω⁵ form with ω′ ≈ ω.
    Zp,
    /// Closed form with exact Stokes kinematics.
    ZpExact,
    /// Golden-rule assembly from matrix element, density of states and flux.
    ZpChain,
    ThermalBrillouin,
    /// Brillouin plus Rayleigh; needs cp_j_kg_k and depsilon_dt_per_k.
    ThermalTotal,
}

#[derive(Debug, Args)]
struct LightArgs {
    /// Vacuum wavelength in m.
    #[arg(long, conflicts_with = "omega", required_unless_present = "omega")]
    lambda: Option<Sweep>,
    /// Angular frequency in rad/s.
    #[arg(long)]
    omega: Option<Sweep>,
}

#[derive(Debug, Args)]
struct XsectionArgs {
    #[arg(long, default_value = "water")]
    material: String,
    #[command(flatten)]
    light: LightArgs,
    /// Scattering angle in degrees, (0, 180].
    #[arg(long)]
    theta: Sweep,
    #[arg(long, default_value = "unpolarized", value_parser = parse_pol)]
    pol: crate::scattering::Polarization,
    #[arg(long, value_enum, default_value = "zp")]
    kind: XsKind,
    /// Temperature in K; defaults to the material's reference temperature.
    #[arg(long)]
    temperature: Option<Sweep>,
    /// Scattering volume in m³ multiplying the per-volume cross section.
    #[arg(long, default_value_t = 1.0)]
    volume: f64,
    /// Use the in-medium photon wavevector ηω/c for the phonon momentum.
    #[arg(long)]
    in_medium: bool,
}

#[derive(Debug, Args)]
struct RatioArgs {
    #[arg(long, default_value = "water")]
    material: String,
    #[command(flatten)]
    light: LightArgs,
    /// Scattering angle in degrees, (0, 180].
    #[arg(long, default_value = "180")]
    theta: Sweep,
    /// Temperature in K; defaults to the material's reference temperature.
    #[arg(long)]
    temperature: Option<Sweep>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum VerifySuite {
    Spectral,
    Lattice,
    Chain,
    All,
}

impl From<VerifySuite> for Suite {
    fn from(s: VerifySuite) -> Self {
        match s {
            VerifySuite::Spectral => Suite::Spectral,
            VerifySuite::Lattice => Suite::Lattice,
            VerifySuite::Chain => Suite::Chain,
            VerifySuite::All => Suite::All,
        }
    }
}

#[derive(Debug, Subcommand)]
enum MaterialsAction {
    /// Built-in materials and files found on FLUCTUS_MATERIAL_PATH.
    List,
    /// Validate and print a material with units.
    Show { material: String },
}

fn parse_pol(s: &str) -> Result<crate::scattering::Polarization, String> {
    s.parse().map_err(|e: crate::Error| e.to_string())
}

/// Outcome of a command that produced output.
pub(crate) enum Outcome {
    Records(Vec<OutputRecord>),
    /// Verification report; `true` when every check passed.
    Verify(Vec<OutputRecord>, bool),
    Done,
    /// Diagnostics were already written to stderr; exit 2.
    Failed,
}

pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> u8
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(out, "{}", e.render());
                    0
                }
                _ => {
                    let _ = write!(err, "{}", e.render());
                    2
                }
            };
        }
    };

    let format = cli.format;
    let result = match cli.command {
        Command::Correlator(a) => commands::correlator_cmd(a),
        Command::Xsection(a) => commands::xsection(a),
        Command::Ratio(a) => commands::ratio(a),
        Command::Verify { suite } => commands::verify(suite.into()),
        Command::Materials { action } => match action {
            MaterialsAction::List => materials::list(out, format),
            MaterialsAction::Show { material } => materials::show(&material, err),
        },
    };

    match result {
        Ok(Outcome::Records(records)) => emit(out, err, &records, format, 0),
        Ok(Outcome::Verify(records, passed)) => {
            emit(out, err, &records, format, if passed { 0 } else { 1 })
        }
        Ok(Outcome::Done) => 0,
        Ok(Outcome::Failed) => 2,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            2
        }
    }
}

fn emit(
    out: &mut dyn Write,
    err: &mut dyn Write,
    records: &[OutputRecord],
    format: Format,
    code: u8,
) -> u8 {
    match output::write_records(out, records, format) {
        Ok(()) => code,
        Err(e) => {
            let _ = writeln!(err, "error: writing output: {e}");
            2
        }
    }
}
