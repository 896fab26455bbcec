//! Command-line surface.

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use knotfield::Event;

#[derive(Debug, Parser)]
#[command(name = "knotfield", version, about = "Knotted null Maxwell fields and their optical vortices")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// List the built-in link polynomials.
    Presets,
    /// Print the field at one event.
    Sample {
        #[command(flatten)]
        field: FieldArgs,
        /// Event as `t,x,y,z`.
        #[arg(long, value_parser = parse_event, allow_hyphen_values = true)]
        event: Event,
        /// `json` switches from text to JSON on stdout.
        #[arg(long, value_enum, value_delimiter = ',')]
        format: Vec<Format>,
    },
    /// Extract vortex curves: curves.csv, curves.json and optionally curves.obj.
    Vortex {
        #[command(flatten)]
        field: FieldArgs,
        #[command(flatten)]
        grid: GridArgs,
        #[command(flatten)]
        trace: TraceArgs,
        #[command(flatten)]
        out: OutArgs,
    },
    /// Extract vortices and certify their topology: report.json.
    Topology {
        #[command(flatten)]
        field: FieldArgs,
        #[command(flatten)]
        grid: GridArgs,
        #[command(flatten)]
        trace: TraceArgs,
        #[command(flatten)]
        out: OutArgs,
    },
    /// Run the pointwise and finite-difference checks: verification.json.
    Verify {
        #[command(flatten)]
        field: FieldArgs,
        #[command(flatten)]
        out: OutArgs,
        /// Seed for the random sample events.
        #[arg(long, default_value_t = 20_240_601)]
        seed: u64,
    },
    /// Log-scaled energy density on a coordinate plane: PGM, CSV and JSON.
    Slice {
        #[command(flatten)]
        field: FieldArgs,
        #[command(flatten)]
        grid: GridArgs,
        #[arg(long, value_enum)]
        plane: Plane,
        #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
        offset: f64,
        #[command(flatten)]
        out: OutArgs,
    },
    /// Total energy by the midpoint rule: energy.json.
    Energy {
        #[command(flatten)]
        field: FieldArgs,
        #[command(flatten)]
        grid: GridArgs,
        #[command(flatten)]
        radii: RadiiArgs,
        /// Integrate the bare Hopf field instead of the knotted one.
        #[arg(long)]
        hopf: bool,
        #[command(flatten)]
        out: OutArgs,
    },
    /// Magnetic and electric helicities: helicity.json.
    Helicity {
        #[command(flatten)]
        field: FieldArgs,
        #[command(flatten)]
        grid: GridArgs,
        #[command(flatten)]
        radii: RadiiArgs,
        /// Also integrate at doubled resolution and report the change.
        #[arg(long)]
        convergence: bool,
        #[command(flatten)]
        out: OutArgs,
    },
    /// Topology for a descending list of epsilons: scan.json.
    Scan {
        #[command(flatten)]
        field: FieldArgs,
        #[command(flatten)]
        grid: GridArgs,
        #[command(flatten)]
        trace: TraceArgs,
        #[arg(long, value_delimiter = ',', required = true, num_args = 1..)]
        epsilons: Vec<f64>,
        #[command(flatten)]
        out: OutArgs,
    },
}

#[derive(Clone, Debug, Args)]
pub struct FieldArgs {
    /// Built-in polynomial (see `knotfield presets`).
    #[arg(long, required_unless_present = "poly_file", conflicts_with = "poly_file")]
    pub preset: Option<String>,
    /// Polynomial file with lines `j k re im`.
    #[arg(long, required_unless_present = "preset")]
    pub poly_file: Option<PathBuf>,
    /// Accept a nonzero constant term (the field is then not a link field).
    #[arg(long)]
    pub allow_constant_term: bool,
    #[arg(long)]
    pub epsilon: Option<f64>,
    #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
    pub time: f64,
}

#[derive(Clone, Debug, Default, Args)]
pub struct GridArgs {
    /// `XMIN,XMAX,YMIN,YMAX,ZMIN,ZMAX`.
    #[arg(long = "box", value_parser = parse_box, allow_hyphen_values = true)]
    pub bounds: Option<[f64; 6]>,
    /// Grid nodes per axis for extraction, cells per axis for quadrature,
    /// pixels per side for slices.
    #[arg(long)]
    pub res: Option<usize>,
}

#[derive(Clone, Debug, Default, Args)]
pub struct TraceArgs {
    #[arg(long)]
    pub step: Option<f64>,
    #[arg(long)]
    pub tol_seed: Option<f64>,
    #[arg(long)]
    pub tol_curve: Option<f64>,
}

#[derive(Clone, Debug, Default, Args)]
pub struct RadiiArgs {
    /// Integrate over the cubes `[-R,R]^3` for each radius at the grid spacing
    /// of the first one.
    #[arg(long, value_delimiter = ',', num_args = 1..)]
    pub radii: Vec<f64>,
}

#[derive(Clone, Debug, Args)]
pub struct OutArgs {
    #[arg(long, default_value = ".")]
    pub out: PathBuf,
    #[arg(long, value_enum, value_delimiter = ',')]
    pub format: Vec<Format>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Obj,
    Json,
    Pgm,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Plane {
    Xy,
    Xz,
    Yz,
}

impl Plane {
    /// In-plane axes and the normal axis.
    pub fn axes(self) -> (usize, usize, usize) {
        match self {
            Plane::Xy => (0, 1, 2),
            Plane::Xz => (0, 2, 1),
            Plane::Yz => (1, 2, 0),
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Plane::Xy => "xy",
            Plane::Xz => "xz",
            Plane::Yz => "yz",
        }
    }
}

fn parse_floats<const N: usize>(s: &str) -> Result<[f64; N], String> {
    let parts: Vec<&str> = s.split(',').map(str::trim).collect();
    if parts.len() != N {
        return Err(format!("expected {N} comma-separated numbers, got {}", parts.len()));
    }
    let mut out = [0.0; N];
    for (slot, p) in out.iter_mut().zip(&parts) {
        let v: f64 = p.parse().map_err(|_| format!("not a number: `{p}`"))?;
        if !v.is_finite() {
            return Err(format!("not finite: `{p}`"));
        }
        *slot = v;
    }
    Ok(out)
}

pub fn parse_event(s: &str) -> Result<Event, String> {
    let [t, x, y, z] = parse_floats::<4>(s)?;
    Ok(Event::new(t, x, y, z))
}

pub fn parse_box(s: &str) -> Result<[f64; 6], String> {
    let b = parse_floats::<6>(s)?;
    for a in 0..3 {
        if !(b[2 * a] < b[2 * a + 1]) {
            return Err(format!("box axis {a}: min must be below max"));
        }
    }
    Ok(b)
}
