//! Resolution of command-line arguments into one effective run configuration.

use std::fs;
use std::path::PathBuf;

use knotfield::field::KnottedFieldSpec;
use knotfield::linkpoly::{parse_poly, preset, BivariatePolynomial};
use knotfield::vortex::{Bounds, GridSpec, TraceParams};
use serde_json::{json, Value};

use crate::args::{FieldArgs, Format, GridArgs, OutArgs, TraceArgs};
use crate::error::CliError;

pub const DEFAULT_HALF_WIDTH: f64 = 3.0;
pub const DEFAULT_EXTRACTION_RES: usize = 81;

#[derive(Clone, Debug, PartialEq)]
pub enum Source {
    Preset(String),
    File(PathBuf),
}

/// The fully resolved inputs of one command.
#[derive(Clone, Debug)]
pub struct RunConfig {
    pub source: Source,
    pub spec: KnottedFieldSpec,
    pub allow_constant_term: bool,
    pub time: f64,
    pub bounds: Bounds,
    pub resolution: usize,
    pub trace: TraceParams,
    pub out: PathBuf,
    pub formats: Vec<Format>,
}

fn load_polynomial(args: &FieldArgs) -> Result<(Source, BivariatePolynomial, f64), CliError> {
    match (&args.preset, &args.poly_file) {
        (Some(name), None) => {
            let (h, info) = preset(name)?;
            Ok((Source::Preset(name.clone()), h, info.default_epsilon))
        }
        (None, Some(path)) => {
            let text = fs::read_to_string(path).map_err(|source| CliError::Io { path: path.clone(), source })?;
            let h = parse_poly(&text, args.allow_constant_term)?;
            Ok((Source::File(path.clone()), h, 1.0))
        }
        _ => Err(CliError::Usage("exactly one of --preset and --poly-file is required".into())),
    }
}

/// Builds the field; with `--allow-constant-term` the link checks are skipped.
pub fn resolve_field(args: &FieldArgs) -> Result<(Source, KnottedFieldSpec), CliError> {
    let (source, h, default_eps) = load_polynomial(args)?;
    let eps = args.epsilon.unwrap_or(default_eps);
    if !args.time.is_finite() {
        return Err(CliError::Usage("--time must be finite".into()));
    }
    let spec = if args.allow_constant_term {
        KnottedFieldSpec::new_unchecked(h, eps)?
    } else {
        KnottedFieldSpec::new(h, eps)?
    };
    Ok((source, spec))
}

impl RunConfig {
    pub fn resolve(
        field: &FieldArgs,
        grid: Option<&GridArgs>,
        trace: Option<&TraceArgs>,
        out: Option<&OutArgs>,
        default_res: usize,
    ) -> Result<Self, CliError> {
        let (source, spec) = resolve_field(field)?;
        let bounds = match grid.and_then(|g| g.bounds) {
            Some(b) => Bounds::new([b[0], b[2], b[4]], [b[1], b[3], b[5]])?,
            None => Bounds::cube(DEFAULT_HALF_WIDTH)?,
        };
        let resolution = grid.and_then(|g| g.res).unwrap_or(default_res);
        let mut params = TraceParams::default();
        if let Some(t) = trace {
            params.step = t.step.unwrap_or(params.step);
            params.tol_seed = t.tol_seed.unwrap_or(params.tol_seed);
            params.tol_curve = t.tol_curve.unwrap_or(params.tol_curve);
        }
        params.validate()?;
        let (out_dir, formats) = match out {
            Some(o) => (o.out.clone(), o.format.clone()),
            None => (PathBuf::from("."), Vec::new()),
        };
        Ok(Self {
            source,
            spec,
            allow_constant_term: field.allow_constant_term,
            time: field.time,
            bounds,
            resolution,
            trace: params,
            out: out_dir,
            formats,
        })
    }

    pub fn wants(&self, f: Format) -> bool {
        self.formats.contains(&f)
    }

    /// Node grid for vortex extraction.
    pub fn grid(&self) -> Result<GridSpec, CliError> {
        Ok(GridSpec::new(self.bounds, [self.resolution; 3])?)
    }

    pub fn box_array(&self) -> [f64; 6] {
        let (a, b) = (self.bounds.min, self.bounds.max);
        [a[0], b[0], a[1], b[1], a[2], b[2]]
    }

    /// Everything needed to reproduce an output, as embedded in every sidecar.
    pub fn to_json(&self) -> Value {
        let source = match &self.source {
            Source::Preset(name) => json!({ "preset": name }),
            Source::File(path) => json!({ "polyFile": path.display().to_string() }),
        };
        let terms: Vec<Value> = self
            .spec
            .polynomial()
            .terms()
            .map(|((j, k), c)| json!([j, k, c.re, c.im]))
            .collect();
        json!({
            "version": env!("CARGO_PKG_VERSION"),
            "source": source,
            "polynomial": self.spec.polynomial().to_string(),
            "terms": terms,
            "allowConstantTerm": self.allow_constant_term,
            "epsilon": self.spec.epsilon(),
            "time": self.time,
            "box": self.box_array(),
            "resolution": self.resolution,
            "trace": {
                "step": self.trace.step,
                "tolSeed": self.trace.tol_seed,
                "tolCurve": self.trace.tol_curve,
                "maxRefineIterations": self.trace.max_refine_iterations,
                "halvingIterations": self.trace.halving_iterations,
                "maxVertices": self.trace.max_vertices,
                "minStepFraction": self.trace.min_step_fraction,
                "dedupeRadius": self.trace.dedupe_radius(),
            },
        })
    }
}
