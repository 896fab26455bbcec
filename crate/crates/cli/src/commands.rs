//! Command implementations. Each returns its JSON document and writes its
//! files; `run` adds the terminal output.

use std::fmt::Write as _;

use knotfield::bateman::{
    bateman_condition_residual, hopf_field, lorenz_residual, potential_field_factor,
    spatial_rank_ratio, tilde_conversion_check, wave_residual, BatemanSign, LorenzSignature,
    TildeConvention, FIRST_DERIVATIVE_STEP, SECOND_DERIVATIVE_STEP,
};
use knotfield::field::KnottedFieldSpec;
use knotfield::linalg::{self, Vec3};
use knotfield::linkpoly::{preset, PRESET_NAMES};
use knotfield::topology::{topology_report, TopologyReport, ROUNDING_TOLERANCE};
use knotfield::validate::{epsilon_scan, helicity, maxwell_residuals, total_energy, QuadratureResult};
use knotfield::vortex::{extract_vortices, Bounds, GridSpec, VortexSet};
use knotfield::Event;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use serde_json::{json, Value};

use crate::args::{Format, Plane};
use crate::config::RunConfig;
use crate::error::CliError;
use crate::output::{self, fmt17};

fn superscripts(formula: &str) -> String {
    const SUP: [char; 10] = ['⁰', '¹', '²', '³', '⁴', '⁵', '⁶', '⁷', '⁸', '⁹'];
    let mut out = String::new();
    let mut chars = formula.chars().peekable();
    while let Some(c) = chars.next() {
        if c == '^' && chars.peek().is_some_and(char::is_ascii_digit) {
            while let Some(d) = chars.peek().and_then(|d| d.to_digit(10)) {
                out.push(SUP[d as usize]);
                chars.next();
            }
        } else {
            out.push(c);
        }
    }
    out
}

pub fn presets_listing() -> String {
    let mut out = String::new();
    for name in PRESET_NAMES {
        let lookup = if name == "torus-P-Q" { "torus-2-5" } else { name };
        let (_, info) = preset(lookup).expect("built-in preset");
        let formula = if name == "torus-P-Q" {
            "√2^Q v^Q - √2^P w^P".to_string()
        } else {
            superscripts(&info.formula)
        };
        let pairs: Vec<String> = info.newton_pairs.iter().map(|p| format!("({},{})", p.p(), p.q())).collect();
        let _ = writeln!(out, "{name}");
        let _ = writeln!(out, "    h(v,w) = {formula}");
        let description = if name == "torus-P-Q" {
            "torus knot or link for coprime P, Q (for example torus-2-5)"
        } else {
            info.description
        };
        let _ = writeln!(out, "    {description}");
        if !pairs.is_empty() {
            let _ = writeln!(out, "    Newton pairs {}", pairs.join(" "));
        }
        let _ = writeln!(out, "    default epsilon {}", info.default_epsilon);
    }
    out
}

fn vec_json(v: Vec3) -> Value {
    json!(v)
}

fn event_json(e: &Event) -> Value {
    json!({ "t": e.t, "x": e.x, "y": e.y, "z": e.z })
}

pub fn sample_json(cfg: &RunConfig, e: &Event) -> Value {
    let s = cfg.spec.sample(e);
    let grad: Vec<Value> = s.grad_psi.iter().map(|z| json!([z.re, z.im])).collect();
    json!({
        "config": cfg.to_json(),
        "event": event_json(e),
        "psi": [s.psi.re, s.psi.im],
        "gradPsi": grad,
        "E": vec_json(s.e),
        "B": vec_json(s.b),
        "S": vec_json(s.s),
        "u": s.u,
        "nullness": s.nullness(),
    })
}

pub fn sample_text(cfg: &RunConfig, e: &Event) -> String {
    let s = cfg.spec.sample(e);
    let v3 = |v: Vec3| format!("{} {} {}", fmt17(v[0]), fmt17(v[1]), fmt17(v[2]));
    let mut out = String::new();
    let _ = writeln!(out, "event t={} x={} y={} z={}", fmt17(e.t), fmt17(e.x), fmt17(e.y), fmt17(e.z));
    let _ = writeln!(out, "epsilon {}", fmt17(cfg.spec.epsilon()));
    let _ = writeln!(out, "psi {} {}", fmt17(s.psi.re), fmt17(s.psi.im));
    let _ = writeln!(out, "E {}", v3(s.e));
    let _ = writeln!(out, "B {}", v3(s.b));
    let _ = writeln!(out, "S {}", v3(s.s));
    let _ = writeln!(out, "u {}", fmt17(s.u));
    out
}

fn print_diagnostics(set: &VortexSet) {
    for d in &set.diagnostics {
        eprintln!("diagnostic: cell {:?}: {}", d.cell, d.error);
    }
}

pub fn extract(cfg: &RunConfig) -> Result<VortexSet, CliError> {
    let set = extract_vortices(&cfg.spec, &cfg.grid()?, cfg.time, &cfg.trace)?;
    print_diagnostics(&set);
    Ok(set)
}

fn diagnostics_json(set: &VortexSet) -> Value {
    Value::Array(
        set.diagnostics
            .iter()
            .map(|d| json!({ "cell": d.cell, "message": d.error.to_string() }))
            .collect(),
    )
}

pub fn curves_json(cfg: &RunConfig, set: &VortexSet) -> Value {
    let components: Vec<Value> = set
        .curves
        .iter()
        .enumerate()
        .map(|(id, c)| {
            json!({
                "id": id,
                "closed": c.closed,
                "vertexCount": c.len(),
                "arcLength": c.arc_length,
                "maxSpacing": c.max_spacing(),
            })
        })
        .collect();
    json!({
        "config": cfg.to_json(),
        "time": set.time,
        "epsilon": set.epsilon,
        "candidates": set.candidates,
        "components": components,
        "diagnostics": diagnostics_json(set),
    })
}

/// Writes `curves.csv`, `curves.json` and, if requested, `curves.obj`.
pub fn cmd_vortex(cfg: &RunConfig) -> Result<(VortexSet, Value), CliError> {
    let set = extract(cfg)?;
    output::write_file(&cfg.out, "curves.csv", output::curves_csv(&set).as_bytes())?;
    let doc = curves_json(cfg, &set);
    output::write_file(&cfg.out, "curves.json", output::json_text(&doc).as_bytes())?;
    if cfg.wants(Format::Obj) {
        output::write_file(&cfg.out, "curves.obj", output::curves_obj(&set).as_bytes())?;
    }
    Ok((set, doc))
}

pub fn report_json(report: &TopologyReport) -> Value {
    let windings: Vec<Value> = report
        .windings
        .iter()
        .map(|w| match w {
            Some(w) => json!({ "alpha": w.alpha, "beta": w.beta, "alphaRaw": w.alpha_raw, "betaRaw": w.beta_raw }),
            None => Value::Null,
        })
        .collect();
    json!({
        "componentCount": report.component_count,
        "openCount": report.open_count,
        "closedIndices": report.closed_indices,
        "linkingMatrix": report.linking,
        "linkingRounded": report.linking_rounded(),
        "windings": windings,
        "maxRoundingDeviation": report.max_rounding_deviation(),
        "roundingTolerance": ROUNDING_TOLERANCE,
        "certified": report.is_certified(),
        "epsilon": report.epsilon,
        "time": report.time,
        "warnings": report.warnings,
    })
}

/// Writes `report.json`.
pub fn cmd_topology(cfg: &RunConfig) -> Result<(TopologyReport, Value), CliError> {
    let set = extract(cfg)?;
    let report = topology_report(&cfg.spec, &set);
    let mut doc = report_json(&report);
    doc["config"] = cfg.to_json();
    doc["diagnostics"] = diagnostics_json(&set);
    output::write_file(&cfg.out, "report.json", output::json_text(&doc).as_bytes())?;
    Ok((report, doc))
}

/// One pass/fail line of `verify`.
#[derive(Clone, Debug, PartialEq)]
pub struct Check {
    pub name: &'static str,
    pub value: f64,
    pub threshold: f64,
    /// `true`: pass when `value < threshold`; `false`: when `value > threshold`.
    pub below: bool,
    pub detail: String,
}

impl Check {
    fn below(name: &'static str, value: f64, threshold: f64, detail: impl Into<String>) -> Self {
        Self { name, value, threshold, below: true, detail: detail.into() }
    }

    fn above(name: &'static str, value: f64, threshold: f64, detail: impl Into<String>) -> Self {
        Self { name, value, threshold, below: false, detail: detail.into() }
    }

    pub fn passed(&self) -> bool {
        if self.below {
            self.value < self.threshold
        } else {
            self.value > self.threshold
        }
    }
}

fn random_events(rng: &mut StdRng, n: usize, half: f64) -> Vec<Event> {
    (0..n)
        .map(|_| {
            Event::new(
                rng.gen_range(-half..half),
                rng.gen_range(-half..half),
                rng.gen_range(-half..half),
                rng.gen_range(-half..half),
            )
        })
        .collect()
}

fn max_over<F: Fn(&Event) -> f64>(events: &[Event], f: F) -> f64 {
    events.iter().map(f).fold(0.0, f64::max)
}

/// All pointwise and finite-difference checks for one field.
pub fn verification_checks(spec: &KnottedFieldSpec, seed: u64) -> Vec<Check> {
    let mut rng = StdRng::seed_from_u64(seed);
    let many = random_events(&mut rng, 10_000, 5.0);
    let some = random_events(&mut rng, 200, 5.0);
    let few = random_events(&mut rng, 100, 2.0);
    let mut checks = Vec::new();

    let link = spec.polynomial().validate_link();
    checks.push(Check::below(
        "link_polynomial",
        if link.is_ok() { 0.0 } else { 1.0 },
        0.5,
        match link {
            Ok(()) => "nonzero, no constant term".to_string(),
            Err(e) => e.to_string(),
        },
    ));

    let eps2 = spec.epsilon() * spec.epsilon();
    checks.push(Check::below(
        "sphere_identity",
        max_over(&many, |e| {
            let (a, b) = spec.scaled_bateman_values(e);
            ((a.norm_sqr() + b.norm_sqr()) / eps2 - 1.0).abs()
        }),
        1e-12,
        "max | |alpha_e|^2 + |beta_e|^2 - eps^2 | / eps^2",
    ));
    let sign = BatemanSign::detect();
    checks.push(Check::below(
        "bateman_condition",
        max_over(&many, |e| bateman_condition_residual(e, sign)),
        1e-8,
        format!("grad alpha x grad beta = {}i (d_t alpha grad beta - d_t beta grad alpha)", if sign.sigma() > 0.0 { "+" } else { "-" }),
    ));
    checks.push(Check::above(
        "spatial_rank",
        many.iter().map(spatial_rank_ratio).fold(f64::INFINITY, f64::min),
        1e-8,
        "min sigma_min / sigma_max of the real 4x3 spatial Jacobian",
    ));
    checks.push(Check::below(
        "hopf_nullness",
        max_over(&many, |e| {
            let f = hopf_field(e).f;
            linalg::cdot(f, f).norm() / linalg::cnorm_sqr(f)
        }),
        1e-10,
        "|F.F| / |F.conj F| for the Hopf field",
    ));
    checks.push(Check::below(
        "field_nullness",
        max_over(&many, |e| spec.sample(e).nullness()),
        1e-10,
        "|F.F| / |F.conj F| for the knotted field",
    ));
    checks.push(Check::below(
        "energy_factorization",
        max_over(&many, |e| spec.energy_ratio(e)),
        1e-12,
        "|u_L - |psi|^2 u_H| / (|psi|^2 u_H)",
    ));
    checks.push(Check::below(
        "poynting_factorization",
        max_over(&many, |e| spec.poynting_alignment(e)),
        1e-10,
        "|S_L - |psi|^2 S_H| / (|psi|^2 |S_H|)",
    ));
    checks.push(Check::below(
        "psi_gradient",
        max_over(&some, |e| {
            let jet = spec.psi(e);
            let scale = jet.d.iter().map(|z| z.norm()).fold(0.0, f64::max).max(1e-300);
            (0..4)
                .map(|k| {
                    let h = FIRST_DERIVATIVE_STEP;
                    let fd = (spec.psi_value(&e.shifted(k, h)) - spec.psi_value(&e.shifted(k, -h))) / (2.0 * h);
                    (jet.d[k] - fd).norm() / scale
                })
                .fold(0.0, f64::max)
        }),
        1e-6,
        "jet partials of psi against central differences",
    ));

    let fine = maxwell_residuals(spec, &some, SECOND_DERIVATIVE_STEP).expect("positive step");
    let half = maxwell_residuals(spec, &some, SECOND_DERIVATIVE_STEP / 2.0).expect("positive step");
    checks.push(Check::below(
        "maxwell_residuals",
        fine.max(),
        1e-4,
        format!(
            "divE {:.3e}, divB {:.3e}, faraday {:.3e}, ampere {:.3e} at step {}",
            fine.div_e, fine.div_b, fine.faraday, fine.ampere, fine.step
        ),
    ));
    let ratio = fine.max() / half.max();
    checks.push(Check::below(
        "maxwell_step_halving",
        (ratio - 4.0).abs(),
        1.0,
        format!("residual ratio {ratio:.4} on halving the step (expected about 4)"),
    ));

    checks.push(Check::below(
        "superpotential_wave",
        max_over(&few, |e| wave_residual(e, SECOND_DERIVATIVE_STEP)),
        1e-5,
        "relative d'Alembertian of the superpotential",
    ));
    let signature = LorenzSignature::detect();
    checks.push(Check::below(
        "lorenz_gauge",
        max_over(&few, |e| lorenz_residual(e, SECOND_DERIVATIVE_STEP)),
        1e-4,
        format!("four-divergence with signature {signature:?}"),
    ));
    match potential_field_factor(&few, SECOND_DERIVATIVE_STEP) {
        Ok(fit) => checks.push(Check::below(
            "potential_field_factor",
            fit.max_deviation,
            1e-3,
            format!(
                "lambda = {} {}i, electric/magnetic ratio = {} {}i",
                fmt17(fit.lambda.re),
                fmt17(fit.lambda.im),
                fmt17(fit.duality.re),
                fmt17(fit.duality.im)
            ),
        )),
        Err(e) => checks.push(Check::below("potential_field_factor", f64::INFINITY, 1e-3, e.to_string())),
    }
    let convention = TildeConvention::detect();
    checks.push(Check::below(
        "tilde_conversion",
        max_over(&many[..1000], tilde_conversion_check),
        1e-10,
        format!(
            "alpha = 1 {} i alpha~, beta = {}i beta~{}",
            if convention.alpha_sign > 0 { "+" } else { "-" },
            if convention.beta_sign > 0 { "" } else { "-" },
            if convention == TildeConvention::FROZEN { "" } else { " (differs from frozen convention)" }
        ),
    ));
    checks
}

pub fn verification_json(cfg: &RunConfig, checks: &[Check], seed: u64) -> Value {
    let rows: Vec<Value> = checks
        .iter()
        .map(|c| {
            json!({
                "name": c.name,
                "value": c.value,
                "threshold": c.threshold,
                "comparison": if c.below { "<" } else { ">" },
                "passed": c.passed(),
                "detail": c.detail,
            })
        })
        .collect();
    json!({
        "config": cfg.to_json(),
        "seed": seed,
        "checks": rows,
        "passed": checks.iter().all(Check::passed),
    })
}

pub fn verification_text(checks: &[Check]) -> String {
    let mut out = String::new();
    for c in checks {
        let _ = writeln!(
            out,
            "[{}] {:<24} {} {} {:.1e}  {}",
            if c.passed() { "PASS" } else { "FAIL" },
            c.name,
            fmt17(c.value),
            if c.below { "<" } else { ">" },
            c.threshold,
            c.detail
        );
    }
    out
}

/// Writes `verification.json`; fails with exit code 1 if any check fails.
pub fn cmd_verify(cfg: &RunConfig, seed: u64) -> Result<(Vec<Check>, String), CliError> {
    let checks = verification_checks(&cfg.spec, seed);
    let doc = verification_json(cfg, &checks, seed);
    output::write_file(&cfg.out, "verification.json", output::json_text(&doc).as_bytes())?;
    Ok((checks.clone(), verification_text(&checks)))
}

/// Floor applied before taking `log10(u)`.
pub const U_FLOOR: f64 = 1e-300;

/// Energy density sampled on an `n x n` node grid spanning the box's extent
/// in the two in-plane axes. Row `j` holds `x2 = min2 + j * h2`.
#[derive(Clone, Debug, PartialEq)]
pub struct Slice {
    pub plane: Plane,
    pub offset: f64,
    pub width: usize,
    pub height: usize,
    pub x1: Vec<f64>,
    pub x2: Vec<f64>,
    /// Row-major, `u[j * width + i]`.
    pub u: Vec<f64>,
    pub log_min: f64,
    pub log_max: f64,
    pub pixels: Vec<u16>,
}

pub fn compute_slice(spec: &KnottedFieldSpec, t: f64, bounds: &Bounds, plane: Plane, offset: f64, n: usize) -> Slice {
    let (a1, a2, a3) = plane.axes();
    let axis = |a: usize| -> Vec<f64> {
        let h = bounds.extent(a) / (n - 1) as f64;
        (0..n).map(|i| bounds.min[a] + i as f64 * h).collect()
    };
    let (x1, x2) = (axis(a1), axis(a2));
    let mut u = Vec::with_capacity(n * n);
    for b in &x2 {
        for a in &x1 {
            let mut p = [0.0; 3];
            p[a1] = *a;
            p[a2] = *b;
            p[a3] = offset;
            u.push(spec.sample(&Event::at(t, p)).u);
        }
    }
    let logs: Vec<f64> = u.iter().map(|v| v.max(U_FLOOR).log10()).collect();
    let log_min = logs.iter().copied().fold(f64::INFINITY, f64::min);
    let log_max = logs.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let span = log_max - log_min;
    let pixels = logs
        .iter()
        .map(|l| if span > 0.0 { ((l - log_min) / span * 65535.0).round() as u16 } else { 0 })
        .collect();
    Slice { plane, offset, width: n, height: n, x1, x2, u, log_min, log_max, pixels }
}

pub fn slice_csv(s: &Slice) -> String {
    let mut out = String::from("i,j,x1,x2,u\n");
    for j in 0..s.height {
        for i in 0..s.width {
            let _ = writeln!(out, "{i},{j},{},{},{}", fmt17(s.x1[i]), fmt17(s.x2[j]), fmt17(s.u[j * s.width + i]));
        }
    }
    out
}

/// Writes `slice_<plane>.pgm`, `slice_<plane>.csv` and `slice_<plane>.json`.
pub fn cmd_slice(cfg: &RunConfig, plane: Plane, offset: f64) -> Result<(Slice, Value), CliError> {
    if cfg.resolution < 2 {
        return Err(CliError::Usage("--res must be at least 2 for a slice".into()));
    }
    let s = compute_slice(&cfg.spec, cfg.time, &cfg.bounds, plane, offset, cfg.resolution);
    let stem = format!("slice_{}", plane.name());
    output::write_file(&cfg.out, &format!("{stem}.pgm"), &output::pgm16(s.width, s.height, &s.pixels))?;
    output::write_file(&cfg.out, &format!("{stem}.csv"), slice_csv(&s).as_bytes())?;
    let (a1, a2, a3) = plane.axes();
    let names = ["x", "y", "z"];
    let doc = json!({
        "config": cfg.to_json(),
        "plane": plane.name(),
        "axes": [names[a1], names[a2]],
        "normalAxis": names[a3],
        "offset": offset,
        "width": s.width,
        "height": s.height,
        "rowOrder": "row j has x2 = x2[0] + j * (x2[last] - x2[0]) / (height - 1); row 0 is the minimum",
        "log10Min": s.log_min,
        "log10Max": s.log_max,
        "uFloor": U_FLOOR,
        "mapping": "pixel = round(65535 * (log10(max(u, uFloor)) - log10Min) / (log10Max - log10Min))",
        "x1Range": [s.x1[0], s.x1[s.width - 1]],
        "x2Range": [s.x2[0], s.x2[s.height - 1]],
    });
    output::write_file(&cfg.out, &format!("{stem}.json"), output::json_text(&doc).as_bytes())?;
    Ok((s, doc))
}

/// Boxes for `--radii`: cubes `[-R,R]^3` at the spacing of the first radius.
fn radius_grids(cfg: &RunConfig, radii: &[f64]) -> Result<Vec<GridSpec>, CliError> {
    if radii.is_empty() {
        return Ok(vec![GridSpec::new(cfg.bounds, [cfg.resolution; 3])?]);
    }
    if radii.iter().any(|r| !(r.is_finite() && *r > 0.0)) {
        return Err(CliError::Usage("--radii must be positive".into()));
    }
    let base = radii[0];
    radii
        .iter()
        .map(|r| {
            let cells = ((cfg.resolution as f64) * r / base).round().max(1.0) as usize;
            Ok(GridSpec::cube(*r, cells)?)
        })
        .collect()
}

fn grid_json(g: &GridSpec) -> Value {
    json!({
        "box": [g.bounds.min[0], g.bounds.max[0], g.bounds.min[1], g.bounds.max[1], g.bounds.min[2], g.bounds.max[2]],
        "cells": g.resolution,
    })
}

fn quadrature_json(q: &QuadratureResult, g: &GridSpec) -> Value {
    json!({
        "grid": grid_json(g),
        "value": q.value,
        "boxRadius": q.box_radius,
        "resolution": q.resolution,
        "tailEstimate": q.tail_estimate,
        "decayExponent": q.decay_exponent,
        "tailTrusted": q.tail_trusted,
    })
}

fn relative_changes(values: &[f64]) -> Vec<f64> {
    values.windows(2).map(|w| ((w[1] - w[0]) / w[1]).abs()).collect()
}

/// Writes `energy.json`. Untrusted tails are reported on stderr.
pub fn cmd_energy(cfg: &RunConfig, radii: &[f64], hopf: bool) -> Result<(Vec<QuadratureResult>, Value), CliError> {
    let spec = if hopf { KnottedFieldSpec::hopf(cfg.spec.epsilon())? } else { cfg.spec.clone() };
    let grids = radius_grids(cfg, radii)?;
    let results: Vec<QuadratureResult> = grids.iter().map(|g| total_energy(&spec, g, cfg.time)).collect();
    for q in &results {
        if !q.tail_trusted {
            eprintln!(
                "warning: tail estimate untrusted at R = {} (fitted decay exponent {:.3})",
                q.box_radius, q.decay_exponent
            );
        }
    }
    let values: Vec<f64> = results.iter().map(|q| q.value).collect();
    let doc = json!({
        "config": cfg.to_json(),
        "field": if hopf { "hopf" } else { "knotted" },
        "time": cfg.time,
        "results": results.iter().zip(&grids).map(|(q, g)| quadrature_json(q, g)).collect::<Vec<_>>(),
        "relativeChanges": relative_changes(&values),
        "tailTrusted": results.iter().all(|q| q.tail_trusted),
    });
    output::write_file(&cfg.out, "energy.json", output::json_text(&doc).as_bytes())?;
    Ok((results, doc))
}

/// Writes `helicity.json`.
pub fn cmd_helicity(cfg: &RunConfig, radii: &[f64], convergence: bool) -> Result<Value, CliError> {
    let grids = radius_grids(cfg, radii)?;
    let mut rows = Vec::new();
    let mut hm = Vec::new();
    let mut he = Vec::new();
    for g in &grids {
        let h = helicity(&cfg.spec, g, cfg.time);
        hm.push(h.magnetic);
        he.push(h.electric);
        let mut row = json!({ "grid": grid_json(g), "magnetic": h.magnetic, "electric": h.electric });
        if convergence {
            let fine = GridSpec::new(g.bounds, g.resolution.map(|n| 2 * n))?;
            let f = helicity(&cfg.spec, &fine, cfg.time);
            row["doubled"] = json!({
                "grid": grid_json(&fine),
                "magnetic": f.magnetic,
                "electric": f.electric,
                "relativeChangeMagnetic": ((f.magnetic - h.magnetic) / f.magnetic).abs(),
                "relativeChangeElectric": ((f.electric - h.electric) / f.electric).abs(),
            });
        }
        rows.push(row);
    }
    let doc = json!({
        "config": cfg.to_json(),
        "time": cfg.time,
        "results": rows,
        "relativeChangesMagnetic": relative_changes(&hm),
        "relativeChangesElectric": relative_changes(&he),
    });
    output::write_file(&cfg.out, "helicity.json", output::json_text(&doc).as_bytes())?;
    Ok(doc)
}

/// Writes `scan.json`.
pub fn cmd_scan(cfg: &RunConfig, epsilons: &[f64]) -> Result<Value, CliError> {
    let scan = epsilon_scan(cfg.spec.polynomial(), epsilons, &cfg.grid()?, cfg.time, &cfg.trace)?;
    let rows: Vec<Value> = scan
        .rows
        .iter()
        .map(|r| {
            let mut v = report_json(&r.report);
            v["curves"] = json!(r.curves);
            v["diagnosticCount"] = json!(r.diagnostics);
            v
        })
        .collect();
    let doc = json!({ "config": cfg.to_json(), "epsilons": epsilons, "rows": rows, "stableFrom": scan.stable_from });
    output::write_file(&cfg.out, "scan.json", output::json_text(&doc).as_bytes())?;
    Ok(doc)
}
