//! Extraction of optical vortex lines, the curves where
//! `psi = h(alpha_e, beta_e)` vanishes at a fixed time.
//!
//! The pipeline is scan, refine, trace:
//! 1. [`scan_cells`] samples `psi` on a regular grid and keeps cells whose
//!    corners change sign in both `Re psi` and `Im psi`;
//! 2. [`refine_seed`] pulls a cell centre onto the zero set with minimum-norm
//!    Gauss–Newton steps;
//! 3. [`trace_curve`] follows the zero set with a predictor along
//!    `tau = grad Re psi x grad Im psi` and a Newton corrector confined to the
//!    plane normal to `tau`, until the curve closes or leaves the box.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::vec::Vec;

use num_complex::Complex64;

use crate::error::Error;
use crate::field::KnottedFieldSpec;
use crate::jet::Event;
use crate::linalg::{self, Vec3};
use crate::math;

/// Axis-aligned box `[min, max]`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Bounds {
    pub min: Vec3,
    pub max: Vec3,
}

impl Bounds {
    pub fn new(min: Vec3, max: Vec3) -> Result<Self, Error> {
        for a in 0..3 {
            if !(min[a].is_finite() && max[a].is_finite() && min[a] < max[a]) {
                return Err(Error::InvalidGrid(format!(
                    "axis {a}: need finite min < max, got [{}, {}]",
                    min[a], max[a]
                )));
            }
        }
        Ok(Self { min, max })
    }

    /// `[-half, half]^3`.
    pub fn cube(half: f64) -> Result<Self, Error> {
        Self::new([-half; 3], [half; 3])
    }

    pub fn contains(&self, p: Vec3) -> bool {
        (0..3).all(|a| p[a] >= self.min[a] && p[a] <= self.max[a])
    }

    pub fn extent(&self, axis: usize) -> f64 {
        self.max[axis] - self.min[axis]
    }
}

/// Box plus number of grid nodes per axis.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct GridSpec {
    pub bounds: Bounds,
    pub resolution: [usize; 3],
}

pub const MIN_RESOLUTION: usize = 8;

impl GridSpec {
    pub fn new(bounds: Bounds, resolution: [usize; 3]) -> Result<Self, Error> {
        if resolution.iter().any(|&n| n < MIN_RESOLUTION) {
            return Err(Error::InvalidGrid(format!(
                "resolution must be >= {MIN_RESOLUTION} per axis, got {resolution:?}"
            )));
        }
        Ok(Self { bounds, resolution })
    }

    pub fn cube(half: f64, n: usize) -> Result<Self, Error> {
        Self::new(Bounds::cube(half)?, [n; 3])
    }

    /// Node spacing along `axis` when the resolution counts nodes.
    pub fn node_spacing(&self, axis: usize) -> f64 {
        self.bounds.extent(axis) / (self.resolution[axis] - 1) as f64
    }

    pub fn node(&self, idx: [usize; 3]) -> Vec3 {
        let mut p = [0.0; 3];
        for a in 0..3 {
            p[a] = self.bounds.min[a] + idx[a] as f64 * self.node_spacing(a);
        }
        p
    }

    pub fn cell_diagonal(&self) -> f64 {
        let h = [self.node_spacing(0), self.node_spacing(1), self.node_spacing(2)];
        linalg::norm(h)
    }

    /// Same box with `2n - 1` nodes per axis (every old node is kept).
    pub fn refined(&self) -> Self {
        Self { bounds: self.bounds, resolution: self.resolution.map(|n| 2 * n - 1) }
    }
}

/// Tracing and refinement constants.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct TraceParams {
    /// Nominal predictor step (box units).
    pub step: f64,
    /// Newton convergence threshold on `|psi|`.
    pub tol_seed: f64,
    /// Every reported vertex satisfies `|psi| < tol_curve`.
    pub tol_curve: f64,
    pub max_refine_iterations: usize,
    /// Corrector iterations above which the step is halved.
    pub halving_iterations: usize,
    pub max_vertices: usize,
    /// Smallest allowed step as a fraction of `step`.
    pub min_step_fraction: f64,
    /// Seeds closer than `dedupe_factor * step` to a traced curve are skipped.
    pub dedupe_factor: f64,
}

impl Default for TraceParams {
    fn default() -> Self {
        Self {
            step: 0.02,
            tol_seed: 1e-10,
            tol_curve: 1e-8,
            max_refine_iterations: 50,
            halving_iterations: 5,
            max_vertices: 400_000,
            min_step_fraction: 1.0 / 1024.0,
            dedupe_factor: 2.0,
        }
    }
}

impl TraceParams {
    pub fn with_step(step: f64) -> Self {
        Self { step, ..Self::default() }
    }

    pub fn validate(&self) -> Result<(), Error> {
        let positive = [self.step, self.tol_seed, self.tol_curve, self.min_step_fraction, self.dedupe_factor];
        if positive.iter().any(|v| !(v.is_finite() && *v > 0.0)) {
            return Err(Error::InvalidArgument("trace step and tolerances must be > 0".into()));
        }
        if self.tol_seed > self.tol_curve {
            return Err(Error::InvalidArgument("tol_seed must not exceed tol_curve".into()));
        }
        Ok(())
    }

    pub fn dedupe_radius(&self) -> f64 {
        self.dedupe_factor * self.step
    }
}

/// A grid cell flagged by [`scan_cells`].
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Seed {
    pub cell: [usize; 3],
    pub center: Vec3,
}

fn straddles(values: &[f64; 8]) -> bool {
    let mut lo = f64::INFINITY;
    let mut hi = f64::NEG_INFINITY;
    for &v in values {
        lo = lo.min(v);
        hi = hi.max(v);
    }
    lo <= 0.0 && hi >= 0.0
}

fn sample_plane(spec: &KnottedFieldSpec, grid: &GridSpec, t: f64, k: usize) -> Vec<Complex64> {
    let [nx, ny, _] = grid.resolution;
    let mut out = Vec::with_capacity(nx * ny);
    for j in 0..ny {
        for i in 0..nx {
            out.push(spec.psi_value(&Event::at(t, grid.node([i, j, k]))));
        }
    }
    out
}

/// Cells whose eight corners show a sign change in both `Re psi` and `Im psi`,
/// sorted by cell index `(i, j, k)`.
pub fn scan_cells(spec: &KnottedFieldSpec, grid: &GridSpec, t: f64) -> Vec<Seed> {
    let [nx, ny, nz] = grid.resolution;
    let mut seeds = Vec::new();
    let mut lower = sample_plane(spec, grid, t, 0);
    for k in 0..nz - 1 {
        let upper = sample_plane(spec, grid, t, k + 1);
        for j in 0..ny - 1 {
            for i in 0..nx - 1 {
                let idx = [j * nx + i, j * nx + i + 1, (j + 1) * nx + i, (j + 1) * nx + i + 1];
                let mut re = [0.0; 8];
                let mut im = [0.0; 8];
                for (n, &id) in idx.iter().enumerate() {
                    re[n] = lower[id].re;
                    im[n] = lower[id].im;
                    re[n + 4] = upper[id].re;
                    im[n + 4] = upper[id].im;
                }
                if straddles(&re) && straddles(&im) {
                    let a = grid.node([i, j, k]);
                    let b = grid.node([i + 1, j + 1, k + 1]);
                    seeds.push(Seed {
                        cell: [i, j, k],
                        center: linalg::scale(linalg::add(a, b), 0.5),
                    });
                }
            }
        }
        lower = upper;
    }
    seeds.sort_by(|a, b| a.cell.cmp(&b.cell));
    seeds
}

/// Local data of `psi` at a point: residual, real Jacobian rows and tangent.
struct Local {
    psi: Complex64,
    grad_re: Vec3,
    grad_im: Vec3,
}

impl Local {
    fn at(spec: &KnottedFieldSpec, p: Vec3, t: f64) -> Self {
        let j = spec.psi(&Event::at(t, p));
        let g = j.grad();
        Self {
            psi: j.value,
            grad_re: [g[0].re, g[1].re, g[2].re],
            grad_im: [g[0].im, g[1].im, g[2].im],
        }
    }

    fn residual(&self) -> f64 {
        self.psi.norm()
    }

    /// Unit tangent `grad Re psi x grad Im psi`, or an error if the two
    /// gradients are (nearly) parallel.
    fn tangent(&self, p: Vec3) -> Result<Vec3, Error> {
        let tau = linalg::cross(self.grad_re, self.grad_im);
        let n = linalg::norm(tau);
        let scale = linalg::norm(self.grad_re) * linalg::norm(self.grad_im);
        if !(n > 1e-12 * scale) || n == 0.0 {
            return Err(Error::DegenerateTangent { point: p });
        }
        Ok(linalg::scale(tau, 1.0 / n))
    }

    /// Minimum-norm Gauss–Newton update for the two equations `Re psi = Im psi = 0`.
    fn min_norm_step(&self) -> Option<Vec3> {
        let (a, b) = (self.grad_re, self.grad_im);
        let (aa, ab, bb) = (linalg::dot(a, a), linalg::dot(a, b), linalg::dot(b, b));
        let det = aa * bb - ab * ab;
        if !(det > 1e-24 * aa * bb) {
            return None;
        }
        let (r0, r1) = (-self.psi.re, -self.psi.im);
        let l0 = (bb * r0 - ab * r1) / det;
        let l1 = (aa * r1 - ab * r0) / det;
        Some(linalg::add(linalg::scale(a, l0), linalg::scale(b, l1)))
    }

    /// Newton update with the third row fixing `dot(row, delta) = rhs`.
    fn constrained_step(&self, row: Vec3, rhs: f64) -> Option<Vec3> {
        linalg::solve3([self.grad_re, self.grad_im, row], [-self.psi.re, -self.psi.im, rhs])
    }
}

/// A point pulled onto the zero set.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Refined {
    pub point: Vec3,
    pub iterations: usize,
    pub residual: f64,
}

/// Gauss–Newton refinement of `start` onto the zero set of `psi`.
///
/// Each update is clipped to `max_move`; a result further than `2 * max_move`
/// from `start` is rejected as having drifted to a different part of the set.
pub fn refine_seed(
    spec: &KnottedFieldSpec,
    start: Vec3,
    t: f64,
    params: &TraceParams,
    max_move: f64,
) -> Result<Refined, Error> {
    let mut p = start;
    let mut local = Local::at(spec, p, t);
    for it in 0..=params.max_refine_iterations {
        if local.residual() < params.tol_seed {
            let distance = linalg::dist(p, start);
            if distance > 2.0 * max_move {
                return Err(Error::SeedDrifted { distance });
            }
            return Ok(Refined { point: p, iterations: it, residual: local.residual() });
        }
        if it == params.max_refine_iterations {
            break;
        }
        let Some(mut delta) = local.min_norm_step() else {
            return Err(Error::DegenerateTangent { point: p });
        };
        let len = linalg::norm(delta);
        if len > max_move {
            delta = linalg::scale(delta, max_move / len);
        }
        p = linalg::add(p, delta);
        local = Local::at(spec, p, t);
    }
    Err(Error::SeedNotConverged {
        iterations: params.max_refine_iterations,
        residual: local.residual(),
    })
}

/// An ordered polyline on the zero set.
#[derive(Clone, Debug, PartialEq)]
pub struct VortexCurve {
    pub vertices: Vec<Vec3>,
    pub closed: bool,
    pub arc_length: f64,
}

impl VortexCurve {
    pub fn new(vertices: Vec<Vec3>, closed: bool) -> Self {
        let mut arc_length: f64 = vertices.windows(2).map(|w| linalg::dist(w[0], w[1])).sum();
        if closed && vertices.len() > 1 {
            arc_length += linalg::dist(vertices[vertices.len() - 1], vertices[0]);
        }
        Self { vertices, closed, arc_length }
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    /// Segments in traversal order, including the closing one for closed curves.
    pub fn segments(&self) -> impl Iterator<Item = (Vec3, Vec3)> + '_ {
        let n = self.vertices.len();
        let count = if self.closed { n } else { n.saturating_sub(1) };
        (0..count).map(move |i| (self.vertices[i], self.vertices[(i + 1) % n]))
    }

    pub fn reversed(&self) -> Self {
        let mut v = self.vertices.clone();
        v.reverse();
        Self { vertices: v, closed: self.closed, arc_length: self.arc_length }
    }

    /// Closed curves only: start the traversal at vertex `k`.
    pub fn rotated(&self, k: usize) -> Self {
        let mut v = self.vertices.clone();
        if !v.is_empty() {
            let k = k % v.len();
            v.rotate_left(k);
        }
        Self { vertices: v, closed: self.closed, arc_length: self.arc_length }
    }

    pub fn max_spacing(&self) -> f64 {
        self.segments().map(|(a, b)| linalg::dist(a, b)).fold(0.0, f64::max)
    }
}

enum March {
    Closed(Vec<Vec3>),
    Exited(Vec<Vec3>),
}

struct MarchFailure {
    error: Error,
    partial: Vec<Vec3>,
}

fn fail(error: Error, partial: Vec<Vec3>) -> MarchFailure {
    MarchFailure { error, partial }
}

/// Result of one predictor-corrector attempt.
enum Attempt {
    Accepted { point: Vec3, local: Local, iterations: usize },
    Rejected,
}

fn corrector(
    spec: &KnottedFieldSpec,
    t: f64,
    from: Vec3,
    tau: Vec3,
    h: f64,
    params: &TraceParams,
) -> Attempt {
    let predicted = linalg::add(from, linalg::scale(tau, h));
    let mut y = predicted;
    let hard_limit = params.halving_iterations.max(1) * 2;
    for it in 0..=hard_limit {
        let local = Local::at(spec, y, t);
        if local.residual() < params.tol_seed {
            if it > params.halving_iterations || linalg::dist(y, predicted) > 0.5 * h {
                return Attempt::Rejected;
            }
            return Attempt::Accepted { point: y, local, iterations: it };
        }
        let Some(delta) = local.constrained_step(tau, 0.0) else {
            return Attempt::Rejected;
        };
        if !(linalg::norm(delta) <= h) {
            return Attempt::Rejected;
        }
        y = linalg::add(y, delta);
    }
    Attempt::Rejected
}

/// Moves the last segment's exit point onto the box face and corrects it there.
fn boundary_point(
    spec: &KnottedFieldSpec,
    t: f64,
    inside: Vec3,
    outside: Vec3,
    bounds: &Bounds,
    params: &TraceParams,
) -> Option<Vec3> {
    let mut s_min = 1.0;
    let mut face = (0usize, 0.0);
    for a in 0..3 {
        let d = outside[a] - inside[a];
        for wall in [bounds.min[a], bounds.max[a]] {
            let crosses = (outside[a] > bounds.max[a] && wall == bounds.max[a])
                || (outside[a] < bounds.min[a] && wall == bounds.min[a]);
            if crosses && d != 0.0 {
                let s = (wall - inside[a]) / d;
                if s < s_min {
                    s_min = s;
                    face = (a, wall);
                }
            }
        }
    }
    let mut z = linalg::add(inside, linalg::scale(linalg::sub(outside, inside), s_min));
    z[face.0] = face.1;
    let mut row = [0.0; 3];
    row[face.0] = 1.0;
    for _ in 0..=2 * params.halving_iterations {
        let local = Local::at(spec, z, t);
        if local.residual() < params.tol_seed {
            return (linalg::dist(z, inside) <= 2.0 * params.step).then_some(z);
        }
        let delta = local.constrained_step(row, face.1 - z[face.0])?;
        if linalg::norm(delta) > params.step {
            return None;
        }
        z = linalg::add(z, delta);
    }
    None
}

fn march(
    spec: &KnottedFieldSpec,
    start: Vec3,
    t: f64,
    bounds: &Bounds,
    params: &TraceParams,
    direction: f64,
) -> Result<March, MarchFailure> {
    let mut vertices = alloc::vec![start];
    let start_local = Local::at(spec, start, t);
    let mut tau = match start_local.tangent(start) {
        Ok(tau) => linalg::scale(tau, direction),
        Err(e) => return Err(fail(e, vertices)),
    };
    let mut x = start;
    let mut h = params.step;
    let min_step = params.step * params.min_step_fraction;
    let mut arc = 0.0;
    loop {
        if vertices.len() >= params.max_vertices {
            return Err(fail(Error::TooManyVertices { limit: params.max_vertices }, vertices));
        }
        match corrector(spec, t, x, tau, h, params) {
            Attempt::Accepted { point, local, iterations } => {
                let next_tau = match local.tangent(point) {
                    Ok(v) => linalg::scale(v, direction),
                    Err(e) => return Err(fail(e, vertices)),
                };
                if linalg::dot(next_tau, tau) < 0.5 {
                    h *= 0.5;
                } else if !bounds.contains(point) {
                    if let Some(b) = boundary_point(spec, t, x, point, bounds, params) {
                        vertices.push(b);
                    }
                    return Ok(March::Exited(vertices));
                } else {
                    arc += linalg::dist(x, point);
                    vertices.push(point);
                    x = point;
                    tau = next_tau;
                    if arc > 3.0 * params.step && linalg::dist(point, start) < params.step {
                        return Ok(March::Closed(vertices));
                    }
                    if iterations <= 2 && h < params.step {
                        h = (2.0 * h).min(params.step);
                    }
                    continue;
                }
            }
            Attempt::Rejected => h *= 0.5,
        }
        if h < min_step {
            return Err(fail(Error::StepUnderflow { point: x }, vertices));
        }
    }
}

fn trace_with_partial(
    spec: &KnottedFieldSpec,
    seed: Vec3,
    t: f64,
    bounds: &Bounds,
    params: &TraceParams,
) -> Result<VortexCurve, MarchFailure> {
    let residual = spec.psi_value(&Event::at(t, seed)).norm();
    if !(residual < params.tol_seed) {
        return Err(fail(Error::SeedOffCurve { residual }, Vec::new()));
    }
    match march(spec, seed, t, bounds, params, 1.0)? {
        March::Closed(v) => Ok(VortexCurve::new(v, true)),
        March::Exited(forward) => match march(spec, seed, t, bounds, params, -1.0) {
            Ok(March::Exited(backward)) => {
                let mut v: Vec<Vec3> = backward.into_iter().skip(1).collect();
                v.reverse();
                v.extend(forward);
                Ok(VortexCurve::new(v, false))
            }
            Ok(March::Closed(backward)) => {
                let mut v = backward;
                v.reverse();
                Ok(VortexCurve::new(v, true))
            }
            Err(mut f) => {
                f.partial.extend(forward);
                Err(f)
            }
        },
    }
}

/// Traces the vortex line through `seed` (which must satisfy `|psi| < tol_seed`).
pub fn trace_curve(
    spec: &KnottedFieldSpec,
    seed: Vec3,
    t: f64,
    bounds: &Bounds,
    params: &TraceParams,
) -> Result<VortexCurve, Error> {
    trace_with_partial(spec, seed, t, bounds, params).map_err(|f| f.error)
}

/// Extraction problem attached to the seed cell it came from.
#[derive(Clone, Debug, PartialEq)]
pub struct Diagnostic {
    pub cell: [usize; 3],
    pub error: Error,
}

/// All vortex lines found in a box at one time.
#[derive(Clone, Debug, PartialEq)]
pub struct VortexSet {
    pub curves: Vec<VortexCurve>,
    pub time: f64,
    pub epsilon: f64,
    pub candidates: usize,
    pub diagnostics: Vec<Diagnostic>,
}

impl VortexSet {
    pub fn closed_count(&self) -> usize {
        self.curves.iter().filter(|c| c.closed).count()
    }

    pub fn open_count(&self) -> usize {
        self.curves.len() - self.closed_count()
    }
}

/// Bucketed vertex store for "is this point near an already traced curve".
struct ProximityIndex {
    cell: f64,
    buckets: BTreeMap<(i64, i64, i64), Vec<Vec3>>,
}

impl ProximityIndex {
    fn new(cell: f64) -> Self {
        Self { cell, buckets: BTreeMap::new() }
    }

    fn key(&self, p: Vec3) -> (i64, i64, i64) {
        let k = |v: f64| math::floor(v / self.cell) as i64;
        (k(p[0]), k(p[1]), k(p[2]))
    }

    fn insert_all(&mut self, points: &[Vec3]) {
        for &p in points {
            let key = self.key(p);
            self.buckets.entry(key).or_default().push(p);
        }
    }

    fn near(&self, p: Vec3, radius: f64) -> bool {
        let (i, j, k) = self.key(p);
        for di in -1..=1 {
            for dj in -1..=1 {
                for dk in -1..=1 {
                    if let Some(pts) = self.buckets.get(&(i + di, j + dj, k + dk)) {
                        if pts.iter().any(|q| linalg::dist(*q, p) < radius) {
                            return true;
                        }
                    }
                }
            }
        }
        false
    }
}

/// Scan, refine and trace every vortex line inside `grid.bounds` at time `t`.
/// Curves come out in the order of the seed cells that produced them.
pub fn extract_vortices(
    spec: &KnottedFieldSpec,
    grid: &GridSpec,
    t: f64,
    params: &TraceParams,
) -> Result<VortexSet, Error> {
    params.validate()?;
    let seeds = scan_cells(spec, grid, t);
    let radius = params.dedupe_radius();
    let mut index = ProximityIndex::new(radius);
    let mut curves = Vec::new();
    let mut diagnostics = Vec::new();
    let max_move = grid.cell_diagonal();
    for seed in &seeds {
        let near_traced = index.near(seed.center, radius + max_move);
        let refined = match refine_seed(spec, seed.center, t, params, max_move) {
            Ok(r) => r,
            Err(error) => {
                if !near_traced {
                    diagnostics.push(Diagnostic { cell: seed.cell, error });
                }
                continue;
            }
        };
        if !grid.bounds.contains(refined.point) || index.near(refined.point, radius) {
            continue;
        }
        match trace_with_partial(spec, refined.point, t, &grid.bounds, params) {
            Ok(curve) => {
                index.insert_all(&curve.vertices);
                curves.push(curve);
            }
            Err(f) => {
                index.insert_all(&f.partial);
                index.insert_all(&[refined.point]);
                diagnostics.push(Diagnostic { cell: seed.cell, error: f.error });
            }
        }
    }
    Ok(VortexSet { curves, time: t, epsilon: spec.epsilon(), candidates: seeds.len(), diagnostics })
}
