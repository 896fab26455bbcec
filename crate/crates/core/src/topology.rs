//! Numerical topology of vortex sets: component count, Gauss linking numbers
//! and phase windings of `alpha_e`, `beta_e` along each closed component.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::f64::consts::PI;

use crate::error::Error;
use crate::field::KnottedFieldSpec;
use crate::jet::Event;
use crate::linalg::{self, Vec3};
use crate::math;
use crate::vortex::{VortexCurve, VortexSet};

/// Reported integers must sit within this distance of their real value.
pub const ROUNDING_TOLERANCE: f64 = 0.05;

/// Curves closer than this are treated as intersecting.
pub const MIN_SEPARATION: f64 = 1e-6;

/// Largest admissible wrapped phase increment between consecutive vertices.
pub const MAX_PHASE_STEP: f64 = PI / 2.0;

fn unit(v: Vec3) -> Option<Vec3> {
    let n = linalg::norm(v);
    (n > 0.0 && n.is_finite()).then(|| linalg::scale(v, 1.0 / n))
}

fn clamped_asin(x: f64) -> f64 {
    math::asin(x.clamp(-1.0, 1.0))
}

/// Signed solid-angle contribution of segment pair `(p1 -> p2, p3 -> p4)` to the
/// linking number, already divided by `4 pi`.
fn segment_pair(p1: Vec3, p2: Vec3, p3: Vec3, p4: Vec3) -> f64 {
    let r13 = linalg::sub(p3, p1);
    let r14 = linalg::sub(p4, p1);
    let r23 = linalg::sub(p3, p2);
    let r24 = linalg::sub(p4, p2);
    let r12 = linalg::sub(p2, p1);
    let r34 = linalg::sub(p4, p3);
    let normals = [
        unit(linalg::cross(r13, r14)),
        unit(linalg::cross(r14, r24)),
        unit(linalg::cross(r24, r23)),
        unit(linalg::cross(r23, r13)),
    ];
    let [Some(n1), Some(n2), Some(n3), Some(n4)] = normals else {
        return 0.0;
    };
    let omega = clamped_asin(linalg::dot(n1, n2))
        + clamped_asin(linalg::dot(n2, n3))
        + clamped_asin(linalg::dot(n3, n4))
        + clamped_asin(linalg::dot(n4, n1));
    let orientation = linalg::dot(linalg::cross(r34, r12), r13);
    if orientation > 0.0 {
        omega / (4.0 * PI)
    } else if orientation < 0.0 {
        -omega / (4.0 * PI)
    } else {
        0.0
    }
}

fn min_vertex_distance(a: &VortexCurve, b: &VortexCurve) -> f64 {
    let mut best = f64::INFINITY;
    for p in &a.vertices {
        for q in &b.vertices {
            best = best.min(linalg::dist(*p, *q));
        }
    }
    best
}

/// Gauss linking number of two closed polylines, summed exactly segment by
/// segment from the solid angle each segment pair subtends.
pub fn linking_number(a: &VortexCurve, b: &VortexCurve) -> Result<f64, Error> {
    if !a.closed || !b.closed {
        return Err(Error::OpenCurve);
    }
    let distance = min_vertex_distance(a, b);
    if distance < MIN_SEPARATION {
        return Err(Error::NearIntersection { distance });
    }
    let mut rows = Vec::with_capacity(a.len());
    for (p1, p2) in a.segments() {
        let row: f64 = b.segments().map(|(p3, p4)| segment_pair(p1, p2, p3, p4)).sum();
        rows.push(row);
    }
    Ok(linalg::pairwise_sum(&rows))
}

/// Net turns of `arg alpha_e` and `arg beta_e` along a closed curve.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Windings {
    pub alpha: i64,
    pub beta: i64,
    pub alpha_raw: f64,
    pub beta_raw: f64,
}

impl Windings {
    pub fn from_raw(alpha_raw: f64, beta_raw: f64) -> Self {
        Self {
            alpha: math::round(alpha_raw) as i64,
            beta: math::round(beta_raw) as i64,
            alpha_raw,
            beta_raw,
        }
    }

    pub fn max_deviation(&self) -> f64 {
        (self.alpha_raw - self.alpha as f64).abs().max((self.beta_raw - self.beta as f64).abs())
    }

    /// Windings with the global orientation sign removed.
    pub fn canonical(&self) -> (i64, i64) {
        if self.alpha < 0 || (self.alpha == 0 && self.beta < 0) {
            (-self.alpha, -self.beta)
        } else {
            (self.alpha, self.beta)
        }
    }
}

fn wrap(d: f64) -> f64 {
    let mut x = d % (2.0 * PI);
    if x > PI {
        x -= 2.0 * PI;
    } else if x <= -PI {
        x += 2.0 * PI;
    }
    x
}

/// Accumulated unwrapped phase of `values` around a closed loop, in turns.
pub fn loop_winding(phases: &[f64]) -> Result<f64, Error> {
    let n = phases.len();
    let mut total = 0.0;
    for i in 0..n {
        let d = wrap(phases[(i + 1) % n] - phases[i]);
        if d.abs() > MAX_PHASE_STEP {
            return Err(Error::CurveTooCoarse { vertex: i, jump: d });
        }
        total += d;
    }
    Ok(total / (2.0 * PI))
}

pub fn phase_windings(spec: &KnottedFieldSpec, curve: &VortexCurve, t: f64) -> Result<Windings, Error> {
    if !curve.closed {
        return Err(Error::OpenCurve);
    }
    let mut pa = Vec::with_capacity(curve.len());
    let mut pb = Vec::with_capacity(curve.len());
    for (i, p) in curve.vertices.iter().enumerate() {
        let (a, b) = spec.scaled_bateman_values(&Event::at(t, *p));
        if a.norm() <= 1e-9 || b.norm() <= 1e-9 {
            return Err(Error::PhaseUndefined { vertex: i });
        }
        pa.push(math::atan2(a.im, a.re));
        pb.push(math::atan2(b.im, b.re));
    }
    Ok(Windings::from_raw(loop_winding(&pa)?, loop_winding(&pb)?))
}

/// Invariants of the closed components of a vortex set.
#[derive(Clone, Debug, PartialEq)]
pub struct TopologyReport {
    pub component_count: usize,
    pub open_count: usize,
    /// Indices into `VortexSet::curves` of the closed components, in order.
    pub closed_indices: Vec<usize>,
    /// Symmetric; diagonal is `None`, as are pairs that could not be computed.
    pub linking: Vec<Vec<Option<f64>>>,
    pub windings: Vec<Option<Windings>>,
    pub time: f64,
    pub epsilon: f64,
    pub warnings: Vec<String>,
}

/// Order-independent summary used to compare reports across runs and times.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TopologySignature {
    pub components: usize,
    pub open: usize,
    /// Rounded off-diagonal linking numbers, sorted.
    pub linking: Vec<i64>,
    /// Rounded windings, sorted.
    pub windings: Vec<(i64, i64)>,
}

impl TopologyReport {
    pub fn linking_rounded(&self) -> Vec<Vec<Option<i64>>> {
        self.linking
            .iter()
            .map(|row| row.iter().map(|v| v.map(|x| math::round(x) as i64)).collect())
            .collect()
    }

    /// Largest distance of any reported real from its rounded integer.
    pub fn max_rounding_deviation(&self) -> f64 {
        let mut worst: f64 = 0.0;
        for row in &self.linking {
            for v in row.iter().flatten() {
                worst = worst.max((v - math::round(*v)).abs());
            }
        }
        for w in self.windings.iter().flatten() {
            worst = worst.max(w.max_deviation());
        }
        worst
    }

    /// Every invariant computed and every integer within [`ROUNDING_TOLERANCE`].
    pub fn is_certified(&self) -> bool {
        let n = self.component_count;
        let links_ok = (0..n).all(|i| (0..n).all(|j| i == j || self.linking[i][j].is_some()));
        links_ok
            && self.windings.iter().all(Option::is_some)
            && self.max_rounding_deviation() < ROUNDING_TOLERANCE
    }

    pub fn signature(&self) -> TopologySignature {
        let rounded = self.linking_rounded();
        let mut linking = Vec::new();
        for i in 0..self.component_count {
            for j in i + 1..self.component_count {
                linking.push(rounded[i][j].unwrap_or(i64::MIN));
            }
        }
        linking.sort_unstable();
        let mut windings: Vec<(i64, i64)> = self
            .windings
            .iter()
            .map(|w| w.map(|w| (w.alpha, w.beta)).unwrap_or((i64::MIN, i64::MIN)))
            .collect();
        windings.sort_unstable();
        TopologySignature { components: self.component_count, open: self.open_count, linking, windings }
    }
}

pub fn topology_report(spec: &KnottedFieldSpec, set: &VortexSet) -> TopologyReport {
    let closed_indices: Vec<usize> =
        set.curves.iter().enumerate().filter(|(_, c)| c.closed).map(|(i, _)| i).collect();
    let n = closed_indices.len();
    let mut warnings = Vec::new();
    if set.open_count() > 0 {
        warnings.push(format!(
            "{} open curve(s) leave the box; excluded from invariants",
            set.open_count()
        ));
    }
    let mut linking = alloc::vec![alloc::vec![None; n]; n];
    for i in 0..n {
        for j in i + 1..n {
            let a = &set.curves[closed_indices[i]];
            let b = &set.curves[closed_indices[j]];
            match linking_number(a, b) {
                Ok(v) => {
                    linking[i][j] = Some(v);
                    linking[j][i] = Some(v);
                }
                Err(e) => warnings.push(format!("linking({i}, {j}): {e}")),
            }
        }
    }
    let windings = closed_indices
        .iter()
        .enumerate()
        .map(|(k, &idx)| match phase_windings(spec, &set.curves[idx], set.time) {
            Ok(w) => Some(w),
            Err(e) => {
                warnings.push(format!("windings({k}): {e}"));
                None
            }
        })
        .collect();
    let report = TopologyReport {
        component_count: n,
        open_count: set.open_count(),
        closed_indices,
        linking,
        windings,
        time: set.time,
        epsilon: set.epsilon,
        warnings,
    };
    let dev = report.max_rounding_deviation();
    let mut report = report;
    if dev >= ROUNDING_TOLERANCE {
        report.warnings.push(format!("integer rounding deviation {dev} exceeds {ROUNDING_TOLERANCE}"));
    }
    report
}
