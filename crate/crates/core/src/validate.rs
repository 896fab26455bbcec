//! Global checks: Maxwell residuals by finite differences, total energy with a
//! measured far-field tail, helicity integrals and epsilon scans.

use alloc::vec::Vec;
use core::f64::consts::PI;

use num_complex::Complex64;

use crate::error::Error;
use crate::field::KnottedFieldSpec;
use crate::jet::{Event, DT, DX, DY, DZ};
use crate::linalg::{self, CVec3, Vec3};
use crate::linkpoly::BivariatePolynomial;
use crate::math;
use crate::topology::{topology_report, TopologyReport, TopologySignature};
use crate::vortex::{extract_vortices, GridSpec, TraceParams};

/// Maxima over the sampled events of the four Maxwell residuals, each
/// normalised by the local size of the first derivatives of `F`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ResidualReport {
    pub div_e: f64,
    pub div_b: f64,
    /// `|dB/dt + curl E|`.
    pub faraday: f64,
    /// `|dE/dt - curl B|`.
    pub ampere: f64,
    pub step: f64,
}

impl ResidualReport {
    pub fn max(&self) -> f64 {
        self.div_e.max(self.div_b).max(self.faraday).max(self.ampere)
    }

    pub fn as_array(&self) -> [f64; 4] {
        [self.div_e, self.div_b, self.faraday, self.ampere]
    }
}

fn pointwise_residuals(spec: &KnottedFieldSpec, e: &Event, step: f64) -> [f64; 4] {
    // d[k][c] = dF_c / dx_k
    let mut d = [[Complex64::new(0.0, 0.0); 3]; 4];
    for k in 0..4 {
        let p = spec.rs_vector(&e.shifted(k, step));
        let m = spec.rs_vector(&e.shifted(k, -step));
        for c in 0..3 {
            d[k][c] = (p[c] - m[c]) / (2.0 * step);
        }
    }
    let scale = math::sqrt(d.iter().flatten().map(|z| z.norm_sqr()).sum::<f64>()).max(1e-300);
    let (x, y, z) = (0, 1, 2);
    let div: Complex64 = d[DX][x] + d[DY][y] + d[DZ][z];
    let curl: CVec3 = [
        d[DY][z] - d[DZ][y],
        d[DZ][x] - d[DX][z],
        d[DX][y] - d[DY][x],
    ];
    let dt: CVec3 = d[DT];
    let mut faraday: Vec3 = [0.0; 3];
    let mut ampere: Vec3 = [0.0; 3];
    for c in 0..3 {
        faraday[c] = dt[c].im + curl[c].re;
        ampere[c] = dt[c].re - curl[c].im;
    }
    [
        div.re.abs() / scale,
        div.im.abs() / scale,
        linalg::norm(faraday) / scale,
        linalg::norm(ampere) / scale,
    ]
}

/// Central-difference Maxwell residuals of `E = Re F`, `B = Im F`.
pub fn maxwell_residuals(
    spec: &KnottedFieldSpec,
    events: &[Event],
    step: f64,
) -> Result<ResidualReport, Error> {
    if !(step > 0.0) {
        return Err(Error::InvalidArgument("step must be > 0".into()));
    }
    let mut worst = [0.0f64; 4];
    for e in events {
        let r = pointwise_residuals(spec, e, step);
        for i in 0..4 {
            worst[i] = worst[i].max(r[i]);
        }
    }
    Ok(ResidualReport { div_e: worst[0], div_b: worst[1], faraday: worst[2], ampere: worst[3], step })
}

/// Midpoint-rule integral plus far-field bookkeeping.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct QuadratureResult {
    pub value: f64,
    /// Radius of the largest origin-centred ball inside the box.
    pub box_radius: f64,
    pub resolution: [usize; 3],
    /// Estimated integral of `u` outside `box_radius` from the fitted decay.
    pub tail_estimate: f64,
    /// Fitted `n` in `max_shell u ~ C r^-n`.
    pub decay_exponent: f64,
    pub tail_trusted: bool,
}

/// Midpoint-rule integrals of `K` integrands at once; `resolution` counts
/// cells per axis. Slabs are reduced in a fixed pairwise order, so the result
/// does not depend on whether slabs were evaluated in parallel.
fn midpoint_integrals<const K: usize, F>(grid: &GridSpec, f: F) -> [f64; K]
where
    F: Fn(Vec3) -> [f64; K] + Sync,
{
    let [nx, ny, nz] = grid.resolution;
    let h: Vec3 = core::array::from_fn(|a| grid.bounds.extent(a) / grid.resolution[a] as f64);
    let volume = h[0] * h[1] * h[2];
    let slab = |k: usize| -> [f64; K] {
        let z = grid.bounds.min[2] + (k as f64 + 0.5) * h[2];
        let mut rows: [Vec<f64>; K] = core::array::from_fn(|_| Vec::with_capacity(nx * ny));
        for j in 0..ny {
            let y = grid.bounds.min[1] + (j as f64 + 0.5) * h[1];
            for i in 0..nx {
                let x = grid.bounds.min[0] + (i as f64 + 0.5) * h[0];
                let v = f([x, y, z]);
                for c in 0..K {
                    rows[c].push(v[c]);
                }
            }
        }
        core::array::from_fn(|c| linalg::pairwise_sum(&rows[c]))
    };
    #[cfg(feature = "parallel")]
    let slabs: Vec<[f64; K]> = {
        use rayon::prelude::*;
        (0..nz).into_par_iter().map(slab).collect()
    };
    #[cfg(not(feature = "parallel"))]
    let slabs: Vec<[f64; K]> = (0..nz).map(slab).collect();
    core::array::from_fn(|c| {
        let column: Vec<f64> = slabs.iter().map(|s| s[c]).collect();
        linalg::pairwise_sum(&column) * volume
    })
}

fn inscribed_radius(grid: &GridSpec) -> f64 {
    (0..3)
        .map(|a| grid.bounds.min[a].abs().min(grid.bounds.max[a].abs()))
        .fold(f64::INFINITY, f64::min)
}

/// Quasi-uniform directions on the unit sphere (Fibonacci lattice).
fn sphere_directions(n: usize) -> Vec<Vec3> {
    let golden = PI * (3.0 - math::sqrt(5.0));
    (0..n)
        .map(|i| {
            let z = 1.0 - 2.0 * (i as f64 + 0.5) / n as f64;
            let rho = math::sqrt(1.0 - z * z);
            let phi = golden * i as f64;
            [rho * math::cos(phi), rho * math::sin(phi), z]
        })
        .collect()
}

/// Power-law fit of the maxima of `u` over spheres of radius `R/2 .. R`.
/// Returns `(exponent n, u_max(R), max log-deviation from the fit)`.
pub fn fit_shell_decay<F>(u: F, radius: f64) -> (f64, f64, f64)
where
    F: Fn(Vec3) -> f64,
{
    const SHELLS: usize = 6;
    let dirs = sphere_directions(256);
    let mut xs = [0.0; SHELLS];
    let mut ys = [0.0; SHELLS];
    let mut outer = 0.0;
    for s in 0..SHELLS {
        let r = radius * (0.5 + 0.5 * s as f64 / (SHELLS - 1) as f64);
        let m = dirs.iter().map(|d| u(linalg::scale(*d, r))).fold(0.0, f64::max);
        xs[s] = math::ln(r);
        ys[s] = math::ln(m.max(1e-300));
        outer = m;
    }
    let mx = xs.iter().sum::<f64>() / SHELLS as f64;
    let my = ys.iter().sum::<f64>() / SHELLS as f64;
    let sxy: f64 = xs.iter().zip(&ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let sxx: f64 = xs.iter().map(|x| (x - mx) * (x - mx)).sum();
    let slope = sxy / sxx;
    let misfit = xs
        .iter()
        .zip(&ys)
        .map(|(x, y)| (y - (my + slope * (x - mx))).abs())
        .fold(0.0, f64::max);
    (-slope, outer, misfit)
}

/// Exponents at or below this make the exterior integral meaningless.
pub const MIN_TRUSTED_EXPONENT: f64 = 3.5;
/// Largest log-space misfit of the shell fit that still counts as a power law.
pub const MAX_DECAY_MISFIT: f64 = 0.5;

/// Total energy `integral (|E|^2 + |B|^2)` by the midpoint rule; the grid's
/// `resolution` counts cells per axis.
pub fn total_energy(spec: &KnottedFieldSpec, grid: &GridSpec, t: f64) -> QuadratureResult {
    let [value] = midpoint_integrals(grid, |p| [spec.sample(&Event::at(t, p)).u]);
    let radius = inscribed_radius(grid);
    let (exponent, u_outer, misfit) = fit_shell_decay(|p| spec.sample(&Event::at(t, p)).u, radius);
    let tail_trusted = exponent > MIN_TRUSTED_EXPONENT && misfit < MAX_DECAY_MISFIT && radius > 0.0;
    let tail_estimate = if exponent > 3.0 {
        4.0 * PI * u_outer * radius * radius * radius / (exponent - 3.0)
    } else {
        f64::INFINITY
    };
    QuadratureResult {
        value,
        box_radius: radius,
        resolution: grid.resolution,
        tail_estimate,
        decay_exponent: exponent,
        tail_trusted,
    }
}

/// Magnetic `integral A.B` and electric `integral C.E` helicities.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Helicity {
    pub magnetic: f64,
    pub electric: f64,
    pub resolution: [usize; 3],
}

/// Midpoint-rule helicities; `resolution` counts cells per axis.
pub fn helicity(spec: &KnottedFieldSpec, grid: &GridSpec, t: f64) -> Helicity {
    let [magnetic, electric] = midpoint_integrals(grid, |p| {
        let (hm, he) = spec.helicity_densities(&Event::at(t, p));
        [hm, he]
    });
    Helicity { magnetic, electric, resolution: grid.resolution }
}

/// One row of an epsilon scan.
#[derive(Clone, Debug, PartialEq)]
pub struct ScanRow {
    pub epsilon: f64,
    pub report: TopologyReport,
    pub curves: usize,
    pub diagnostics: usize,
}

#[derive(Clone, Debug, PartialEq)]
pub struct EpsilonScan {
    pub rows: Vec<ScanRow>,
    /// Largest epsilon from which all smaller scanned values share one
    /// certified topology (at least two consecutive rows).
    pub stable_from: Option<f64>,
}

impl EpsilonScan {
    pub fn signature_at(&self, epsilon: f64) -> Option<TopologySignature> {
        self.rows.iter().find(|r| r.epsilon == epsilon).map(|r| r.report.signature())
    }
}

/// Extraction plus topology for each epsilon (strictly descending).
pub fn epsilon_scan(
    h: &BivariatePolynomial,
    epsilons: &[f64],
    grid: &GridSpec,
    t: f64,
    params: &TraceParams,
) -> Result<EpsilonScan, Error> {
    if epsilons.is_empty() {
        return Err(Error::InvalidArgument("epsilon list is empty".into()));
    }
    if epsilons.windows(2).any(|w| !(w[0] > w[1])) {
        return Err(Error::InvalidArgument("epsilons must be strictly descending".into()));
    }
    let mut rows = Vec::with_capacity(epsilons.len());
    for &eps in epsilons {
        let spec = KnottedFieldSpec::new(h.clone(), eps)?;
        let set = extract_vortices(&spec, grid, t, params)?;
        let report = topology_report(&spec, &set);
        rows.push(ScanRow {
            epsilon: eps,
            curves: set.curves.len(),
            diagnostics: set.diagnostics.len(),
            report,
        });
    }
    let mut stable_from = None;
    let last = rows.len() - 1;
    if rows[last].report.is_certified() {
        let sig = rows[last].report.signature();
        let mut k = last;
        while k > 0 && rows[k - 1].report.is_certified() && rows[k - 1].report.signature() == sig {
            k -= 1;
        }
        if k < last {
            stable_from = Some(rows[k].epsilon);
        }
    }
    Ok(EpsilonScan { rows, stable_from })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linkpoly::preset;

    #[test]
    fn hopf_field_satisfies_maxwell() {
        let hopf = KnottedFieldSpec::hopf(1.0).unwrap();
        let events = [Event::new(0.3, 0.7, -0.2, 0.5), Event::new(-1.2, 0.1, 1.1, -0.6)];
        let a = maxwell_residuals(&hopf, &events, 1e-3).unwrap();
        assert!(a.max() < 1e-4, "{a:?}");
        let b = maxwell_residuals(&hopf, &events, 5e-4).unwrap();
        let ratio = a.max() / b.max();
        assert!((3.0..5.0).contains(&ratio), "ratio {ratio}");
    }

    #[test]
    fn conjugated_field_fails_maxwell() {
        // Negative control: B -> -B is not a solution.
        let hopf = KnottedFieldSpec::hopf(1.0).unwrap();
        let e = Event::new(0.3, 0.7, -0.2, 0.5);
        let step = 1e-3;
        let mut d = [[Complex64::new(0.0, 0.0); 3]; 4];
        for k in 0..4 {
            let p = hopf.rs_vector(&e.shifted(k, step)).map(|c| c.conj());
            let m = hopf.rs_vector(&e.shifted(k, -step)).map(|c| c.conj());
            for c in 0..3 {
                d[k][c] = (p[c] - m[c]) / (2.0 * step);
            }
        }
        let curl_e = d[DY][2].re - d[DZ][1].re;
        let dtb = d[DT][0].im;
        assert!((dtb + curl_e).abs() > 1e-2);
    }

    #[test]
    fn shell_fit_recovers_power_law() {
        let (n, _, misfit) = fit_shell_decay(|p| 3.0 / linalg::dot(p, p).powi(4), 10.0);
        assert!((n - 8.0).abs() < 1e-9 && misfit < 1e-9);
    }

    #[test]
    fn midpoint_integral_of_gaussian() {
        let grid = GridSpec::cube(6.0, 60).unwrap();
        let [v] = midpoint_integrals(&grid, |p| [(-linalg::dot(p, p)).exp()]);
        assert!((v - PI.powf(1.5)).abs() < 1e-9, "{v}");
    }

    #[test]
    fn scan_rejects_bad_lists() {
        let (h, _) = preset("hopf-link").unwrap();
        let g = GridSpec::cube(3.0, 9).unwrap();
        let p = TraceParams::default();
        assert!(epsilon_scan(&h, &[], &g, 0.0, &p).is_err());
        assert!(epsilon_scan(&h, &[0.5, 1.0], &g, 0.0, &p).is_err());
    }
}
