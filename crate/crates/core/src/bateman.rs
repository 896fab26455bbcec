//! Bateman variables of the electromagnetic Hopf field and the superpotential
//! chain they derive from.
//!
//! With `D = r^2 - (t - i)^2`,
//!
//! ```text
//! alpha = (r^2 - t^2 - 1 + 2iz) / D        beta = 2(x - iy) / D
//! ```
//!
//! satisfy `|alpha|^2 + |beta|^2 = 1` at every real event, and
//! `F_H = grad(alpha) x grad(beta)` is a null solution of the free Maxwell
//! equations with `E = Re F_H`, `B = Im F_H`. `D` never vanishes for real
//! events: its imaginary part is `2t` and its real part is `r^2 + 1` at `t = 0`.
//!
//! Sign conventions are not assumed; they are measured once at
//! [`REFERENCE_EVENT`] by [`BatemanSign::detect`], [`LorenzSignature::detect`]
//! and [`TildeConvention::detect`]. The measured values are
//! `sigma = +1`, divergence `dA_t/dt - div A`, and
//! `alpha = 1 + i*alpha~`, `beta = -i*beta~`.

use alloc::vec::Vec;

use num_complex::Complex64;

use crate::error::Error;
use crate::jet::{coordinate_jets, ComplexJet, Event, Scalar, DT, DX, DY, DZ};
use crate::linalg::{self, CVec3, Vec3};
use crate::math;

const I: Complex64 = Complex64::new(0.0, 1.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);

/// Generic, off-axis event used to freeze sign conventions.
pub const REFERENCE_EVENT: Event = Event::new(0.3, 0.7, -0.2, 0.5);

/// Default step for first-derivative finite-difference checks.
pub const FIRST_DERIVATIVE_STEP: f64 = 1e-5;
/// Default step for second-derivative finite-difference checks.
pub const SECOND_DERIVATIVE_STEP: f64 = 1e-3;

/// `D = r^2 - (t - i)^2`.
fn denominator<S: Scalar>(t: S, x: S, y: S, z: S) -> S {
    let r2 = x * x + y * y + z * z;
    let tm = t + (-I);
    r2 - tm * tm
}

/// `(alpha, beta)` for any scalar type (plain values or jets).
pub fn bateman_pair<S: Scalar>(t: S, x: S, y: S, z: S) -> (S, S) {
    let den = denominator(t, x, y, z);
    let r2 = x * x + y * y + z * z;
    let alpha_num = r2 - t * t + (-ONE) + z * Complex64::new(0.0, 2.0);
    let beta_num = (x - y * I) * Complex64::new(2.0, 0.0);
    (alpha_num / den, beta_num / den)
}

/// `alpha, beta` together with their partials.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct BatemanJets {
    pub alpha: ComplexJet,
    pub beta: ComplexJet,
}

impl BatemanJets {
    /// `(eps * alpha, eps * beta)`, which lands on the 3-sphere of radius `eps`.
    pub fn scaled(&self, epsilon: f64) -> Self {
        Self { alpha: self.alpha * epsilon, beta: self.beta * epsilon }
    }

    /// `grad(alpha) x grad(beta)`.
    pub fn field(&self) -> CVec3 {
        linalg::ccross(self.alpha.grad(), self.beta.grad())
    }

    pub fn sphere_radius_sqr(&self) -> f64 {
        self.alpha.value.norm_sqr() + self.beta.value.norm_sqr()
    }
}

pub fn eval_bateman(e: &Event) -> BatemanJets {
    let [t, x, y, z] = coordinate_jets(e);
    let (alpha, beta) = bateman_pair(t, x, y, z);
    BatemanJets { alpha, beta }
}

/// Values only, without partials.
pub fn bateman_values(e: &Event) -> (Complex64, Complex64) {
    let c = |v: f64| Complex64::new(v, 0.0);
    bateman_pair(c(e.t), c(e.x), c(e.y), c(e.z))
}

/// The Hopf field at one event.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct HopfSample {
    /// Riemann–Silberstein vector `E + iB`.
    pub f: CVec3,
    pub e: Vec3,
    pub b: Vec3,
    /// `|E|^2 + |B|^2`.
    pub energy_density: f64,
}

impl HopfSample {
    pub fn from_rs(f: CVec3) -> Self {
        Self { f, e: linalg::re(f), b: linalg::im(f), energy_density: linalg::cnorm_sqr(f) }
    }

    pub fn poynting(&self) -> Vec3 {
        linalg::cross(self.e, self.b)
    }
}

pub fn hopf_field(e: &Event) -> HopfSample {
    HopfSample::from_rs(eval_bateman(e).field())
}

/// Sign in `grad a x grad b = sigma * i * (a_t grad b - b_t grad a)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BatemanSign {
    Plus,
    Minus,
}

impl BatemanSign {
    pub fn sigma(self) -> f64 {
        match self {
            BatemanSign::Plus => 1.0,
            BatemanSign::Minus => -1.0,
        }
    }

    pub fn flipped(self) -> Self {
        match self {
            BatemanSign::Plus => BatemanSign::Minus,
            BatemanSign::Minus => BatemanSign::Plus,
        }
    }

    /// Picks the sign with the smaller residual at [`REFERENCE_EVENT`].
    pub fn detect() -> Self {
        let plus = bateman_condition_residual(&REFERENCE_EVENT, BatemanSign::Plus);
        let minus = bateman_condition_residual(&REFERENCE_EVENT, BatemanSign::Minus);
        if plus <= minus {
            BatemanSign::Plus
        } else {
            BatemanSign::Minus
        }
    }
}

/// `|grad a x grad b - sigma i (a_t grad b - b_t grad a)| / |grad a x grad b|`.
pub fn bateman_condition_residual(e: &Event, sign: BatemanSign) -> f64 {
    let j = eval_bateman(e);
    let lhs = j.field();
    let ga = j.alpha.grad();
    let gb = j.beta.grad();
    let s = I * sign.sigma();
    let mut diff = [Complex64::new(0.0, 0.0); 3];
    for k in 0..3 {
        let rhs = s * (j.alpha.dt() * gb[k] - j.beta.dt() * ga[k]);
        diff[k] = lhs[k] - rhs;
    }
    linalg::cnorm(diff) / linalg::cnorm(lhs).max(1e-300)
}

/// Smallest over largest singular value of the real 4x3 spatial Jacobian of
/// `(Re alpha, Im alpha, Re beta, Im beta)`. Rank three means this is > 0.
pub fn spatial_rank_ratio(e: &Event) -> f64 {
    let j = eval_bateman(e);
    let ga = j.alpha.grad();
    let gb = j.beta.grad();
    let rows: [Vec3; 4] = [
        [ga[0].re, ga[1].re, ga[2].re],
        [ga[0].im, ga[1].im, ga[2].im],
        [gb[0].re, gb[1].re, gb[2].re],
        [gb[0].im, gb[1].im, gb[2].im],
    ];
    let mut gram = [[0.0; 3]; 3];
    for row in &rows {
        for a in 0..3 {
            for b in 0..3 {
                gram[a][b] += row[a] * row[b];
            }
        }
    }
    let ev = linalg::symmetric_eigenvalues3(gram);
    math::sqrt(ev[0].max(0.0)) / math::sqrt(ev[2])
}

/// Superpotential `W = 1 / (r^2 - (t - i)^2)`, a smooth wave-equation solution.
pub fn superpotential(e: &Event) -> ComplexJet {
    let [t, x, y, z] = coordinate_jets(e);
    ComplexJet::real(1.0) / denominator(t, x, y, z)
}

pub fn superpotential_value(e: &Event) -> Complex64 {
    let c = |v: f64| Complex64::new(v, 0.0);
    ONE / denominator(c(e.t), c(e.x), c(e.y), c(e.z))
}

/// Second-order central-difference d'Alembertian `(d_tt - d_xx - d_yy - d_zz) f`
/// normalised by `|f|`.
pub fn dalembertian_residual<F>(f: F, e: &Event, step: f64) -> f64
where
    F: Fn(&Event) -> Complex64,
{
    let centre = f(e);
    let mut box_op = Complex64::new(0.0, 0.0);
    for (k, metric) in [(DT, 1.0), (DX, -1.0), (DY, -1.0), (DZ, -1.0)] {
        let second =
            (f(&e.shifted(k, step)) - centre * 2.0 + f(&e.shifted(k, -step))) / (step * step);
        box_op += second * metric;
    }
    box_op.norm() / centre.norm().max(1e-300)
}

pub fn wave_residual(e: &Event, step: f64) -> f64 {
    dalembertian_residual(superpotential_value, e, step)
}

/// Covector components of the potential `A = *(dW ^ K)` for the superpotential
/// above and the constant 2-form
/// `K = -dz^dx - i dy^dz - dx^dt + i dy^dt`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct HopfPotential {
    pub dx: Complex64,
    pub dy: Complex64,
    pub dz: Complex64,
    pub dt: Complex64,
}

impl HopfPotential {
    /// Components ordered `(t, x, y, z)` to match jet ordering.
    pub fn as_array(&self) -> [Complex64; 4] {
        [self.dt, self.dx, self.dy, self.dz]
    }
}

pub fn hopf_potential(e: &Event) -> HopfPotential {
    let c = |v: f64| Complex64::new(v, 0.0);
    let den = denominator(c(e.t), c(e.x), c(e.y), c(e.z));
    let den2 = den * den;
    let y_ix = Complex64::new(e.y, e.x);
    HopfPotential {
        dx: (I * (-2.0 * e.t) + I * (2.0 * e.z) - 2.0) / den2,
        dy: (c(-2.0 * e.t + 2.0 * e.z) + I * 2.0) / den2,
        dz: y_ix * (-2.0) / den2,
        dt: y_ix * 2.0 / den2,
    }
}

/// Metric sign used in the four-divergence of a covector potential:
/// `div4 A = dA_t/dt + s * (dA_x/dx + dA_y/dy + dA_z/dz)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LorenzSignature {
    /// `s = -1`, i.e. `eta = diag(+1, -1, -1, -1)` acting on covector components.
    MostlyMinus,
    /// `s = +1`.
    Euclidean,
}

impl LorenzSignature {
    pub fn spatial_sign(self) -> f64 {
        match self {
            LorenzSignature::MostlyMinus => -1.0,
            LorenzSignature::Euclidean => 1.0,
        }
    }

    pub fn detect() -> Self {
        let a = four_divergence(
            |e| hopf_potential(e).as_array(),
            &REFERENCE_EVENT,
            SECOND_DERIVATIVE_STEP,
            LorenzSignature::MostlyMinus,
        );
        let b = four_divergence(
            |e| hopf_potential(e).as_array(),
            &REFERENCE_EVENT,
            SECOND_DERIVATIVE_STEP,
            LorenzSignature::Euclidean,
        );
        if a <= b {
            LorenzSignature::MostlyMinus
        } else {
            LorenzSignature::Euclidean
        }
    }
}

/// Central-difference four-divergence of a potential with components
/// ordered `(t, x, y, z)`, normalised by the local magnitude of the potential.
pub fn four_divergence<F>(potential: F, e: &Event, step: f64, signature: LorenzSignature) -> f64
where
    F: Fn(&Event) -> [Complex64; 4],
{
    let s = signature.spatial_sign();
    let mut div = Complex64::new(0.0, 0.0);
    for k in 0..4 {
        let d = (potential(&e.shifted(k, step))[k] - potential(&e.shifted(k, -step))[k])
            / (2.0 * step);
        div += if k == DT { d } else { d * s };
    }
    let a = potential(e);
    let scale = math::sqrt(a.iter().map(|c| c.norm_sqr()).sum::<f64>());
    div.norm() / scale.max(1e-300)
}

/// Lorenz-gauge residual of the Hopf potential with the detected signature.
pub fn lorenz_residual(e: &Event, step: f64) -> f64 {
    four_divergence(|e| hopf_potential(e).as_array(), e, step, LorenzSignature::MostlyMinus)
}

/// Result of comparing `dA` with `grad(alpha) x grad(beta)`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PotentialFit {
    /// `curl A = lambda * F_H` (spatial part of `dA`).
    pub lambda: Complex64,
    /// Ratio of the fitted electric part `grad A_t - d_t A` to the magnetic
    /// part; `+i` or `-i` for a (anti-)self-dual form.
    pub duality: Complex64,
    /// Maximum relative deviation over all events of both parts.
    pub max_deviation: f64,
}

pub const POTENTIAL_FIT_THRESHOLD: f64 = 1e-3;

/// Magnetic part `curl A` and electric part `grad A_t - d_t A` of `dA`.
fn potential_curl_parts<F>(potential: &F, e: &Event, step: f64) -> (CVec3, CVec3)
where
    F: Fn(&Event) -> [Complex64; 4],
{
    // d[k][m]: derivative along coordinate k of component m.
    let mut d = [[Complex64::new(0.0, 0.0); 4]; 4];
    for k in 0..4 {
        let p = potential(&e.shifted(k, step));
        let m = potential(&e.shifted(k, -step));
        for c in 0..4 {
            d[k][c] = (p[c] - m[c]) / (2.0 * step);
        }
    }
    let magnetic = [
        d[DY][DZ] - d[DZ][DY],
        d[DZ][DX] - d[DX][DZ],
        d[DX][DY] - d[DY][DX],
    ];
    let electric = [
        d[DX][DT] - d[DT][DX],
        d[DY][DT] - d[DT][DY],
        d[DZ][DT] - d[DT][DZ],
    ];
    (magnetic, electric)
}

/// Fits `dA = lambda * (grad alpha x grad beta)` for an arbitrary potential.
pub fn potential_field_factor_with<F>(
    potential: F,
    events: &[Event],
    step: f64,
) -> Result<PotentialFit, Error>
where
    F: Fn(&Event) -> [Complex64; 4],
{
    if events.len() < 2 {
        return Err(Error::InvalidArgument("need at least two events".into()));
    }
    if !(step > 0.0) {
        return Err(Error::InvalidArgument("step must be > 0".into()));
    }
    let samples: Vec<(CVec3, CVec3, CVec3)> = events
        .iter()
        .map(|e| {
            let (m, n) = potential_curl_parts(&potential, e, step);
            (eval_bateman(e).field(), m, n)
        })
        .collect();
    let fit = |pick: &dyn Fn(&(CVec3, CVec3, CVec3)) -> CVec3| -> Complex64 {
        let mut num = Complex64::new(0.0, 0.0);
        let mut den = 0.0;
        for s in &samples {
            let f = s.0;
            let g = pick(s);
            for k in 0..3 {
                num += f[k].conj() * g[k];
            }
            den += linalg::cnorm_sqr(f);
        }
        num / den
    };
    let lambda = fit(&|s| s.1);
    let lambda_e = fit(&|s| s.2);
    let mut max_deviation: f64 = 0.0;
    for (f, m, n) in &samples {
        let scale = (lambda.norm() * linalg::cnorm(*f)).max(1e-300);
        let dm = linalg::cnorm(linalg::csub(*m, linalg::cscale(*f, lambda))) / scale;
        let dn = linalg::cnorm(linalg::csub(*n, linalg::cscale(*f, lambda_e))) / scale;
        max_deviation = max_deviation.max(dm).max(dn);
    }
    if !(max_deviation < POTENTIAL_FIT_THRESHOLD) {
        return Err(Error::Inconsistent {
            deviation: max_deviation,
            threshold: POTENTIAL_FIT_THRESHOLD,
        });
    }
    Ok(PotentialFit { lambda, duality: lambda_e / lambda, max_deviation })
}

pub fn potential_field_factor(events: &[Event], step: f64) -> Result<PotentialFit, Error> {
    potential_field_factor_with(|e| hopf_potential(e).as_array(), events, step)
}

/// `alpha~ = (2i - 2t + 2z) / D`, `beta~ = 2(ix + y) / D`.
pub fn tilde_variables(e: &Event) -> (Complex64, Complex64) {
    let c = |v: f64| Complex64::new(v, 0.0);
    let den = denominator(c(e.t), c(e.x), c(e.y), c(e.z));
    let alpha = (I * 2.0 + c(-2.0 * e.t + 2.0 * e.z)) / den;
    let beta = Complex64::new(e.y, e.x) * 2.0 / den;
    (alpha, beta)
}

/// `alpha = 1 + a * i * alpha~`, `beta = b * i * beta~` with `a, b` in `{+1, -1}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct TildeConvention {
    pub alpha_sign: i8,
    pub beta_sign: i8,
}

impl TildeConvention {
    /// The convention measured by [`TildeConvention::detect`].
    pub const FROZEN: TildeConvention = TildeConvention { alpha_sign: 1, beta_sign: -1 };

    pub fn residual(self, e: &Event) -> f64 {
        let (alpha, beta) = bateman_values(e);
        let (at, bt) = tilde_variables(e);
        let a = ONE + I * at * f64::from(self.alpha_sign);
        let b = I * bt * f64::from(self.beta_sign);
        (alpha - a).norm().max((beta - b).norm())
    }

    /// Minimises the residual over the four sign choices at the reference event.
    pub fn detect() -> Self {
        let mut best = TildeConvention::FROZEN;
        let mut best_res = f64::INFINITY;
        for alpha_sign in [1i8, -1] {
            for beta_sign in [1i8, -1] {
                let c = TildeConvention { alpha_sign, beta_sign };
                let r = c.residual(&REFERENCE_EVENT);
                if r < best_res {
                    best_res = r;
                    best = c;
                }
            }
        }
        best
    }
}

pub fn tilde_conversion_check(e: &Event) -> f64 {
    TildeConvention::FROZEN.residual(e)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn origin_values() {
        let j = eval_bateman(&Event::ORIGIN);
        assert!((j.alpha.value - c(-1.0, 0.0)).norm() < 1e-15);
        assert!(j.beta.value.norm() < 1e-15);
    }

    #[test]
    fn values_at_t1_x1() {
        // D = 1 - (1 - i)^2 = 1 + 2i; alpha = -1/D, beta = 2/D.
        let (a, b) = bateman_values(&Event::new(1.0, 1.0, 0.0, 0.0));
        assert!((a - c(-0.2, 0.4)).norm() < 1e-15);
        assert!((b - c(0.4, -0.8)).norm() < 1e-15);
    }

    #[test]
    fn hopf_field_at_origin() {
        // Oracle: central differences of the closed forms at the origin.
        let h = 1e-6;
        let mut ga = [c(0.0, 0.0); 3];
        let mut gb = [c(0.0, 0.0); 3];
        for k in 0..3 {
            let p = bateman_values(&Event::ORIGIN.shifted(k + 1, h));
            let m = bateman_values(&Event::ORIGIN.shifted(k + 1, -h));
            ga[k] = (p.0 - m.0) / (2.0 * h);
            gb[k] = (p.1 - m.1) / (2.0 * h);
        }
        let fd = linalg::ccross(ga, gb);
        // Frozen from the oracle: F(0) = (-4, 4i, 0).
        assert!((fd[0] - c(-4.0, 0.0)).norm() < 1e-6);
        assert!((fd[1] - c(0.0, 4.0)).norm() < 1e-6);
        assert!(fd[2].norm() < 1e-6);
        let s = hopf_field(&Event::ORIGIN);
        assert!((s.e[0] + 4.0).abs() < 1e-12 && s.e[1].abs() < 1e-12 && s.e[2].abs() < 1e-12);
        assert!(s.b[0].abs() < 1e-12 && (s.b[1] - 4.0).abs() < 1e-12 && s.b[2].abs() < 1e-12);
        assert!((s.energy_density - 32.0).abs() < 1e-12);
    }

    #[test]
    fn sign_conventions_are_detected() {
        assert_eq!(BatemanSign::detect(), BatemanSign::Plus);
        assert_eq!(LorenzSignature::detect(), LorenzSignature::MostlyMinus);
        assert_eq!(TildeConvention::detect(), TildeConvention::FROZEN);
    }

    #[test]
    fn bateman_condition_and_negative_control() {
        assert!(bateman_condition_residual(&Event::ORIGIN, BatemanSign::Plus) < 1e-10);
        let wrong = bateman_condition_residual(&REFERENCE_EVENT, BatemanSign::Minus);
        assert!(wrong > 0.5, "wrong sign residual {wrong}");
    }

    #[test]
    fn superpotential_values() {
        let w = superpotential(&Event::ORIGIN);
        assert!((w.value - c(1.0, 0.0)).norm() < 1e-15);
        let w = superpotential(&Event::new(1.0, 1.0, 0.0, 0.0));
        assert!((w.value - c(0.2, -0.4)).norm() < 1e-15);
        assert!((superpotential_value(&Event::new(1.0, 1.0, 0.0, 0.0)) - c(0.2, -0.4)).norm() < 1e-15);
    }

    #[test]
    fn wave_equation_residual() {
        let r1 = wave_residual(&Event::ORIGIN, 1e-3);
        assert!(r1 < 1e-5, "{r1}");
        let e = Event::new(0.4, 0.3, -0.8, 0.6);
        let a = wave_residual(&e, 1e-3);
        let b = wave_residual(&e, 5e-4);
        let ratio = a / b;
        assert!((3.0..5.0).contains(&ratio), "ratio {ratio}");
        let squared = dalembertian_residual(
            |e| {
                let w = superpotential_value(e);
                w * w
            },
            &e,
            1e-3,
        );
        assert!(squared > 0.1, "W^2 control {squared}");
    }

    #[test]
    fn hopf_potential_at_origin() {
        let a = hopf_potential(&Event::ORIGIN);
        assert!((a.dx - c(-2.0, 0.0)).norm() < 1e-15);
        assert!((a.dy - c(0.0, 2.0)).norm() < 1e-15);
        assert_eq!(a.dz, c(0.0, 0.0));
        assert_eq!(a.dt, c(0.0, 0.0));
    }

    #[test]
    fn lorenz_gauge_and_control() {
        let e = Event::new(-0.7, 0.2, 0.9, -0.4);
        let r = lorenz_residual(&e, 1e-3);
        assert!(r < 1e-4, "{r}");
        let perturbed = four_divergence(
            |ev| {
                let mut a = hopf_potential(ev).as_array();
                a[DX] += c(ev.x, 0.0);
                a
            },
            &e,
            1e-3,
            LorenzSignature::MostlyMinus,
        );
        assert!(perturbed > 0.1, "control {perturbed}");
    }

    #[test]
    fn potential_is_proportional_to_hopf_field() {
        let events = [
            REFERENCE_EVENT,
            Event::new(-1.1, 0.2, 0.9, -0.4),
            Event::new(0.0, 1.5, -0.5, 0.25),
            Event::new(2.0, -0.3, 0.1, 1.2),
        ];
        let fit = potential_field_factor(&events, 1e-3).unwrap();
        assert!(fit.max_deviation < 1e-3);
        assert!((fit.lambda - c(1.0, 0.0)).norm() < 1e-4, "lambda {}", fit.lambda);
        assert!((fit.duality - c(0.0, 1.0)).norm() < 1e-4, "duality {}", fit.duality);
        let fit2 = potential_field_factor(&events, 5e-4).unwrap();
        assert!((fit.lambda - fit2.lambda).norm() < 1e-5);
    }

    #[test]
    fn unrelated_potential_is_rejected() {
        let events = [REFERENCE_EVENT, Event::new(-1.1, 0.2, 0.9, -0.4), Event::new(0.5, 1.0, 1.0, 1.0)];
        let err = potential_field_factor_with(
            |e| [c(0.0, 0.0), c(e.y * e.z, 0.0), c(e.x * e.x, 0.0), c(0.0, e.t * e.y)],
            &events,
            1e-3,
        )
        .unwrap_err();
        assert!(matches!(err, Error::Inconsistent { .. }));
    }

    #[test]
    fn tilde_conversion() {
        assert!(tilde_conversion_check(&Event::ORIGIN) < 1e-12);
        let wrong = TildeConvention { alpha_sign: -1, beta_sign: -1 }.residual(&REFERENCE_EVENT);
        assert!(wrong > 0.1);
        let wrong = TildeConvention { alpha_sign: 1, beta_sign: 1 }.residual(&REFERENCE_EVENT);
        assert!(wrong > 0.1);
    }

    #[test]
    fn scaled_sphere_radius() {
        let j = eval_bateman(&REFERENCE_EVENT).scaled(0.5);
        assert!((j.sphere_radius_sqr() - 0.25).abs() < 1e-14);
    }
}
