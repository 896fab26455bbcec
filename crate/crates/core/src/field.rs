//! The knotted null field
//!
//! ```text
//! F_L = h(alpha_e, beta_e) grad(alpha_e) x grad(beta_e),   alpha_e = eps*alpha, beta_e = eps*beta
//! ```
//!
//! and the observables derived from it. The vortex scalar is
//! `psi = h(alpha_e, beta_e)`; because the Hopf field never vanishes, the zero
//! set of `psi` is exactly the set where `F_L = 0`.

use num_complex::Complex64;

use crate::bateman::{eval_bateman, bateman_values, BatemanJets};
use crate::error::Error;
use crate::jet::{ComplexJet, Event};
use crate::linalg::{self, CVec3, Vec3};
use crate::linkpoly::BivariatePolynomial;

/// Floor for relative-residual denominators so vortex points stay defined.
pub const ZERO_GUARD: f64 = 1e-300;

/// `h` and `eps` together with the cached `f = integral h dv`.
#[derive(Clone, Debug, PartialEq)]
pub struct KnottedFieldSpec {
    h: BivariatePolynomial,
    f: BivariatePolynomial,
    epsilon: f64,
}

fn check_epsilon(epsilon: f64) -> Result<(), Error> {
    if epsilon.is_finite() && epsilon > 0.0 {
        Ok(())
    } else {
        Err(Error::InvalidEpsilon(epsilon))
    }
}

impl KnottedFieldSpec {
    pub fn new(h: BivariatePolynomial, epsilon: f64) -> Result<Self, Error> {
        h.validate_link()?;
        check_epsilon(epsilon)?;
        let f = h.antiderivative_v();
        Ok(Self { h, f, epsilon })
    }

    /// The scaled Hopf field itself: `h = 1`, `f = v`. Has no vortices.
    pub fn hopf(epsilon: f64) -> Result<Self, Error> {
        check_epsilon(epsilon)?;
        let h = BivariatePolynomial::from_terms([((0, 0), Complex64::new(1.0, 0.0))]);
        let f = h.antiderivative_v();
        Ok(Self { h, f, epsilon })
    }

    /// Skips the link-polynomial checks (used to evaluate deliberately
    /// invalid inputs during verification).
    pub fn new_unchecked(h: BivariatePolynomial, epsilon: f64) -> Result<Self, Error> {
        check_epsilon(epsilon)?;
        let f = h.antiderivative_v();
        Ok(Self { h, f, epsilon })
    }

    pub fn polynomial(&self) -> &BivariatePolynomial {
        &self.h
    }

    pub fn antiderivative(&self) -> &BivariatePolynomial {
        &self.f
    }

    pub fn epsilon(&self) -> f64 {
        self.epsilon
    }

    pub fn with_epsilon(&self, epsilon: f64) -> Result<Self, Error> {
        check_epsilon(epsilon)?;
        Ok(Self { epsilon, ..self.clone() })
    }

    /// `(alpha_e, beta_e)` with partials.
    pub fn scaled_bateman(&self, e: &Event) -> BatemanJets {
        eval_bateman(e).scaled(self.epsilon)
    }

    pub fn scaled_bateman_values(&self, e: &Event) -> (Complex64, Complex64) {
        let (a, b) = bateman_values(e);
        (a * self.epsilon, b * self.epsilon)
    }

    /// `psi = h(alpha_e, beta_e)` with its partials.
    pub fn psi(&self, e: &Event) -> ComplexJet {
        let j = self.scaled_bateman(e);
        self.h.eval(j.alpha, j.beta)
    }

    pub fn psi_value(&self, e: &Event) -> Complex64 {
        let (a, b) = self.scaled_bateman_values(e);
        self.h.eval(a, b)
    }

    pub fn sample(&self, e: &Event) -> FieldSample {
        let j = self.scaled_bateman(e);
        let psi = self.h.eval(j.alpha, j.beta);
        let hopf = j.field();
        let f = linalg::cscale(hopf, psi.value);
        let ev = linalg::re(f);
        let bv = linalg::im(f);
        FieldSample {
            f,
            e: ev,
            b: bv,
            s: linalg::cross(ev, bv),
            u: linalg::dot(ev, ev) + linalg::dot(bv, bv),
            psi: psi.value,
            grad_psi: psi.grad(),
            hopf,
        }
    }

    /// Riemann–Silberstein vector only.
    pub fn rs_vector(&self, e: &Event) -> CVec3 {
        self.sample(e).f
    }

    /// `F_L` through the Bateman route `grad f(alpha_e, beta_e) x grad beta_e`
    /// instead of the factored form used by [`sample`](Self::sample).
    pub fn bateman_route_field(&self, e: &Event) -> CVec3 {
        let j = self.scaled_bateman(e);
        let f = self.f.eval(j.alpha, j.beta);
        linalg::ccross(f.grad(), j.beta.grad())
    }

    /// `V = f(alpha_e, beta_e) grad(beta_e)`; `C = Re V`, `A = Im V`.
    pub fn vector_potential(&self, e: &Event) -> VectorPotential {
        let j = self.scaled_bateman(e);
        let f = self.f.eval(j.alpha.value, j.beta.value);
        let v = linalg::cscale(j.beta.grad(), f);
        VectorPotential { v, c: linalg::re(v), a: linalg::im(v) }
    }

    /// Pointwise magnetic `A . B` and electric `C . E` helicity densities.
    pub fn helicity_densities(&self, e: &Event) -> (f64, f64) {
        let s = self.sample(e);
        let p = self.vector_potential(e);
        (linalg::dot(p.a, s.b), linalg::dot(p.c, s.e))
    }

    /// `|u_L - |psi|^2 u_H| / max(|psi|^2 u_H, floor)` with `u_H` the energy
    /// density of the scaled Hopf field.
    pub fn energy_ratio(&self, e: &Event) -> f64 {
        let s = self.sample(e);
        let u_h = linalg::cnorm_sqr(s.hopf);
        let expected = s.psi.norm_sqr() * u_h;
        (s.u - expected).abs() / expected.max(ZERO_GUARD)
    }

    /// `|S_L - |psi|^2 S_H| / (|S_H| |psi|^2)`.
    pub fn poynting_alignment(&self, e: &Event) -> f64 {
        let s = self.sample(e);
        let s_h = linalg::cross(linalg::re(s.hopf), linalg::im(s.hopf));
        let w = s.psi.norm_sqr();
        let diff = linalg::sub(s.s, linalg::scale(s_h, w));
        linalg::norm(diff) / (linalg::norm(s_h) * w).max(ZERO_GUARD)
    }
}

/// Observables of `F_L` at one event.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct FieldSample {
    /// `E + iB`.
    pub f: CVec3,
    pub e: Vec3,
    pub b: Vec3,
    /// Poynting vector `E x B`.
    pub s: Vec3,
    /// `|E|^2 + |B|^2`.
    pub u: f64,
    pub psi: Complex64,
    pub grad_psi: CVec3,
    /// `grad(alpha_e) x grad(beta_e)`, the scaled Hopf field.
    pub hopf: CVec3,
}

impl FieldSample {
    /// `|F.F| / (F . conj F)`; zero for a null field.
    pub fn nullness(&self) -> f64 {
        linalg::cdot(self.f, self.f).norm() / linalg::cnorm_sqr(self.f).max(ZERO_GUARD)
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct VectorPotential {
    pub v: CVec3,
    pub c: Vec3,
    pub a: Vec3,
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linkpoly::preset;

    fn spec(name: &str, eps: f64) -> KnottedFieldSpec {
        KnottedFieldSpec::new(preset(name).unwrap().0, eps).unwrap()
    }

    #[test]
    fn rejects_bad_inputs() {
        let (h, _) = preset("hopf-link").unwrap();
        assert_eq!(KnottedFieldSpec::new(h.clone(), 0.0), Err(Error::InvalidEpsilon(0.0)));
        assert!(KnottedFieldSpec::new(h, f64::NAN).is_err());
        let c = BivariatePolynomial::from_terms([((0, 0), Complex64::new(1.0, 0.0)), ((1, 0), Complex64::new(1.0, 0.0))]);
        assert_eq!(KnottedFieldSpec::new(c, 1.0), Err(Error::ConstantTerm));
    }

    #[test]
    fn hopf_link_at_origin() {
        let s = spec("hopf-link", 1.0).sample(&Event::ORIGIN);
        assert!((s.psi - Complex64::new(1.0, 0.0)).norm() < 1e-15);
        let u_h = crate::bateman::hopf_field(&Event::ORIGIN).energy_density;
        assert!((s.u - u_h).abs() < 1e-12);
        assert!(spec("hopf-link", 1.0).energy_ratio(&Event::ORIGIN) < 1e-14);
    }

    #[test]
    fn unknot_circle_vortex_point() {
        let sp = spec("unknot-circle", 1.0);
        let s = sp.sample(&Event::new(0.0, 1.0, 0.0, 0.0));
        assert!(s.psi.norm() < 1e-15);
        assert!(s.u < 1e-28);
        assert!(linalg::norm(s.s) < 1e-28);
        let (hm, he) = sp.helicity_densities(&Event::new(0.0, 1.0, 0.0, 0.0));
        assert!(hm.abs() < 1e-14 && he.abs() < 1e-14);
    }

    #[test]
    fn origin_vector_potential() {
        let sp = spec("hopf-link", 1.0);
        let p = sp.vector_potential(&Event::ORIGIN);
        let gb = sp.scaled_bateman(&Event::ORIGIN).beta.grad();
        for k in 0..3 {
            assert!((p.v[k] - gb[k] * (-1.0 / 3.0)).norm() < 1e-15);
        }
    }

    #[test]
    fn unknot_line_potential_vanishes_on_axis() {
        let sp = spec("unknot-line", 1.0);
        let p = sp.vector_potential(&Event::new(0.3, 0.0, 0.0, 1.7));
        assert!(linalg::cnorm(p.v) < 1e-15);
    }

    #[test]
    fn bateman_route_agrees_with_factored_form() {
        let sp = spec("cable-2-3-3-2", 0.7);
        for e in [Event::new(0.2, 0.4, -0.3, 0.8), Event::new(-1.0, 1.2, 0.5, -0.1)] {
            let a = sp.rs_vector(&e);
            let b = sp.bateman_route_field(&e);
            assert!(linalg::cnorm(linalg::csub(a, b)) <= 1e-12 * linalg::cnorm(a));
        }
    }

    #[test]
    fn hopf_spec_matches_hopf_field() {
        let sp = KnottedFieldSpec::hopf(1.0).unwrap();
        let e = Event::new(0.3, -0.2, 0.5, 1.0);
        let a = sp.sample(&e);
        let b = crate::bateman::hopf_field(&e);
        assert!((a.u - b.energy_density).abs() < 1e-13 * b.energy_density);
        assert_eq!(a.psi, Complex64::new(1.0, 0.0));
    }
}
