//! Exact null solutions of the free Maxwell equations whose optical vortices
//! (lines of zero intensity) are algebraic links, together with the numerical
//! machinery to extract those vortex lines and certify their topology.
//!
//! The crate is `no_std` and only needs `alloc`. File IO, the command line
//! and output formats live in the `knotfield-cli` crate.
//!
//! Conventions used everywhere:
//! - natural units, `c = 1`, dimensionless coordinates `(t, x, y, z)`;
//! - jet partials are ordered `(d/dt, d/dx, d/dy, d/dz)`;
//! - the Riemann–Silberstein vector is `F = E + iB`;
//! - energy density is `u = |E|^2 + |B|^2` (no factor 1/2).
#![cfg_attr(not(test), no_std)]

extern crate alloc;

pub mod bateman;
mod error;
pub mod field;
pub mod jet;
pub mod linalg;
pub mod linkpoly;
mod math;
pub mod topology;
pub mod validate;
pub mod vortex;

pub use error::Error;
pub use jet::{ComplexJet, Event};
pub use num_complex::Complex64;

pub type Result<T, E = Error> = core::result::Result<T, E>;
