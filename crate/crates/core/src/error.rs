use alloc::string::String;
use core::fmt;

use crate::jet::Event;

#[derive(Clone, Debug, PartialEq)]
#[non_exhaustive]
pub enum Error {
    /// Newton pair with `gcd(p, q) != 1` or a zero entry.
    InvalidNewtonPair { p: u32, q: u32 },
    UnknownPreset { name: String, available: String },
    Parse { line: usize, message: String },
    /// Link polynomials must have a vanishing constant term.
    ConstantTerm,
    ZeroPolynomial,
    InvalidEpsilon(f64),
    InvalidGrid(String),
    InvalidArgument(String),
    /// Division by a jet whose value vanished.
    Domain { event: Event },
    /// A fitted proportionality deviates beyond its threshold.
    Inconsistent { deviation: f64, threshold: f64 },

    // Vortex extraction.
    SeedNotConverged { iterations: usize, residual: f64 },
    SeedDrifted { distance: f64 },
    SeedOffCurve { residual: f64 },
    DegenerateTangent { point: [f64; 3] },
    StepUnderflow { point: [f64; 3] },
    TooManyVertices { limit: usize },

    // Topology.
    OpenCurve,
    NearIntersection { distance: f64 },
    PhaseUndefined { vertex: usize },
    CurveTooCoarse { vertex: usize, jump: f64 },
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::InvalidNewtonPair { p, q } => {
                write!(f, "invalid Newton pair ({p}, {q}): entries must be positive and coprime")
            }
            Error::UnknownPreset { name, available } => {
                write!(f, "unknown preset `{name}`; available: {available}")
            }
            Error::Parse { line, message } => write!(f, "line {line}: {message}"),
            Error::ConstantTerm => write!(
                f,
                "link polynomials need a vanishing constant term, but a (0, 0) coefficient is present"
            ),
            Error::ZeroPolynomial => write!(f, "polynomial has no nonzero terms"),
            Error::InvalidEpsilon(e) => write!(f, "epsilon must be finite and > 0, got {e}"),
            Error::InvalidGrid(msg) => write!(f, "invalid grid: {msg}"),
            Error::InvalidArgument(msg) => write!(f, "invalid argument: {msg}"),
            Error::Domain { event } => write!(f, "division by zero jet at {event}"),
            Error::Inconsistent { deviation, threshold } => write!(
                f,
                "proportionality fit deviates by {deviation:e} (threshold {threshold:e})"
            ),
            Error::SeedNotConverged { iterations, residual } => write!(
                f,
                "seed refinement did not converge after {iterations} iterations (|psi| = {residual:e})"
            ),
            Error::SeedDrifted { distance } => {
                write!(f, "seed refinement drifted {distance} away from its start")
            }
            Error::SeedOffCurve { residual } => {
                write!(f, "trace seed is not on the zero set (|psi| = {residual:e})")
            }
            Error::DegenerateTangent { point } => write!(
                f,
                "degenerate vortex tangent at ({}, {}, {})",
                point[0], point[1], point[2]
            ),
            Error::StepUnderflow { point } => write!(
                f,
                "trace step underflow at ({}, {}, {})",
                point[0], point[1], point[2]
            ),
            Error::TooManyVertices { limit } => write!(f, "curve exceeded {limit} vertices"),
            Error::OpenCurve => write!(f, "operation requires a closed curve"),
            Error::NearIntersection { distance } => {
                write!(f, "curves nearly intersect (distance {distance:e}); linking is ill-conditioned")
            }
            Error::PhaseUndefined { vertex } => {
                write!(f, "phase undefined at vertex {vertex} (modulus below 1e-9)")
            }
            Error::CurveTooCoarse { vertex, jump } => write!(
                f,
                "phase jump {jump} at vertex {vertex}; re-trace with a smaller step"
            ),
        }
    }
}

impl core::error::Error for Error {}
