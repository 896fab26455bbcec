//! First-order forward-mode jets over complex scalars.
//!
//! A [`ComplexJet`] carries a complex value together with its four partial
//! derivatives, always ordered `(d/dt, d/dx, d/dy, d/dz)`. Every field
//! quantity in the crate is assembled from coordinate jets, so gradients are
//! exact to rounding.

use core::ops::{Add, Div, Mul, Neg, Sub};

use num_complex::Complex64;

use crate::linalg::CVec3;

pub const DT: usize = 0;
pub const DX: usize = 1;
pub const DY: usize = 2;
pub const DZ: usize = 3;

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);

/// A spacetime point in natural units.
#[derive(Clone, Copy, Debug, PartialEq, Default)]
pub struct Event {
    pub t: f64,
    pub x: f64,
    pub y: f64,
    pub z: f64,
}

impl Event {
    pub const ORIGIN: Event = Event { t: 0.0, x: 0.0, y: 0.0, z: 0.0 };

    pub const fn new(t: f64, x: f64, y: f64, z: f64) -> Self {
        Self { t, x, y, z }
    }

    pub const fn at(t: f64, p: [f64; 3]) -> Self {
        Self { t, x: p[0], y: p[1], z: p[2] }
    }

    pub fn spatial(&self) -> [f64; 3] {
        [self.x, self.y, self.z]
    }

    pub fn r2(&self) -> f64 {
        self.x * self.x + self.y * self.y + self.z * self.z
    }

    pub fn is_finite(&self) -> bool {
        self.t.is_finite() && self.x.is_finite() && self.y.is_finite() && self.z.is_finite()
    }

    /// Coordinate `k` in jet order (0 = t, 1 = x, 2 = y, 3 = z).
    pub fn coord(&self, k: usize) -> f64 {
        match k {
            DT => self.t,
            DX => self.x,
            DY => self.y,
            DZ => self.z,
            _ => panic!("coordinate index {k} out of range"),
        }
    }

    /// The same event with coordinate `k` shifted by `h`.
    pub fn shifted(&self, k: usize, h: f64) -> Event {
        let mut e = *self;
        match k {
            DT => e.t += h,
            DX => e.x += h,
            DY => e.y += h,
            DZ => e.z += h,
            _ => panic!("coordinate index {k} out of range"),
        }
        e
    }
}

impl core::fmt::Display for Event {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        write!(f, "(t={}, x={}, y={}, z={})", self.t, self.x, self.y, self.z)
    }
}

/// Complex value with its four first partials `(d/dt, d/dx, d/dy, d/dz)`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ComplexJet {
    pub value: Complex64,
    pub d: [Complex64; 4],
}

impl ComplexJet {
    pub const fn constant(value: Complex64) -> Self {
        Self { value, d: [ZERO; 4] }
    }

    pub const fn real(value: f64) -> Self {
        Self::constant(Complex64::new(value, 0.0))
    }

    /// Jet of the coordinate function with index `k` taking `value`.
    pub fn variable(value: f64, k: usize) -> Self {
        let mut d = [ZERO; 4];
        d[k] = ONE;
        Self { value: Complex64::new(value, 0.0), d }
    }

    pub fn dt(&self) -> Complex64 {
        self.d[DT]
    }

    /// Spatial gradient `(d/dx, d/dy, d/dz)`.
    pub fn grad(&self) -> CVec3 {
        [self.d[DX], self.d[DY], self.d[DZ]]
    }

    pub fn scale(self, s: Complex64) -> Self {
        Self { value: self.value * s, d: self.d.map(|c| c * s) }
    }

    /// Reciprocal, or `None` if the value is exactly zero.
    pub fn checked_recip(self) -> Option<Self> {
        if self.value == ZERO {
            return None;
        }
        let inv = ONE / self.value;
        let dinv = -(inv * inv);
        Some(Self { value: inv, d: self.d.map(|c| c * dinv) })
    }

    pub fn checked_div(self, rhs: Self) -> Option<Self> {
        rhs.checked_recip().map(|r| self * r)
    }

    /// Integer power `self^n`, with `self^0 = 1` (constant jet).
    pub fn powi(self, n: u32) -> Self {
        match n {
            0 => Self::real(1.0),
            1 => self,
            _ => {
                let below = pow_c(self.value, n - 1);
                let factor = below * n as f64;
                Self { value: below * self.value, d: self.d.map(|c| c * factor) }
            }
        }
    }
}

fn pow_c(z: Complex64, n: u32) -> Complex64 {
    let mut acc = ONE;
    let mut base = z;
    let mut e = n;
    while e > 0 {
        if e & 1 == 1 {
            acc *= base;
        }
        base *= base;
        e >>= 1;
    }
    acc
}

/// The four coordinate jets `(t, x, y, z)` at an event.
pub fn coordinate_jets(e: &Event) -> [ComplexJet; 4] {
    [
        ComplexJet::variable(e.t, DT),
        ComplexJet::variable(e.x, DX),
        ComplexJet::variable(e.y, DY),
        ComplexJet::variable(e.z, DZ),
    ]
}

impl Add for ComplexJet {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        let mut d = self.d;
        for (a, b) in d.iter_mut().zip(rhs.d) {
            *a += b;
        }
        Self { value: self.value + rhs.value, d }
    }
}

impl Sub for ComplexJet {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        let mut d = self.d;
        for (a, b) in d.iter_mut().zip(rhs.d) {
            *a -= b;
        }
        Self { value: self.value - rhs.value, d }
    }
}

impl Mul for ComplexJet {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        let mut d = [ZERO; 4];
        for k in 0..4 {
            d[k] = self.d[k] * rhs.value + self.value * rhs.d[k];
        }
        Self { value: self.value * rhs.value, d }
    }
}

/// Quotient rule. Division by a jet with zero value yields non-finite
/// components; use [`ComplexJet::checked_div`] where that can happen.
impl Div for ComplexJet {
    type Output = Self;
    fn div(self, rhs: Self) -> Self {
        let inv = ONE / rhs.value;
        let q = self.value * inv;
        let mut d = [ZERO; 4];
        for k in 0..4 {
            d[k] = (self.d[k] - q * rhs.d[k]) * inv;
        }
        Self { value: q, d }
    }
}

impl Neg for ComplexJet {
    type Output = Self;
    fn neg(self) -> Self {
        Self { value: -self.value, d: self.d.map(|c| -c) }
    }
}

impl Add<Complex64> for ComplexJet {
    type Output = Self;
    fn add(self, rhs: Complex64) -> Self {
        Self { value: self.value + rhs, d: self.d }
    }
}

impl Sub<Complex64> for ComplexJet {
    type Output = Self;
    fn sub(self, rhs: Complex64) -> Self {
        Self { value: self.value - rhs, d: self.d }
    }
}

impl Mul<Complex64> for ComplexJet {
    type Output = Self;
    fn mul(self, rhs: Complex64) -> Self {
        self.scale(rhs)
    }
}

impl Mul<f64> for ComplexJet {
    type Output = Self;
    fn mul(self, rhs: f64) -> Self {
        self.scale(Complex64::new(rhs, 0.0))
    }
}

/// Arithmetic shared by plain complex numbers and jets, so evaluation code is
/// written once and used both for cheap value sweeps and for gradients.
pub trait Scalar:
    Copy
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
    + Mul<Complex64, Output = Self>
    + Add<Complex64, Output = Self>
{
    fn from_complex(c: Complex64) -> Self;
    fn value(&self) -> Complex64;
    fn pow(self, n: u32) -> Self;
}

impl Scalar for Complex64 {
    fn from_complex(c: Complex64) -> Self {
        c
    }
    fn value(&self) -> Complex64 {
        *self
    }
    fn pow(self, n: u32) -> Self {
        pow_c(self, n)
    }
}

impl Scalar for ComplexJet {
    fn from_complex(c: Complex64) -> Self {
        ComplexJet::constant(c)
    }
    fn value(&self) -> Complex64 {
        self.value
    }
    fn pow(self, n: u32) -> Self {
        self.powi(n)
    }
}
