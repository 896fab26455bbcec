//! Sparse bivariate complex polynomials `h(v, w)` whose zero sets, cut by a
//! small 3-sphere, are algebraic links.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;

use num_complex::Complex64;

use crate::error::Error;
use crate::jet::Scalar;
use crate::math;

/// Coprime pair `(p, q)`; the torus knot winding `p` times toroidally and `q`
/// times poloidally.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct NewtonPair {
    p: u32,
    q: u32,
}

fn gcd(mut a: u32, mut b: u32) -> u32 {
    while b != 0 {
        let r = a % b;
        a = b;
        b = r;
    }
    a
}

impl NewtonPair {
    pub fn new(p: u32, q: u32) -> Result<Self, Error> {
        if p == 0 || q == 0 || gcd(p, q) != 1 {
            return Err(Error::InvalidNewtonPair { p, q });
        }
        Ok(Self { p, q })
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn q(&self) -> u32 {
        self.q
    }
}

/// `sum c_jk v^j w^k` stored as a map from `(j, k)` to a nonzero coefficient.
/// Iteration and summation run in lexicographic `(j, k)` order.
#[derive(Clone, Debug, PartialEq, Default)]
pub struct BivariatePolynomial {
    terms: BTreeMap<(u32, u32), Complex64>,
}

impl BivariatePolynomial {
    /// Sums duplicate exponents and drops zero coefficients. No link checks.
    pub fn from_terms<I>(terms: I) -> Self
    where
        I: IntoIterator<Item = ((u32, u32), Complex64)>,
    {
        let mut map: BTreeMap<(u32, u32), Complex64> = BTreeMap::new();
        for (exp, c) in terms {
            *map.entry(exp).or_insert(Complex64::new(0.0, 0.0)) += c;
        }
        map.retain(|_, c| *c != Complex64::new(0.0, 0.0));
        Self { terms: map }
    }

    /// Like [`from_terms`](Self::from_terms) but rejects the zero polynomial
    /// and any constant term.
    pub fn link<I>(terms: I) -> Result<Self, Error>
    where
        I: IntoIterator<Item = ((u32, u32), Complex64)>,
    {
        let p = Self::from_terms(terms);
        p.validate_link()?;
        Ok(p)
    }

    pub fn validate_link(&self) -> Result<(), Error> {
        if self.terms.is_empty() {
            return Err(Error::ZeroPolynomial);
        }
        if self.terms.contains_key(&(0, 0)) {
            return Err(Error::ConstantTerm);
        }
        Ok(())
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn coefficient(&self, j: u32, k: u32) -> Complex64 {
        self.terms.get(&(j, k)).copied().unwrap_or(Complex64::new(0.0, 0.0))
    }

    pub fn terms(&self) -> impl Iterator<Item = ((u32, u32), Complex64)> + '_ {
        self.terms.iter().map(|(e, c)| (*e, *c))
    }

    pub fn degree_v(&self) -> u32 {
        self.terms.keys().map(|e| e.0).max().unwrap_or(0)
    }

    pub fn degree_w(&self) -> u32 {
        self.terms.keys().map(|e| e.1).max().unwrap_or(0)
    }

    /// Evaluates `h(v, w)` for plain values or jets.
    pub fn eval<S: Scalar>(&self, v: S, w: S) -> S {
        let zero = Complex64::new(0.0, 0.0);
        if self.terms.is_empty() {
            return S::from_complex(zero);
        }
        let vp = powers(v, self.degree_v());
        let wp = powers(w, self.degree_w());
        let mut acc = S::from_complex(zero);
        for (&(j, k), &c) in &self.terms {
            acc = acc + vp[j as usize] * wp[k as usize] * c;
        }
        acc
    }

    pub fn d_dv(&self) -> Self {
        Self::from_terms(
            self.terms
                .iter()
                .filter(|(e, _)| e.0 > 0)
                .map(|(&(j, k), &c)| ((j - 1, k), c * j as f64)),
        )
    }

    pub fn d_dw(&self) -> Self {
        Self::from_terms(
            self.terms
                .iter()
                .filter(|(e, _)| e.1 > 0)
                .map(|(&(j, k), &c)| ((j, k - 1), c * k as f64)),
        )
    }

    /// `integral h dv` with zero integration constant.
    pub fn antiderivative_v(&self) -> Self {
        Self::from_terms(
            self.terms.iter().map(|(&(j, k), &c)| ((j + 1, k), c / (j + 1) as f64)),
        )
    }
}

fn powers<S: Scalar>(x: S, n: u32) -> Vec<S> {
    let mut out = Vec::with_capacity(n as usize + 1);
    out.push(S::from_complex(Complex64::new(1.0, 0.0)));
    for i in 1..=n as usize {
        let next = out[i - 1] * x;
        out.push(next);
    }
    out
}

fn fmt_coefficient(c: Complex64) -> String {
    if c.im == 0.0 {
        format!("{}", c.re)
    } else if c.re == 0.0 {
        format!("{}i", c.im)
    } else {
        format!("({}{:+}i)", c.re, c.im)
    }
}

fn fmt_monomial(j: u32, k: u32) -> String {
    let part = |name: &str, e: u32| match e {
        0 => String::new(),
        1 => name.to_string(),
        _ => format!("{name}^{e}"),
    };
    let (a, b) = (part("v", j), part("w", k));
    match (a.is_empty(), b.is_empty()) {
        (true, true) => "1".to_string(),
        (false, true) => a,
        (true, false) => b,
        (false, false) => format!("{a} {b}"),
    }
}

impl fmt::Display for BivariatePolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (&(j, k), &c) in &self.terms {
            let mono = fmt_monomial(j, k);
            let (sign, mag) = if c.im == 0.0 && c.re < 0.0 { ("-", -c) } else { ("+", c) };
            if first {
                if sign == "-" {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            first = false;
            if mag == Complex64::new(1.0, 0.0) {
                write!(f, "{mono}")?;
            } else if j == 0 && k == 0 {
                write!(f, "{}", fmt_coefficient(mag))?;
            } else {
                write!(f, "{} {mono}", fmt_coefficient(mag))?;
            }
        }
        Ok(())
    }
}

/// `h(v, w) = sqrt(2)^q v^q - sqrt(2)^p w^p`.
pub fn torus_polynomial(pair: NewtonPair) -> BivariatePolynomial {
    let s2 = math::sqrt(2.0);
    let cv = math::powi(s2, pair.q as i32);
    let cw = math::powi(s2, pair.p as i32);
    BivariatePolynomial::from_terms([
        ((pair.q, 0), Complex64::new(cv, 0.0)),
        ((0, pair.p), Complex64::new(-cw, 0.0)),
    ])
}

/// Names accepted by [`preset`]; `torus-P-Q` takes any coprime pair.
pub const PRESET_NAMES: [&str; 6] =
    ["unknot-circle", "unknot-line", "trefoil", "hopf-link", "cable-2-3-3-2", "torus-P-Q"];

#[derive(Clone, Debug, PartialEq)]
pub struct PresetInfo {
    pub name: String,
    pub formula: String,
    pub description: &'static str,
    /// Newton pairs describing the knot, when it has a single branch.
    pub newton_pairs: Vec<NewtonPair>,
    pub default_epsilon: f64,
}

fn r(c: f64) -> Complex64 {
    Complex64::new(c, 0.0)
}

/// Looks up a named link polynomial.
pub fn preset(name: &str) -> Result<(BivariatePolynomial, PresetInfo), Error> {
    let info = |formula: &str, description, pairs: Vec<NewtonPair>| PresetInfo {
        name: name.to_string(),
        formula: formula.to_string(),
        description,
        newton_pairs: pairs,
        default_epsilon: 1.0,
    };
    let poly_and_info = match name {
        "unknot-circle" => (
            BivariatePolynomial::from_terms([((1, 0), r(1.0))]),
            info("v", "unknot: the unit circle in the z = 0 plane at t = 0", Vec::new()),
        ),
        "unknot-line" => (
            BivariatePolynomial::from_terms([((0, 1), r(1.0))]),
            info("w", "unknot through infinity: the z-axis", Vec::new()),
        ),
        "trefoil" => {
            let pair = NewtonPair::new(2, 3)?;
            (
                torus_polynomial(pair),
                info("2 sqrt(2) v^3 - 2 w^2", "(2,3) torus knot", alloc::vec![pair]),
            )
        }
        "hopf-link" => (
            BivariatePolynomial::from_terms([((2, 0), r(1.0)), ((0, 2), r(1.0))]),
            info("v^2 + w^2", "Hopf link: two linked unknots", Vec::new()),
        ),
        "cable-2-3-3-2" => (
            BivariatePolynomial::from_terms([
                ((0, 6), r(1.0)),
                ((3, 4), r(-3.0)),
                ((6, 2), r(3.0)),
                ((8, 2), r(-6.0)),
                ((9, 0), r(-1.0)),
                ((11, 0), r(-2.0)),
                ((13, 0), r(-1.0)),
            ]),
            info(
                "w^6 - 3 w^4 v^3 + 3 w^2 v^6 - 6 w^2 v^8 - v^9 - 2 v^11 - v^13",
                "cable knot with Newton pairs (2,3) and (3,2)",
                alloc::vec![NewtonPair::new(2, 3)?, NewtonPair::new(3, 2)?],
            ),
        ),
        other => {
            let pair = parse_torus_name(other).ok_or_else(|| Error::UnknownPreset {
                name: other.to_string(),
                available: PRESET_NAMES.join(", "),
            })??;
            let poly = torus_polynomial(pair);
            let formula = format!(
                "sqrt(2)^{q} v^{q} - sqrt(2)^{p} w^{p}",
                p = pair.p,
                q = pair.q
            );
            (poly, info(&formula, "torus knot or link", alloc::vec![pair]))
        }
    };
    Ok(poly_and_info)
}

fn parse_torus_name(name: &str) -> Option<Result<NewtonPair, Error>> {
    let rest = name.strip_prefix("torus-")?;
    let (p, q) = rest.split_once('-')?;
    let p: u32 = p.parse().ok()?;
    let q: u32 = q.parse().ok()?;
    Some(NewtonPair::new(p, q))
}

/// Parses the polynomial text format: `#` comment lines and data lines
/// `j k re im`. Duplicate exponents are summed and zero sums dropped.
/// A constant term is only accepted when `allow_constant` is set.
pub fn parse_poly(text: &str, allow_constant: bool) -> Result<BivariatePolynomial, Error> {
    let mut terms = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let fields: Vec<&str> = line.split_whitespace().collect();
        if fields.len() != 4 {
            return Err(Error::Parse {
                line: line_no,
                message: format!("expected 4 fields `j k re im`, found {}", fields.len()),
            });
        }
        let exp = |s: &str, what: &str| {
            s.parse::<u32>().map_err(|_| Error::Parse {
                line: line_no,
                message: format!("{what} exponent `{s}` is not a nonnegative integer"),
            })
        };
        let num = |s: &str, what: &str| match s.parse::<f64>() {
            Ok(v) if v.is_finite() => Ok(v),
            _ => Err(Error::Parse {
                line: line_no,
                message: format!("{what} part `{s}` is not a finite decimal number"),
            }),
        };
        let j = exp(fields[0], "v")?;
        let k = exp(fields[1], "w")?;
        let re = num(fields[2], "real")?;
        let im = num(fields[3], "imaginary")?;
        terms.push(((j, k), Complex64::new(re, im)));
    }
    let poly = BivariatePolynomial::from_terms(terms);
    if poly.is_empty() {
        return Err(Error::ZeroPolynomial);
    }
    if !allow_constant && poly.coefficient(0, 0) != Complex64::new(0.0, 0.0) {
        return Err(Error::ConstantTerm);
    }
    Ok(poly)
}

/// Inverse of [`parse_poly`]; coefficients use 17 significant digits.
pub fn format_poly(h: &BivariatePolynomial) -> String {
    let mut out = String::from("# j k re im\n");
    for ((j, k), c) in h.terms() {
        out.push_str(&format!("{j} {k} {:.16e} {:.16e}\n", c.re, c.im));
    }
    out
}
