//! Signed Laplacian, carré du champ operators, the signed p-Laplacian and its
//! linearizations, evaluated pointwise.
//!
//! Sums run over neighbors in index order. Signed differences are
//! `σ_xy f(y) − f(x)` throughout.

use std::fmt::Write as _;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{Sign, SignedGraph};
use crate::linalg::Matrix;

/// Which sign the Laplacian uses.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Default)]
#[serde(rename_all = "snake_case")]
pub enum SignChoice {
    /// The graph's own signature `σ`.
    #[default]
    Given,
    AllPositive,
    AllNegative,
}

impl SignChoice {
    pub fn resolve(self, g: &SignedGraph) -> SignedGraph {
        match self {
            SignChoice::Given => g.clone(),
            SignChoice::AllPositive => g.with_all_positive(),
            SignChoice::AllNegative => g.with_all_negative(),
        }
    }
}

/// A real function on the vertices.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VertexFunction(Vec<f64>);

impl VertexFunction {
    pub fn new(g: &SignedGraph, values: Vec<f64>) -> Result<Self> {
        if values.len() != g.n() {
            return Err(Error::LengthMismatch { expected: g.n(), got: values.len() });
        }
        if let Some(bad) = values.iter().position(|v| !v.is_finite()) {
            return Err(Error::InvalidParameter(format!("non-finite value at vertex {}", g.label(bad))));
        }
        Ok(VertexFunction(values))
    }

    pub fn values(&self) -> &[f64] {
        &self.0
    }

    pub fn into_inner(self) -> Vec<f64> {
        self.0
    }

    /// Parses `label value` lines; `#` lines are comments. Every vertex must be given.
    pub fn parse(g: &SignedGraph, text: &str) -> Result<Self> {
        let mut values: Vec<Option<f64>> = vec![None; g.n()];
        for (i, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let parse_err = |msg: String| Error::Parse { line: i + 1, msg };
            let mut toks = line.split_whitespace();
            let (Some(label), Some(value), None) = (toks.next(), toks.next(), toks.next()) else {
                return Err(parse_err("expected `label value`".into()));
            };
            let x = g.index_of(label).map_err(|e| parse_err(e.to_string()))?;
            let v: f64 = value.parse().map_err(|_| parse_err(format!("invalid number {value:?}")))?;
            if values[x].replace(v).is_some() {
                return Err(parse_err(format!("vertex {label} given twice")));
            }
        }
        let missing: Vec<&str> = (0..g.n()).filter(|&x| values[x].is_none()).map(|x| g.label(x)).collect();
        if !missing.is_empty() {
            return Err(Error::Parse { line: 0, msg: format!("missing values for {}", missing.join(", ")) });
        }
        VertexFunction::new(g, values.into_iter().map(Option::unwrap).collect())
    }

    pub fn to_text(&self, g: &SignedGraph) -> String {
        let mut out = String::new();
        for (x, v) in self.0.iter().enumerate() {
            let _ = writeln!(out, "{} {}", g.label(x), v);
        }
        out
    }
}

/// Exponent `p > 1` of a p-Laplacian.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd, Serialize)]
pub struct Exponent(f64);

impl Exponent {
    pub fn new(p: f64) -> Result<Self> {
        if !(p.is_finite() && p > 1.0) {
            return Err(Error::InvalidParameter(format!("p must be a finite number > 1, got {p}")));
        }
        Ok(Exponent(p))
    }

    #[inline]
    pub fn get(self) -> f64 {
        self.0
    }
}

/// Dense matrix of `−Δ^σ` in the chosen sign convention.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LaplacianMatrix {
    pub matrix: Matrix,
    pub sign_choice: SignChoice,
}

/// Row `x`: `1` on the diagonal and `−σ_xy/d_x` at each neighbor `y`.
pub fn laplacian_matrix(g: &SignedGraph, sign_choice: SignChoice) -> LaplacianMatrix {
    let h = sign_choice.resolve(g);
    let n = h.n();
    let mut m = Matrix::zeros(n, n);
    for x in 0..n {
        m[(x, x)] = 1.0;
        let d = h.degree(x) as f64;
        for &(y, s) in h.neighbors(x) {
            m[(x, y)] = -s.value() / d;
        }
    }
    LaplacianMatrix { matrix: m, sign_choice }
}

#[inline]
fn diff(s: Sign, fy: f64, fx: f64) -> f64 {
    s.value() * fy - fx
}

/// `Δ^σ f(x) = (1/d_x) Σ_{y∼x} (σ_xy f(y) − f(x))`.
pub fn signed_laplacian(g: &SignedGraph, f: &[f64], x: usize) -> f64 {
    let sum: f64 = g.neighbors(x).iter().map(|&(y, s)| diff(s, f[y], f[x])).sum();
    sum / g.degree(x) as f64
}

/// The unsigned Laplacian `Δ` of the underlying graph.
pub fn unsigned_laplacian(g: &SignedGraph, f: &[f64], x: usize) -> f64 {
    let sum: f64 = g.neighbors(x).iter().map(|&(y, _)| f[y] - f[x]).sum();
    sum / g.degree(x) as f64
}

pub fn signed_laplacian_all(g: &SignedGraph, f: &[f64]) -> Vec<f64> {
    (0..g.n()).map(|x| signed_laplacian(g, f, x)).collect()
}

/// `Γ^σ(f,h)(x) = (1/2d_x) Σ_{y∼x} (σ_xy f(y) − f(x))(σ_xy h(y) − h(x))`.
pub fn gamma(g: &SignedGraph, f: &[f64], h: &[f64], x: usize) -> f64 {
    let sum: f64 = g
        .neighbors(x)
        .iter()
        .map(|&(y, s)| diff(s, f[y], f[x]) * diff(s, h[y], h[x]))
        .sum();
    sum / (2.0 * g.degree(x) as f64)
}

/// `|∇^σ f|²(x) = 2 Γ^σ(f,f)(x)`.
pub fn gradient_sq(g: &SignedGraph, f: &[f64], x: usize) -> f64 {
    let sum: f64 = g.neighbors(x).iter().map(|&(y, s)| diff(s, f[y], f[x]).powi(2)).sum();
    sum / g.degree(x) as f64
}

/// `Γ₂^σ(f,h)(x) = ½{Δ Γ^σ(f,h)(x) − Γ^σ(h, Δ^σ f)(x) − Γ^σ(f, Δ^σ h)(x)}`.
///
/// The outer Laplacian is the unsigned one; only values on the 2-ball of `x` are read.
pub fn gamma2_bilinear(g: &SignedGraph, f: &[f64], h: &[f64], x: usize) -> f64 {
    let n = g.n();
    let mut gam = vec![0.0; n];
    let mut lap_f = vec![0.0; n];
    let mut lap_h = vec![0.0; n];
    for y in std::iter::once(x).chain(g.neighbors(x).iter().map(|&(y, _)| y)) {
        gam[y] = gamma(g, f, h, y);
        lap_f[y] = signed_laplacian(g, f, y);
        lap_h[y] = signed_laplacian(g, h, y);
    }
    0.5 * (unsigned_laplacian(g, &gam, x) - gamma(g, h, &lap_f, x) - gamma(g, f, &lap_h, x))
}

pub fn gamma2(g: &SignedGraph, f: &[f64], x: usize) -> f64 {
    gamma2_bilinear(g, f, f, x)
}

/// `|t|^{p−2} t`, with value `0` at `t = 0`.
#[inline]
pub fn signed_power(t: f64, p: f64) -> f64 {
    if t == 0.0 {
        0.0
    } else {
        t.abs().powf(p - 1.0) * t.signum()
    }
}

/// `|t|^{p−2}`; at `t = 0` this is `1` for `p = 2` and `0` for `p > 2`.
#[inline]
fn weight(t: f64, p: f64) -> f64 {
    if p == 2.0 {
        1.0
    } else if t == 0.0 {
        0.0
    } else {
        t.abs().powf(p - 2.0)
    }
}

/// `Δ_p^σ f(x) = (1/d_x) Σ_{y∼x} |σ_xy f(y) − f(x)|^{p−2} (σ_xy f(y) − f(x))`.
pub fn p_laplacian(g: &SignedGraph, p: Exponent, f: &[f64], x: usize) -> f64 {
    let sum: f64 = g
        .neighbors(x)
        .iter()
        .map(|&(y, s)| signed_power(diff(s, f[y], f[x]), p.get()))
        .sum();
    sum / g.degree(x) as f64
}

pub fn p_laplacian_all(g: &SignedGraph, p: Exponent, f: &[f64]) -> Vec<f64> {
    (0..g.n()).map(|x| p_laplacian(g, p, f, x)).collect()
}

/// Numerator `Σ_{{x,y}∈E} |f(x) − σ_xy f(y)|^p` of the p-Rayleigh quotient.
pub fn p_energy(g: &SignedGraph, p: f64, f: &[f64]) -> f64 {
    g.edges()
        .iter()
        .map(|e| (f[e.u] - e.sign.value() * f[e.v]).abs().powf(p))
        .sum()
}

/// Denominator `Σ_x |f(x)|^p d_x`.
pub fn p_mass(g: &SignedGraph, p: f64, f: &[f64]) -> f64 {
    f.iter().enumerate().map(|(x, v)| v.abs().powf(p) * g.degree(x) as f64).sum()
}

/// `R_p^σ(f)`.
pub fn p_rayleigh(g: &SignedGraph, p: Exponent, f: &[f64]) -> Result<f64> {
    if f.len() != g.n() {
        return Err(Error::LengthMismatch { expected: g.n(), got: f.len() });
    }
    let mass = p_mass(g, p.get(), f);
    if mass == 0.0 {
        return Err(Error::ZeroFunction);
    }
    Ok(p_energy(g, p.get(), f) / mass)
}

/// For `1 < p < 2` every signed difference at `x` must be nonzero.
pub fn check_p_domain(g: &SignedGraph, p: Exponent, f: &[f64], x: usize) -> Result<()> {
    if p.get() >= 2.0 {
        return Ok(());
    }
    for &(y, s) in g.neighbors(x) {
        if diff(s, f[y], f[x]) == 0.0 {
            return Err(Error::Domain { vertex: x, neighbor: y, p: p.get() });
        }
    }
    Ok(())
}

/// `L^σ_{p,f} φ(x) = (1/d_x) Σ_{y∼x} |σ_xy f(y) − f(x)|^{p−2} (σ_xy φ(y) − φ(x))`.
pub fn linearized_p_laplacian(g: &SignedGraph, p: Exponent, f: &[f64], phi: &[f64], x: usize) -> Result<f64> {
    check_p_domain(g, p, f, x)?;
    let sum: f64 = g
        .neighbors(x)
        .iter()
        .map(|&(y, s)| weight(diff(s, f[y], f[x]), p.get()) * diff(s, phi[y], phi[x]))
        .sum();
    Ok(sum / g.degree(x) as f64)
}

/// `ℒ^σ_{p,f} φ(x) = (1/d_x) Σ_{y∼x} |σ_xy f(y) − f(x)|^{p−2} (φ(y) − φ(x))`.
pub fn modified_linearized(g: &SignedGraph, p: Exponent, f: &[f64], phi: &[f64], x: usize) -> Result<f64> {
    check_p_domain(g, p, f, x)?;
    let sum: f64 = g
        .neighbors(x)
        .iter()
        .map(|&(y, s)| weight(diff(s, f[y], f[x]), p.get()) * (phi[y] - phi[x]))
        .sum();
    Ok(sum / g.degree(x) as f64)
}

/// `Γ_p^σ(f,h)(x) = (1/2d_x) Σ_{y∼x} |σf(y) − f(x)|^{p−2} (σf(y) − f(x)) (σh(y) − h(x))`.
pub fn gamma_p(g: &SignedGraph, p: Exponent, f: &[f64], h: &[f64], x: usize) -> f64 {
    let sum: f64 = g
        .neighbors(x)
        .iter()
        .map(|&(y, s)| signed_power(diff(s, f[y], f[x]), p.get()) * diff(s, h[y], h[x]))
        .sum();
    sum / (2.0 * g.degree(x) as f64)
}

/// `Γ_{p,2}^σ(f,f)(x) = ½ ℒ^σ_{p,f}(Γ_p^σ(f,f))(x) − Γ_p^σ(f, Δ_p^σ f)(x)`.
pub fn gamma_p2(g: &SignedGraph, p: Exponent, f: &[f64], x: usize) -> Result<f64> {
    check_p_domain(g, p, f, x)?;
    let n = g.n();
    let mut gam = vec![0.0; n];
    let mut lap = vec![0.0; n];
    for y in std::iter::once(x).chain(g.neighbors(x).iter().map(|&(y, _)| y)) {
        gam[y] = gamma_p(g, p, f, f, y);
        lap[y] = p_laplacian(g, p, f, y);
    }
    Ok(0.5 * modified_linearized(g, p, f, &gam, x)? - gamma_p(g, p, f, &lap, x))
}
