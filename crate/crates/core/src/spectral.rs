//! Spectrum of the signed Laplacian and the first nonzero eigenvalue of the
//! signed p-Laplacian.
//!
//! `−Δ^σ = I − D^{-1}A^σ` is similar to `S = I − D^{-1/2}A^σD^{-1/2}`; the
//! eigenproblem is solved on `S` and eigenfunctions are mapped back by
//! `f = D^{-1/2}u`, which makes them orthonormal for `⟨f,g⟩ = Σ f g d_x`.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{SignedGraph, SwitchingFunction};
use crate::linalg::{cluster_sorted, symmetric_eigen, Matrix};
use crate::operators::{laplacian_matrix, p_energy, p_laplacian_all, p_mass, p_rayleigh, signed_power, Exponent, SignChoice};

/// Eigenvalues closer than this are one cluster; eigenvalues below it count as zero.
pub const ZERO_TOL: f64 = 1e-8;

#[derive(Debug, Clone, Serialize)]
pub struct Spectrum {
    pub sign_choice: SignChoice,
    pub eigenvalues: Vec<f64>,
    /// `eigenfunctions[k]` belongs to `eigenvalues[k]`.
    pub eigenfunctions: Vec<Vec<f64>>,
    /// `max_x |−Δ^σ f(x) − λ f(x)|` per pair.
    pub residuals: Vec<f64>,
    pub zero_tolerance: f64,
    pub balanced: bool,
}

impl Spectrum {
    /// `(value, multiplicity)` clusters in ascending order.
    pub fn clusters(&self) -> Vec<(f64, usize)> {
        cluster_sorted(&self.eigenvalues, self.zero_tolerance)
    }

    pub fn max_residual(&self) -> f64 {
        self.residuals.iter().copied().fold(0.0, f64::max)
    }
}

pub fn spectrum(g: &SignedGraph, sign_choice: SignChoice) -> Result<Spectrum> {
    let h = sign_choice.resolve(g);
    let n = h.n();
    let inv_sqrt: Vec<f64> = h.degrees().iter().map(|&d| 1.0 / (d as f64).sqrt()).collect();
    let mut s = Matrix::identity(n);
    for x in 0..n {
        for &(y, sign) in h.neighbors(x) {
            s[(x, y)] = -sign.value() * inv_sqrt[x] * inv_sqrt[y];
        }
    }
    let eig = symmetric_eigen(&s)?;
    let lap = laplacian_matrix(&h, SignChoice::Given).matrix;
    let eigenfunctions: Vec<Vec<f64>> = eig
        .vectors
        .iter()
        .map(|u| u.iter().zip(&inv_sqrt).map(|(a, b)| a * b).collect())
        .collect();
    let residuals = eig
        .values
        .iter()
        .zip(&eigenfunctions)
        .map(|(&lam, f)| {
            lap.matvec(f).iter().zip(f).map(|(a, b)| (a - lam * b).abs()).fold(0.0, f64::max)
        })
        .collect();
    Ok(Spectrum {
        sign_choice,
        eigenvalues: eig.values,
        eigenfunctions,
        residuals,
        zero_tolerance: ZERO_TOL,
        balanced: h.is_balanced(),
    })
}

/// `λ^σ`: the smallest eigenvalue when unbalanced, the second smallest when balanced.
#[derive(Debug, Clone, Serialize)]
pub struct FirstEigen {
    pub lambda: f64,
    pub multiplicity: usize,
    /// Degree-orthonormal basis of the eigenspace.
    pub eigenfunctions: Vec<Vec<f64>>,
    pub balanced: bool,
}

pub fn first_nonzero_eigenvalue(g: &SignedGraph) -> Result<FirstEigen> {
    first_from_spectrum(&spectrum(g, SignChoice::Given)?)
}

pub fn first_from_spectrum(spec: &Spectrum) -> Result<FirstEigen> {
    let mut start = 0;
    if spec.balanced {
        // the kernel is one-dimensional for a connected balanced graph
        start = spec.eigenvalues.iter().take_while(|&&v| v.abs() < spec.zero_tolerance).count().max(1);
    }
    if start >= spec.eigenvalues.len() {
        return Err(Error::Precondition("graph has no nonzero eigenvalue".into()));
    }
    let mut end = start + 1;
    while end < spec.eigenvalues.len() && spec.eigenvalues[end] - spec.eigenvalues[end - 1] <= spec.zero_tolerance {
        end += 1;
    }
    let lambda = spec.eigenvalues[start..end].iter().sum::<f64>() / (end - start) as f64;
    Ok(FirstEigen {
        lambda,
        multiplicity: end - start,
        eigenfunctions: spec.eigenfunctions[start..end].to_vec(),
        balanced: spec.balanced,
    })
}

/// Pairwise comparison `λ_i^{σ−} = 2 − λ_{|V|−i+1}` between the all-negative and all-positive spectra.
#[derive(Debug, Clone, Serialize)]
pub struct NegativeSpectrumRelation {
    pub positive: Vec<f64>,
    pub negative: Vec<f64>,
    pub max_deviation: f64,
    pub holds: bool,
    pub bipartite: bool,
}

pub fn all_negative_spectrum_relation(g: &SignedGraph) -> Result<NegativeSpectrumRelation> {
    let positive = spectrum(g, SignChoice::AllPositive)?.eigenvalues;
    let negative = spectrum(g, SignChoice::AllNegative)?.eigenvalues;
    let n = positive.len();
    let max_deviation = (0..n)
        .map(|i| (negative[i] - (2.0 - positive[n - 1 - i])).abs())
        .fold(0.0, f64::max);
    let bipartite = (positive[n - 1] - 2.0).abs() < ZERO_TOL;
    Ok(NegativeSpectrumRelation { holds: max_deviation <= 1e-9, positive, negative, max_deviation, bipartite })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PSolverOptions {
    pub restarts: usize,
    pub seed: u64,
    pub max_iters: usize,
}

impl Default for PSolverOptions {
    fn default() -> Self {
        PSolverOptions { restarts: 50, seed: 0x5157_0001, max_iters: 4000 }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct PEigenResult {
    pub p: f64,
    pub lambda_p: f64,
    /// Normalized by `Σ |f|^p d_x = 1`.
    pub minimizer: Vec<f64>,
    pub restarts_used: usize,
    pub best_restart: usize,
    /// `max_x |−Δ_p^σ f(x) − λ_p |f(x)|^{p−2} f(x)|`.
    pub eigen_residual: f64,
    /// Balanced case: `|Σ |f|^{p−2} f τ d_x| / Σ |f|^{p−1} d_x`.
    pub constraint_residual: Option<f64>,
    pub balanced: bool,
}

/// Solves `Σ_x |g(x) − c|^{p−2}(g(x) − c) d_x = 0` for `c` by bisection.
fn p_center(g: &[f64], deg: &[f64], p: f64) -> f64 {
    let phi = |c: f64| -> f64 { g.iter().zip(deg).map(|(v, d)| signed_power(v - c, p) * d).sum() };
    let mut lo = g.iter().copied().fold(f64::INFINITY, f64::min);
    let mut hi = g.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if phi(mid) > 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

struct Problem<'a> {
    g: &'a SignedGraph,
    p: Exponent,
    deg: Vec<f64>,
    /// Project onto `Σ|f|^{p−2}f d = 0` by a constant shift (all-positive graph).
    centered: bool,
}

impl Problem<'_> {
    /// Shift (if centered) and scale to `Σ|f|^p d = 1`; `None` for the zero function.
    fn normalize(&self, mut f: Vec<f64>) -> Option<Vec<f64>> {
        if self.centered {
            let c = p_center(&f, &self.deg, self.p.get());
            f.iter_mut().for_each(|v| *v -= c);
        }
        let m = p_mass(self.g, self.p.get(), &f);
        if !(m > 1e-300 && m.is_finite()) {
            return None;
        }
        let s = m.powf(-1.0 / self.p.get());
        f.iter_mut().for_each(|v| *v *= s);
        Some(f)
    }

    fn value(&self, f: &[f64]) -> f64 {
        p_energy(self.g, self.p.get(), f) / p_mass(self.g, self.p.get(), f)
    }

    /// Gradient of the Rayleigh quotient at a normalized `f`, divided by `p`.
    fn gradient(&self, f: &[f64], r: f64) -> Vec<f64> {
        let p = self.p.get();
        let lap = p_laplacian_all(self.g, self.p, f);
        (0..f.len()).map(|x| self.deg[x] * (-lap[x] - r * signed_power(f[x], p))).collect()
    }

    fn descend(&self, start: Vec<f64>, max_iters: usize) -> Option<(f64, Vec<f64>)> {
        let mut f = self.normalize(start)?;
        let mut r = self.value(&f);
        let mut grad = self.gradient(&f, r);
        let mut step = 1.0;
        let mut prev: Option<(Vec<f64>, Vec<f64>)> = None;
        let mut stalled = 0;
        for _ in 0..max_iters {
            let gnorm2: f64 = grad.iter().map(|v| v * v).sum();
            if gnorm2.sqrt() < 1e-14 {
                break;
            }
            if let Some((pf, pg)) = &prev {
                let s: Vec<f64> = f.iter().zip(pf).map(|(a, b)| a - b).collect();
                let y: Vec<f64> = grad.iter().zip(pg).map(|(a, b)| a - b).collect();
                let sy: f64 = s.iter().zip(&y).map(|(a, b)| a * b).sum();
                let ss: f64 = s.iter().map(|v| v * v).sum();
                step = if sy > 0.0 { (ss / sy).min(1e6) } else { 1.0 };
            }
            let mut accepted = None;
            for _ in 0..60 {
                let trial: Vec<f64> = f.iter().zip(&grad).map(|(a, b)| a - step * b).collect();
                if let Some(t) = self.normalize(trial) {
                    let rt = self.value(&t);
                    if rt <= r - 1e-4 * step * gnorm2 {
                        accepted = Some((t, rt));
                        break;
                    }
                }
                step *= 0.5;
            }
            let Some((t, rt)) = accepted else { break };
            stalled = if r - rt <= 1e-15 * r.abs().max(1.0) { stalled + 1 } else { 0 };
            if stalled >= 10 {
                f = t;
                r = rt;
                break;
            }
            prev = Some((std::mem::replace(&mut f, t), std::mem::take(&mut grad)));
            r = rt;
            grad = self.gradient(&f, r);
        }
        Some((r, f))
    }
}

/// Estimates `λ_p^σ` by multi-start descent of the p-Rayleigh quotient.
///
/// Unbalanced graphs minimize over all nonzero `f`. Balanced graphs are
/// switched to the all-positive sign, where the constraint
/// `Σ |f|^{p−2} f τ d_x = 0` becomes a constant shift that is solved exactly.
/// Results are upper bounds of the true infimum.
pub fn p_spectral_gap(g: &SignedGraph, p: Exponent, options: &PSolverOptions) -> Result<PEigenResult> {
    if options.restarts == 0 {
        return Err(Error::InvalidParameter("at least one restart is required".into()));
    }
    let balance = g.balance();
    let tau = balance.certificate().cloned().unwrap_or_else(|| SwitchingFunction::identity(g.n()));
    let balanced = balance.is_balanced();
    let work = g.switch(&tau)?;
    let problem = Problem {
        g: &work,
        p,
        deg: work.degrees().iter().map(|&d| d as f64).collect(),
        centered: balanced,
    };
    let linear = first_nonzero_eigenvalue(&work)?;
    let base = linear.eigenfunctions[0].clone();
    let scale = base.iter().fold(0.0f64, |m, v| m.max(v.abs()));

    let runs: Vec<Option<(f64, Vec<f64>)>> = (0..options.restarts)
        .into_par_iter()
        .map(|k| {
            let start = if k == 0 {
                base.clone()
            } else {
                let mut rng = ChaCha8Rng::seed_from_u64(options.seed.wrapping_add(k as u64));
                let amp = scale * (0.1 + 1.9 * k as f64 / options.restarts as f64);
                base.iter().map(|v| v + amp * rng.gen_range(-1.0..1.0)).collect()
            };
            problem.descend(start, options.max_iters)
        })
        .collect();

    let (best_restart, (_, h)) = runs
        .into_iter()
        .enumerate()
        .filter_map(|(k, r)| r.map(|r| (k, r)))
        .filter(|(_, (v, _))| v.is_finite())
        .min_by(|a, b| a.1 .0.total_cmp(&b.1 .0).then(a.0.cmp(&b.0)))
        .ok_or_else(|| Error::OptimizationFailed("no restart produced a finite Rayleigh quotient".into()))?;

    let f = tau.apply(&h);
    let lambda_p = p_rayleigh(g, p, &f)?;
    let lap = p_laplacian_all(g, p, &f);
    let eigen_residual = (0..g.n())
        .map(|x| (-lap[x] - lambda_p * signed_power(f[x], p.get())).abs())
        .fold(0.0, f64::max);
    let constraint_residual = balanced.then(|| {
        let num: f64 = (0..g.n()).map(|x| signed_power(f[x], p.get()) * tau.get(x).value() * problem.deg[x]).sum();
        let den: f64 = (0..g.n()).map(|x| f[x].abs().powf(p.get() - 1.0) * problem.deg[x]).sum();
        num.abs() / den
    });
    Ok(PEigenResult {
        p: p.get(),
        lambda_p,
        minimizer: f,
        restarts_used: options.restarts,
        best_restart,
        eigen_residual,
        constraint_residual,
        balanced,
    })
}
