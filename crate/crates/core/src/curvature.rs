//! Bakry-Émery curvature of signed graphs.
//!
//! The main route builds the per-vertex curvature matrix `A_N(x)` from the
//! local structure of the 2-ball and takes its smallest eigenvalue. A second,
//! independent route bisects on `K` for positive semidefiniteness of the
//! quadratic form `Γ₂ − (1/N)(Δ^σ ·)² − KΓ` on functions on the 2-ball.
//! For p ≠ 2 only a falsifier is provided.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::SignedGraph;
use crate::linalg::{min_eigenvalue, symmetric_eigen, Matrix};
use crate::operators::{gamma, gamma2_bilinear, gamma_p, gamma_p2, p_laplacian, signed_laplacian, Exponent};
use crate::{inv_dimension, Dimension};

/// Intermediate matrices of the curvature-matrix construction at one vertex.
#[derive(Debug, Clone, Serialize)]
pub struct CurvatureMatrixBundle {
    pub x: usize,
    pub m: usize,
    pub neighbors: Vec<usize>,
    pub two_sphere: Vec<usize>,
    /// `p_{x y_i} = 1/d_x`.
    pub rates: Vec<f64>,
    pub q: Matrix,
    pub b0: Matrix,
    pub a: f64,
    pub omega: Vec<f64>,
    pub a_inf: Matrix,
    pub v0: Vec<f64>,
}

impl CurvatureMatrixBundle {
    /// `A_N = A_∞ − (2/N) v₀v₀ᵀ`.
    pub fn a_n(&self, n: Dimension) -> Matrix {
        self.a_inf.minus_outer(&self.v0, 2.0 * inv_dimension(n))
    }
}

/// Values of `a` at or below this are treated as zero (`0⁻¹ = 0`).
const A_ZERO: f64 = 1e-12;

pub fn curvature_matrix_bundle(g: &SignedGraph, x: usize) -> Result<CurvatureMatrixBundle> {
    if x >= g.n() {
        return Err(Error::VertexOutOfRange(x));
    }
    let rate = |a: usize, b: usize| if g.is_adjacent(a, b) { 1.0 / g.degree(a) as f64 } else { 0.0 };
    let sg = |a: usize, b: usize| g.sign(a, b).map_or(0.0, |s| s.value());
    let ys: Vec<usize> = g.neighbors(x).iter().map(|&(y, _)| y).collect();
    let zs = g.sphere(x, 2);
    let m = ys.len();

    // Σ_y p_xy p_yz and Σ_y p_xy p_yz σ_xy σ_yz for each z in the 2-sphere
    let den: Vec<f64> = zs.iter().map(|&z| ys.iter().map(|&y| rate(x, y) * rate(y, z)).sum()).collect();
    let num: Vec<f64> = zs
        .iter()
        .map(|&z| ys.iter().map(|&y| rate(x, y) * rate(y, z) * sg(x, y) * sg(y, z)).sum())
        .collect();

    let mut q = Matrix::zeros(m + 1, m + 1);
    q[(0, 0)] = 3.0 * ys.iter().map(|&y| rate(x, y) * rate(y, x)).sum::<f64>() + 1.0
        - zs.iter().enumerate().map(|(k, _)| num[k] * num[k] / den[k]).sum::<f64>();
    for (i, &yi) in ys.iter().enumerate() {
        let pxi = rate(x, yi);
        let mut q0 = ys
            .iter()
            .filter(|&&yj| yj != yi)
            .map(|&yj| rate(x, yj) * rate(yj, yi) * sg(x, yj) * sg(yj, yi))
            .sum::<f64>();
        q0 -= 2.0 * (rate(yi, x) + 1.0) * pxi * sg(x, yi);
        q0 += 2.0 * zs.iter().enumerate().map(|(k, &z)| num[k] * pxi * rate(yi, z) * sg(yi, z) / den[k]).sum::<f64>();
        q[(0, i + 1)] = q0;
        q[(i + 1, 0)] = q0;

        let mut qii = ys.iter().filter(|&&yj| yj != yi).map(|&yj| rate(x, yj) * rate(yj, yi)).sum::<f64>();
        qii += 2.0 * (pxi + 1.0) * pxi;
        qii -= 4.0 * zs.iter().enumerate().map(|(k, &z)| (pxi * rate(yi, z)).powi(2) / den[k]).sum::<f64>();
        q[(i + 1, i + 1)] = qii;

        for (j, &yj) in ys.iter().enumerate() {
            if j == i {
                continue;
            }
            let pxj = rate(x, yj);
            let mut qij = -2.0 * (pxi * rate(yi, yj) + pxj * rate(yj, yi)) * sg(yi, yj);
            qij += 2.0 * pxi * pxj * sg(x, yi) * sg(x, yj);
            qij -= 4.0
                * zs.iter()
                    .enumerate()
                    .map(|(k, &z)| pxi * rate(yi, z) * pxj * rate(yj, z) * sg(yi, z) * sg(yj, z) / den[k])
                    .sum::<f64>();
            q[(i + 1, j + 1)] = qij;
        }
    }
    let q = q.scale(0.25);

    let rates: Vec<f64> = ys.iter().map(|&y| rate(x, y)).collect();
    let mut b0 = Matrix::zeros(m + 1, m + 1);
    b0[(0, 0)] = 1.0;
    for (i, &y) in ys.iter().enumerate() {
        b0[(0, i + 1)] = sg(x, y);
        b0[(i + 1, i + 1)] = 1.0 / rates[i].sqrt();
    }
    let full = b0.matmul(&q).matmul(&b0.transpose()).scale(2.0);
    let a = full[(0, 0)];
    let omega: Vec<f64> = (1..=m).map(|i| full[(i, 0)]).collect();
    let block = full.drop_first();
    let a_inf = if a > A_ZERO { block.minus_outer(&omega, 1.0 / a) } else { block };
    let v0 = ys.iter().zip(&rates).map(|(&y, r)| r.sqrt() * sg(x, y)).collect();

    Ok(CurvatureMatrixBundle { x, m, neighbors: ys, two_sphere: zs, rates, q, b0, a, omega, a_inf, v0 })
}

pub fn a_n_matrix(g: &SignedGraph, x: usize, n: Dimension) -> Result<Matrix> {
    Ok(curvature_matrix_bundle(g, x)?.a_n(n))
}

/// `K_{G,σ,x}(N) = λ_min(A_N)`.
pub fn vertex_curvature(g: &SignedGraph, x: usize, n: Dimension) -> Result<f64> {
    min_eigenvalue(&a_n_matrix(g, x, n)?)
}

/// Full spectrum of the symmetrized `A_N` at `x`, ascending.
pub fn a_n_spectrum(g: &SignedGraph, x: usize, n: Dimension) -> Result<Vec<f64>> {
    Ok(symmetric_eigen(&a_n_matrix(g, x, n)?)?.values)
}

#[derive(Debug, Clone, Serialize)]
pub struct VertexCurvature {
    pub vertex: usize,
    /// `n` is `None` for `N = ∞`.
    pub n: Dimension,
    pub k: f64,
    pub a_n_spectrum: Vec<f64>,
}

#[derive(Debug, Clone, Serialize)]
pub struct CurvatureProfile {
    pub dimensions: Vec<Dimension>,
    /// `per_vertex[x][i]` is `K_x(dimensions[i])`.
    pub per_vertex: Vec<Vec<VertexCurvature>>,
    /// Graph curvature `min_x K_x(N)` per dimension.
    pub minimum: Vec<f64>,
}

pub fn curvature_profile(g: &SignedGraph, dimensions: &[Dimension]) -> Result<CurvatureProfile> {
    let per_vertex: Vec<Vec<VertexCurvature>> = (0..g.n())
        .into_par_iter()
        .map(|x| {
            let bundle = curvature_matrix_bundle(g, x)?;
            dimensions
                .iter()
                .map(|&n| {
                    let spec = symmetric_eigen(&bundle.a_n(n))?.values;
                    Ok(VertexCurvature { vertex: x, n, k: spec.first().copied().unwrap_or(f64::INFINITY), a_n_spectrum: spec })
                })
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    let minimum = (0..dimensions.len())
        .map(|i| per_vertex.iter().map(|row| row[i].k).fold(f64::INFINITY, f64::min))
        .collect();
    Ok(CurvatureProfile { dimensions: dimensions.to_vec(), per_vertex, minimum })
}

/// Graph curvature `min_x K_x(N)`.
pub fn graph_curvature(g: &SignedGraph, n: Dimension) -> Result<f64> {
    Ok(curvature_profile(g, &[n])?.minimum[0])
}

const PSD_TOL: f64 = -1e-11;
const BRACKET: (f64, f64) = (-8.0, 8.0);
const BISECTIONS: usize = 60;

/// Quadratic forms of `Γ₂^σ(·)(x)`, `Γ^σ(·)(x)` and the linear form `Δ^σ(·)(x)` on the 2-ball.
pub struct LocalForms {
    pub ball: Vec<usize>,
    pub gamma2: Matrix,
    pub gamma: Matrix,
    pub laplacian: Vec<f64>,
}

pub fn local_forms(g: &SignedGraph, x: usize) -> LocalForms {
    let ball = g.ball(x, 2);
    let n = g.n();
    let basis: Vec<Vec<f64>> = ball
        .iter()
        .map(|&v| {
            let mut e = vec![0.0; n];
            e[v] = 1.0;
            e
        })
        .collect();
    let k = ball.len();
    let mut m2 = Matrix::zeros(k, k);
    let mut m1 = Matrix::zeros(k, k);
    for i in 0..k {
        for j in i..k {
            let a = gamma2_bilinear(g, &basis[i], &basis[j], x);
            let b = gamma(g, &basis[i], &basis[j], x);
            m2[(i, j)] = a;
            m2[(j, i)] = a;
            m1[(i, j)] = b;
            m1[(j, i)] = b;
        }
    }
    let laplacian = basis.iter().map(|e| signed_laplacian(g, e, x)).collect();
    LocalForms { ball, gamma2: m2, gamma: m1, laplacian }
}

/// Largest `K` with `M_{Γ₂} − (1/N)vvᵀ − K M_Γ ⪰ 0`, by bisection on `[−8, 8]`.
pub fn cd_check_psd(g: &SignedGraph, x: usize, n: Dimension) -> Result<f64> {
    if x >= g.n() {
        return Err(Error::VertexOutOfRange(x));
    }
    let forms = local_forms(g, x);
    let base = forms.gamma2.minus_outer(&forms.laplacian, inv_dimension(n));
    let feasible = |k: f64| -> Result<bool> { Ok(min_eigenvalue(&base.sub(&forms.gamma.scale(k)))? >= PSD_TOL) };
    let (mut lo, mut hi) = BRACKET;
    if !feasible(lo)? || feasible(hi)? {
        return Err(Error::Bracket { vertex: x, lo, hi });
    }
    for _ in 0..BISECTIONS {
        let mid = 0.5 * (lo + hi);
        if feasible(mid)? {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(lo)
}

/// `Γ_{p,2}(f)(x) − (1/N)(Δ_p f(x))² − K Γ_p(f,f)(x)^{(2p−2)/p}`.
pub fn cd_p_defect(g: &SignedGraph, x: usize, p: Exponent, k: f64, n: Dimension, f: &[f64]) -> Result<f64> {
    let g2 = gamma_p2(g, p, f, x)?;
    let lap = p_laplacian(g, p, f, x);
    let gp = gamma_p(g, p, f, f, x);
    let q = p.get();
    Ok(g2 - inv_dimension(n) * lap * lap - k * gp.powf((2.0 * q - 2.0) / q))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct FalsifyOptions {
    pub starts: usize,
    pub iterations: usize,
    pub seed: u64,
}

impl Default for FalsifyOptions {
    fn default() -> Self {
        FalsifyOptions { starts: 64, iterations: 300, seed: 0xC0DE_0002 }
    }
}

/// A counterexample is a function with defect below this.
pub const COUNTEREXAMPLE_TOL: f64 = -1e-9;

#[derive(Debug, Clone, Serialize)]
#[serde(tag = "outcome", rename_all = "snake_case")]
pub enum FalsifyOutcome {
    Counterexample { function: Vec<f64>, defect: f64 },
    /// The inequality was not violated by any function tried. This is not a proof.
    NotFalsified { best_defect: f64, starts: usize },
}

impl FalsifyOutcome {
    pub fn is_counterexample(&self) -> bool {
        matches!(self, FalsifyOutcome::Counterexample { .. })
    }
}

/// Searches for `f` on the 2-ball of `x` violating `CD_p^σ(K,N)` at `x`.
///
/// The defect is homogeneous of degree `2p−2`, so the search runs on the unit
/// sphere of the ball coordinates. For `1 < p < 2` functions with a vanishing
/// signed difference at `x` are outside the domain and are skipped.
pub fn cd_p_falsify(
    g: &SignedGraph,
    x: usize,
    p: Exponent,
    k: f64,
    n: Dimension,
    options: &FalsifyOptions,
) -> Result<FalsifyOutcome> {
    if x >= g.n() {
        return Err(Error::VertexOutOfRange(x));
    }
    if options.starts == 0 {
        return Err(Error::InvalidParameter("at least one start is required".into()));
    }
    let ball = g.ball(x, 2);
    let dim = ball.len();
    let embed = |c: &[f64]| -> Vec<f64> {
        let mut f = vec![0.0; g.n()];
        for (i, &v) in ball.iter().enumerate() {
            f[v] = c[i];
        }
        f
    };
    let unit = |mut c: Vec<f64>| -> Option<Vec<f64>> {
        let norm = c.iter().map(|v| v * v).sum::<f64>().sqrt();
        if norm == 0.0 || !norm.is_finite() {
            return None;
        }
        c.iter_mut().for_each(|v| *v /= norm);
        Some(c)
    };
    let defect = |c: &[f64]| -> Option<f64> { cd_p_defect(g, x, p, k, n, &embed(c)).ok() };

    let runs: Vec<Option<(f64, Vec<f64>)>> = (0..options.starts)
        .into_par_iter()
        .map(|s| {
            let mut rng = ChaCha8Rng::seed_from_u64(options.seed.wrapping_add(s as u64));
            let mut c = unit((0..dim).map(|_| rng.gen_range(-1.0..1.0)).collect())?;
            let mut val = defect(&c)?;
            let mut step = 0.1;
            let h = 1e-7;
            for _ in 0..options.iterations {
                if val < COUNTEREXAMPLE_TOL {
                    break;
                }
                let grad: Vec<f64> = (0..dim)
                    .map(|i| {
                        let mut a = c.clone();
                        let mut b = c.clone();
                        a[i] += h;
                        b[i] -= h;
                        match (defect(&a), defect(&b)) {
                            (Some(fa), Some(fb)) => (fa - fb) / (2.0 * h),
                            _ => 0.0,
                        }
                    })
                    .collect();
                let mut moved = false;
                while step > 1e-12 {
                    let trial = c.iter().zip(&grad).map(|(a, b)| a - step * b).collect();
                    if let Some(t) = unit(trial) {
                        if let Some(v) = defect(&t) {
                            if v < val {
                                c = t;
                                val = v;
                                moved = true;
                                step *= 2.0;
                                break;
                            }
                        }
                    }
                    step *= 0.5;
                }
                if !moved {
                    break;
                }
            }
            Some((val, c))
        })
        .collect();

    let best = runs
        .into_iter()
        .flatten()
        .enumerate()
        .min_by(|a, b| a.1 .0.total_cmp(&b.1 .0).then(a.0.cmp(&b.0)))
        .map(|(_, r)| r);
    Ok(match best {
        Some((val, c)) if val < COUNTEREXAMPLE_TOL => FalsifyOutcome::Counterexample { function: embed(&c), defect: val },
        Some((val, _)) => FalsifyOutcome::NotFalsified { best_defect: val, starts: options.starts },
        None => FalsifyOutcome::NotFalsified { best_defect: f64::INFINITY, starts: options.starts },
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;
    use crate::graph::{SignPattern, SwitchingFunction};
    use proptest::prelude::*;

    const INF: Dimension = None;

    #[test]
    fn signed_and_unsigned_triangle() {
        let s = catalog::signed_triangle();
        let k3 = SignedGraph::complete(3, SignPattern::AllPositive).unwrap();
        for x in 0..3 {
            assert!((vertex_curvature(&s, x, INF).unwrap() - 0.25).abs() < 1e-12);
            assert!((vertex_curvature(&k3, x, INF).unwrap() - 1.25).abs() < 1e-12);
        }
    }

    #[test]
    fn k2_bundle() {
        let k2 = SignedGraph::hypercube(1).unwrap();
        let b = curvature_matrix_bundle(&k2, 0).unwrap();
        assert!(b.two_sphere.is_empty());
        assert_eq!(b.a, 0.0);
        assert_eq!(b.a_inf.to_rows(), vec![vec![2.0]]);
    }

    #[test]
    fn b0_structure() {
        let g = catalog::chorded_heptagon();
        let b = curvature_matrix_bundle(&g, 3).unwrap();
        // neighbors of vertex 4 (index 3) are 3 (+) and 5 (−)
        assert_eq!(b.b0.row(0), &[1.0, 1.0, -1.0]);
        assert!((b.b0[(1, 1)] - 2f64.sqrt()).abs() < 1e-15);
        assert!(b.q.asymmetry() < 1e-12);
    }

    #[test]
    fn hypercube_one_negative_q_matrix() {
        for n in 2..=5usize {
            let g = SignedGraph::hypercube_one_negative(n).unwrap();
            let b = curvature_matrix_bundle(&g, 0).unwrap();
            let nf = n as f64;
            let c = 2.0 / (nf * nf);
            // 4Q(x) = (2/n²)·W with W[0] = (3n−1, n+1, −3, …, −3); the negative edge leads to y₁
            let four_q = b.q.scale(4.0);
            assert!((four_q[(0, 0)] - c * (3.0 * nf - 1.0)).abs() < 1e-12);
            assert!((four_q[(0, 1)] - c * (nf + 1.0)).abs() < 1e-12);
            for j in 2..=n {
                assert!((four_q[(0, j)] + c * 3.0).abs() < 1e-12);
            }
            let spec = a_n_spectrum(&g, 0, INF).unwrap();
            assert!((spec[0] - (2.0 - nf) / nf).abs() < 1e-12);
            for v in &spec[1..] {
                assert!((v - 2.0 / nf).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn routes_agree_for_finite_dimension() {
        let g = catalog::chorded_heptagon().with_all_positive();
        for n in [Some(2.0), Some(10.0), INF] {
            for x in 0..7 {
                let a = vertex_curvature(&g, x, n).unwrap();
                let b = cd_check_psd(&g, x, n).unwrap();
                assert!((a - b).abs() < 1e-7, "x={x} N={n:?}: {a} vs {b}");
            }
        }
    }

    #[test]
    fn dimension_two_lower_bound() {
        let g = catalog::chorded_heptagon();
        for x in 0..7 {
            assert!(cd_check_psd(&g, x, Some(2.0)).unwrap() >= -1.0 + 2.0 / 3.0 - 1e-9);
        }
    }

    #[test]
    fn falsifier_consistent_with_quadratic_case() {
        let g = catalog::signed_triangle();
        let p = Exponent::new(2.0).unwrap();
        let opts = FalsifyOptions { starts: 16, ..Default::default() };
        let k = vertex_curvature(&g, 0, INF).unwrap();
        assert!(cd_p_falsify(&g, 0, p, k + 0.05, INF, &opts).unwrap().is_counterexample());
        assert!(!cd_p_falsify(&g, 0, p, k - 1e-6, INF, &opts).unwrap().is_counterexample());
    }

    #[test]
    fn defect_is_homogeneous() {
        let g = catalog::chorded_heptagon();
        let f: Vec<f64> = (0..7).map(|i| (i as f64 * 0.7).sin() + 0.1).collect();
        for q in [1.5, 2.0, 3.0] {
            let p = Exponent::new(q).unwrap();
            let a = cd_p_defect(&g, 1, p, 0.3, Some(5.0), &f).unwrap();
            let c = 2.5;
            let cf: Vec<f64> = f.iter().map(|v| c * v).collect();
            let b = cd_p_defect(&g, 1, p, 0.3, Some(5.0), &cf).unwrap();
            assert!((b - c.powf(2.0 * q - 2.0) * a).abs() < 1e-10 * b.abs().max(1.0));
        }
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(48))]
        #[test]
        fn curvature_is_switching_invariant(mask in 0u64..128, x in 0usize..7) {
            let g = catalog::chorded_heptagon();
            let h = g.switch(&SwitchingFunction::from_mask(7, mask)).unwrap();
            for n in [Some(3.0), INF] {
                let a = vertex_curvature(&g, x, n).unwrap();
                let b = vertex_curvature(&h, x, n).unwrap();
                prop_assert!((a - b).abs() < 1e-9);
            }
        }

        #[test]
        fn curvature_monotone_in_dimension(x in 0usize..7, n1 in 1.0f64..50.0, dn in 0.0f64..50.0) {
            let g = catalog::chorded_heptagon();
            let a = vertex_curvature(&g, x, Some(n1)).unwrap();
            let b = vertex_curvature(&g, x, Some(n1 + dn)).unwrap();
            let c = vertex_curvature(&g, x, INF).unwrap();
            prop_assert!(a <= b + 1e-12 && b <= c + 1e-12);
        }
    }
}
