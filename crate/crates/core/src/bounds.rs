//! Inequality certificates evaluated on concrete graphs.
//!
//! Each check produces a [`BoundReport`] holding both sides, the inputs that
//! went into them and whether the theorem's hypothesis was certified. A check
//! whose hypothesis is certified and whose inequality fails is a defect.

use std::f64::consts::LN_2;

use serde::Serialize;

use crate::combinatorics::{cheeger_constant, frustration_index, DEFAULT_CHEEGER_LIMIT, DEFAULT_FRUSTRATION_LIMIT};
use crate::curvature::{cd_p_falsify, graph_curvature, FalsifyOptions};
use crate::error::{Error, Result};
use crate::graph::SignedGraph;
use crate::operators::{gradient_sq, Exponent, SignChoice};
use crate::report::fmt_num;
use crate::spectral::{all_negative_spectrum_relation, first_from_spectrum, p_spectral_gap, spectrum, PEigenResult, PSolverOptions};
use crate::{inv_dimension, Dimension, INEQUALITY_TOL};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Provenance {
    Computed,
    Supplied,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Input {
    pub name: &'static str,
    pub value: f64,
    pub provenance: Provenance,
}

fn computed(name: &'static str, value: f64) -> Input {
    Input { name, value, provenance: Provenance::Computed }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Orientation {
    /// `lhs ≥ rhs`
    AtLeast,
    /// `lhs ≤ rhs`
    AtMost,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "status", content = "detail", rename_all = "snake_case")]
pub enum Hypothesis {
    /// The theorem has no hypothesis beyond the graph being finite and connected.
    Unconditional,
    Certified,
    NotCertified(String),
    /// A randomized search found no counterexample; not a proof.
    NotFalsified,
    Falsified,
    /// The inequality is only stated for a subclass this input is outside of.
    NotApplicable(String),
}

impl Hypothesis {
    fn binding(&self) -> bool {
        matches!(self, Hypothesis::Unconditional | Hypothesis::Certified | Hypothesis::NotFalsified)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Pass,
    Fail,
    /// Holds trivially (e.g. a lower bound with nonpositive right-hand side).
    Vacuous,
    /// Evaluated although the hypothesis is not established.
    Informational,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BoundReport {
    pub theorem: &'static str,
    pub detail: String,
    pub inputs: Vec<Input>,
    pub lhs: f64,
    pub rhs: f64,
    pub orientation: Orientation,
    pub margin: f64,
    pub satisfied: bool,
    pub hypothesis: Hypothesis,
    pub status: Status,
}

impl BoundReport {
    fn new(
        theorem: &'static str,
        detail: impl Into<String>,
        inputs: Vec<Input>,
        lhs: f64,
        orientation: Orientation,
        rhs: f64,
        hypothesis: Hypothesis,
    ) -> Self {
        let margin = match orientation {
            Orientation::AtLeast => lhs - rhs,
            Orientation::AtMost => rhs - lhs,
        };
        let satisfied = margin >= -INEQUALITY_TOL;
        let status = if !hypothesis.binding() {
            Status::Informational
        } else if satisfied {
            Status::Pass
        } else {
            Status::Fail
        };
        BoundReport { theorem, detail: detail.into(), inputs, lhs, rhs, orientation, margin, satisfied, hypothesis, status }
    }

    fn vacuous_if(mut self, cond: bool) -> Self {
        if cond && self.status == Status::Pass {
            self.status = Status::Vacuous;
        }
        self
    }

    /// Binding hypothesis and violated inequality.
    pub fn is_failure(&self) -> bool {
        self.status == Status::Fail
    }
}

/// `⌈t/2⌉` for a nonnegative integer `t`.
fn half_up(t: usize) -> usize {
    t.div_ceil(2)
}

/// `D⌈D/2⌉` as a real number.
pub fn path_factor(d: usize) -> f64 {
    (d * half_up(d)) as f64
}

/// `(N−1)/N`, equal to `1` for `N = ∞`.
fn ratio_n(n: Dimension) -> f64 {
    1.0 - inv_dimension(n)
}

/// `(ε/((2+ε)² − 4/N), 2(2+ε)/((2+ε)² − 4/N))`.
pub fn eigen_coefficients(eps: f64, n: Dimension) -> Result<(f64, f64)> {
    if !(eps > 0.0 && eps.is_finite()) {
        return Err(Error::InvalidParameter(format!("epsilon must be positive, got {eps}")));
    }
    let den = (2.0 + eps).powi(2) - 4.0 * inv_dimension(n);
    if den <= 0.0 {
        return Err(Error::Precondition(format!("N must exceed 4/(2+ε)² = {}", 4.0 / (2.0 + eps).powi(2))));
    }
    Ok((eps / den, 2.0 * (2.0 + eps) / den))
}

/// `ε* = 2√((N−1)/N)`, maximizing the first coefficient.
pub fn optimal_epsilon(n: Dimension) -> f64 {
    2.0 * ratio_n(n).sqrt()
}

/// `1/(4(1 + √((N−1)/N)))`.
pub fn cd0n_coefficient(n: Dimension) -> f64 {
    1.0 / (4.0 * (1.0 + ratio_n(n).sqrt()))
}

fn fmt_dim(n: Dimension) -> String {
    n.map_or_else(|| "inf".to_string(), fmt_num)
}

/// Quantities shared by the checks.
#[derive(Debug, Clone, Serialize)]
pub struct GraphFacts {
    pub dimension: Dimension,
    pub max_degree: usize,
    pub diameter: usize,
    pub volume: usize,
    pub balanced: bool,
    pub lambda: f64,
    pub multiplicity: usize,
    pub eigenfunctions: Vec<Vec<f64>>,
    /// Curvature used for `CD^σ(K,N)`.
    pub k: f64,
    pub k_provenance: Provenance,
    /// Exact graph curvature at `N`.
    pub k_computed: f64,
    /// Exact graph curvature at `N = ∞`.
    pub k_inf: f64,
}

impl GraphFacts {
    pub fn compute(g: &SignedGraph, n: Dimension) -> Result<Self> {
        let spec = spectrum(g, SignChoice::Given)?;
        let first = first_from_spectrum(&spec)?;
        let k_computed = graph_curvature(g, n)?;
        let k_inf = if n.is_none() { k_computed } else { graph_curvature(g, None)? };
        Ok(GraphFacts {
            dimension: n,
            max_degree: g.max_degree(),
            diameter: g.diameter(),
            volume: g.volume(),
            balanced: spec.balanced,
            lambda: first.lambda,
            multiplicity: first.multiplicity,
            eigenfunctions: first.eigenfunctions,
            k: k_computed,
            k_provenance: Provenance::Computed,
            k_computed,
            k_inf,
        })
    }

    /// Uses a caller-supplied `K`; it is certified only if it does not exceed the exact value.
    pub fn with_supplied_k(mut self, k: f64) -> Self {
        self.k = k;
        self.k_provenance = Provenance::Supplied;
        self
    }

    fn k_input(&self) -> Input {
        Input { name: "K", value: self.k, provenance: self.k_provenance }
    }

    fn cd_hypothesis(&self) -> Hypothesis {
        if self.k <= self.k_computed + INEQUALITY_TOL {
            Hypothesis::Certified
        } else {
            Hypothesis::NotCertified(format!("supplied K = {} exceeds the curvature {}", self.k, self.k_computed))
        }
    }

    fn improved_applies(&self) -> bool {
        self.multiplicity >= 2 || self.balanced
    }

    fn base_inputs(&self) -> Vec<Input> {
        vec![
            computed("lambda", self.lambda),
            self.k_input(),
            computed("N", self.dimension.unwrap_or(f64::INFINITY)),
            computed("d", self.max_degree as f64),
            computed("D", self.diameter as f64),
        ]
    }
}

/// Pointwise gradient bound for eigenfunctions of `λ^σ`, one report per eigenfunction and `α`.
pub fn harnack_check(g: &SignedGraph, facts: &GraphFacts, alphas: &[f64]) -> Result<Vec<BoundReport>> {
    let lam = facts.lambda;
    if lam.abs() < 1e-12 {
        return Err(Error::Precondition("λ^σ must be nonzero".into()));
    }
    let k = facts.k;
    let inv_n = inv_dimension(facts.dimension);
    let threshold = 2.0 - 2.0 * k / lam;
    let mut out = Vec::new();
    for &alpha in alphas {
        if alpha <= threshold {
            return Err(Error::InvalidParameter(format!("alpha = {alpha} must exceed 2 − 2K/λ = {threshold}")));
        }
        let factor = ((alpha * alpha - 4.0 * inv_n) * lam + 2.0 * k * alpha) / ((alpha - 2.0) * lam + 2.0 * k) * lam;
        for (i, f) in facts.eigenfunctions.iter().enumerate() {
            let max_f2 = f.iter().map(|v| v * v).fold(0.0, f64::max);
            let lhs = (0..g.n())
                .map(|x| gradient_sq(g, f, x) + alpha * lam * f[x] * f[x])
                .fold(f64::NEG_INFINITY, f64::max);
            let mut inputs = facts.base_inputs();
            inputs.push(computed("alpha", alpha));
            out.push(BoundReport::new(
                "harnack",
                format!("eigenfunction {i}, alpha = {}", fmt_num(alpha)),
                inputs,
                lhs,
                Orientation::AtMost,
                factor * max_f2,
                facts.cd_hypothesis(),
            ));
        }
    }
    Ok(out)
}

/// `|∇^σ f|² ≤ (((2+ε)² − 4/N)λ/ε − (4/ε + 2)K) max f²`.
pub fn gradient_estimate_check(g: &SignedGraph, facts: &GraphFacts, epsilons: &[f64]) -> Result<Vec<BoundReport>> {
    let lam = facts.lambda;
    let inv_n = inv_dimension(facts.dimension);
    let mut out = Vec::new();
    for &eps in epsilons {
        if eps.is_nan() || eps <= 0.0 {
            return Err(Error::InvalidParameter(format!("epsilon must be positive, got {eps}")));
        }
        let factor = ((2.0 + eps).powi(2) - 4.0 * inv_n) * lam / eps - (4.0 / eps + 2.0) * facts.k;
        for (i, f) in facts.eigenfunctions.iter().enumerate() {
            let max_f2 = f.iter().map(|v| v * v).fold(0.0, f64::max);
            let lhs = (0..g.n()).map(|x| gradient_sq(g, f, x)).fold(f64::NEG_INFINITY, f64::max);
            let mut inputs = facts.base_inputs();
            inputs.push(computed("epsilon", eps));
            out.push(BoundReport::new(
                "gradient_estimate",
                format!("eigenfunction {i}, epsilon = {}", fmt_num(eps)),
                inputs,
                lhs,
                Orientation::AtMost,
                factor * max_f2,
                facts.cd_hypothesis(),
            ));
        }
    }
    Ok(out)
}

/// Lower bounds on `λ^σ` with the `(D+1)` path factor, and with `D` when `λ^σ` is
/// multiple or the graph is balanced.
pub fn eigenvalue_lower_bound(facts: &GraphFacts, eps: f64) -> Result<Vec<BoundReport>> {
    let (c1, c2) = eigen_coefficients(eps, facts.dimension)?;
    let d = facts.max_degree as f64;
    let dd = facts.diameter;
    let general = c1 / (d * path_factor(dd + 1)) + c2 * facts.k;
    let improved = c1 / (d * path_factor(dd)) + c2 * facts.k;
    let mut inputs = facts.base_inputs();
    inputs.push(computed("epsilon", eps));
    inputs.push(computed("multiplicity", facts.multiplicity as f64));
    let improved_hyp = if facts.improved_applies() {
        facts.cd_hypothesis()
    } else {
        Hypothesis::NotApplicable("λ^σ is simple and the graph is unbalanced".into())
    };
    Ok(vec![
        BoundReport::new(
            "eigenvalue_estimate",
            format!("general, epsilon = {}", fmt_num(eps)),
            inputs.clone(),
            facts.lambda,
            Orientation::AtLeast,
            general,
            facts.cd_hypothesis(),
        )
        .vacuous_if(general <= 0.0),
        BoundReport::new(
            "eigenvalue_estimate",
            format!("improved, epsilon = {}", fmt_num(eps)),
            inputs,
            facts.lambda,
            Orientation::AtLeast,
            improved,
            improved_hyp,
        )
        .vacuous_if(improved <= 0.0),
    ])
}

/// Diameter bounds from `ε = 2`, `N = ∞`: `(D+1)⌈(D+1)/2⌉ ≥ 1/(4d(2λ^σ − K))`, and the `D` form.
pub fn diameter_lower_bound(facts: &GraphFacts) -> Result<Vec<BoundReport>> {
    let k = facts.k_inf;
    let gap = 2.0 * facts.lambda - k;
    if gap <= 0.0 {
        return Err(Error::Precondition(format!("2λ^σ − K = {gap} is not positive; the bound is vacuous")));
    }
    let rhs = 1.0 / (4.0 * facts.max_degree as f64 * gap);
    let inputs = vec![
        computed("lambda", facts.lambda),
        computed("K", k),
        computed("d", facts.max_degree as f64),
        computed("D", facts.diameter as f64),
    ];
    let improved_hyp = if facts.improved_applies() {
        Hypothesis::Certified
    } else {
        Hypothesis::NotApplicable("λ^σ is simple and the graph is unbalanced".into())
    };
    Ok(vec![
        BoundReport::new(
            "diameter_bound",
            "(D+1)ceil((D+1)/2)",
            inputs.clone(),
            path_factor(facts.diameter + 1),
            Orientation::AtLeast,
            rhs,
            Hypothesis::Certified,
        ),
        BoundReport::new("diameter_bound", "D ceil(D/2)", inputs, path_factor(facts.diameter), Orientation::AtLeast, rhs, improved_hyp),
    ])
}

/// `8√((1 + √((N−1)/N)) ln 2) · d ι √((D+1)⌈(D+1)/2⌉)`.
pub fn volume_rhs(d: usize, diameter: usize, iota: usize, n: Dimension) -> f64 {
    8.0 * ((1.0 + ratio_n(n).sqrt()) * LN_2).sqrt() * d as f64 * iota as f64 * path_factor(diameter + 1).sqrt()
}

fn check_volume_dimension(n: Dimension) -> Result<()> {
    match n {
        Some(v) if v <= 1.0 => Err(Error::InvalidParameter(format!("N must exceed 1, got {v}"))),
        _ => Ok(()),
    }
}

/// `vol(G) ≤ volume_rhs` for unbalanced graphs satisfying `CD^σ(0,N)`.
pub fn volume_bound(facts: &GraphFacts, iota: usize) -> Result<BoundReport> {
    check_volume_dimension(facts.dimension)?;
    if facts.balanced || iota == 0 {
        return Err(Error::Precondition("the volume bound needs an unbalanced graph".into()));
    }
    let hyp = if facts.k_computed >= -INEQUALITY_TOL {
        Hypothesis::Certified
    } else {
        Hypothesis::NotCertified(format!("CD(0,N) fails: curvature {}", facts.k_computed))
    };
    let inputs = vec![
        computed("vol", facts.volume as f64),
        computed("iota", iota as f64),
        computed("d", facts.max_degree as f64),
        computed("D", facts.diameter as f64),
        computed("N", facts.dimension.unwrap_or(f64::INFINITY)),
    ];
    Ok(BoundReport::new(
        "volume",
        "",
        inputs,
        facts.volume as f64,
        Orientation::AtMost,
        volume_rhs(facts.max_degree, facts.diameter, iota, facts.dimension),
        hyp,
    ))
}

/// Contrapositive use: `CD^σ(0,N)` is excluded whenever `vol` exceeds the bound.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Exclusion {
    pub label: String,
    pub inputs: Vec<Input>,
    pub volume: f64,
    pub bound: f64,
    pub excluded: bool,
}

pub fn volume_exclusion(label: impl Into<String>, inputs: Vec<Input>, vol: usize, d: usize, diameter: usize, iota: usize, n: Dimension) -> Result<Exclusion> {
    check_volume_dimension(n)?;
    let bound = volume_rhs(d, diameter, iota, n);
    Ok(Exclusion { label: label.into(), inputs, volume: vol as f64, bound, excluded: vol as f64 > bound + INEQUALITY_TOL })
}

/// Applies the exclusion to `Q^n` with one negative edge, `n = 2..=n_max`.
///
/// `ι` is computed exactly while the cube fits the frustration limit and
/// supplied as `2` beyond it.
pub fn hypercube_exclusion_scan(n_max: usize, n: Dimension) -> Result<Vec<Exclusion>> {
    (2..=n_max)
        .map(|k| {
            let (iota, prov) = if 1usize << k <= DEFAULT_FRUSTRATION_LIMIT {
                let g = SignedGraph::hypercube_one_negative(k)?;
                (frustration_index(&g, DEFAULT_FRUSTRATION_LIMIT)?.iota, Provenance::Computed)
            } else {
                (2, Provenance::Supplied)
            };
            let inputs = vec![
                computed("n", k as f64),
                computed("vol", (k << k) as f64),
                Input { name: "iota", value: iota as f64, provenance: prov },
            ];
            volume_exclusion(format!("Q^{k} one negative edge"), inputs, k << k, k, k, iota, n)
        })
        .collect()
}

/// `λ^σ ≤ 16 ln 2 · d (h^σ)²` under `CD^σ(0,∞)`.
pub fn buser_check(facts: &GraphFacts, h: f64) -> BoundReport {
    let hyp = if facts.balanced {
        Hypothesis::NotApplicable("balanced graph: evaluated informationally".into())
    } else if facts.k_inf >= -INEQUALITY_TOL {
        Hypothesis::Certified
    } else {
        Hypothesis::NotCertified(format!("CD(0,∞) fails: curvature {}", facts.k_inf))
    };
    let inputs = vec![computed("lambda", facts.lambda), computed("h", h), computed("d", facts.max_degree as f64)];
    BoundReport::new("buser", "", inputs, facts.lambda, Orientation::AtMost, 16.0 * LN_2 * facts.max_degree as f64 * h * h, hyp)
}

/// `((N−1)/N) K ≤ λ^σ`.
pub fn lichnerowicz_check(facts: &GraphFacts) -> BoundReport {
    let rhs = ratio_n(facts.dimension) * facts.k;
    BoundReport::new("lichnerowicz", "", facts.base_inputs(), facts.lambda, Orientation::AtLeast, rhs, facts.cd_hypothesis())
        .vacuous_if(rhs <= 0.0)
}

/// `λ_p ≥ (1/vol)^{(p−2)/2} (NK/(N−1))^{p/2}` under `CD_p^σ(K,N)`.
///
/// `k_p` is always a supplied value; `hypothesis` records what is known about it.
pub fn p_lichnerowicz_check(g: &SignedGraph, p: Exponent, k_p: f64, n: Dimension, lambda_p: f64, hypothesis: Hypothesis) -> Result<BoundReport> {
    let q = p.get();
    if q < 2.0 {
        return Err(Error::InvalidParameter(format!("p must be at least 2, got {q}")));
    }
    check_volume_dimension(n)?;
    let vol = g.volume() as f64;
    let nk = k_p / ratio_n(n);
    let rhs = if nk > 0.0 { (1.0 / vol).powf((q - 2.0) / 2.0) * nk.powf(q / 2.0) } else { 0.0 };
    let inputs = vec![
        computed("lambda_p", lambda_p),
        Input { name: "K_p", value: k_p, provenance: Provenance::Supplied },
        computed("N", n.unwrap_or(f64::INFINITY)),
        computed("p", q),
        computed("vol", vol),
    ];
    Ok(BoundReport::new("p_lichnerowicz", format!("p = {q}"), inputs, lambda_p, Orientation::AtLeast, rhs, hypothesis)
        .vacuous_if(k_p <= 0.0))
}

/// Falsifier-based status of `CD_p^σ(K,N)` over all vertices.
pub fn cd_p_hypothesis(g: &SignedGraph, p: Exponent, k: f64, n: Dimension, options: &FalsifyOptions) -> Result<Hypothesis> {
    for x in 0..g.n() {
        if cd_p_falsify(g, x, p, k, n, options)?.is_counterexample() {
            return Ok(Hypothesis::Falsified);
        }
    }
    Ok(Hypothesis::NotFalsified)
}

/// `λ_p ≥ 1/((D+1)^{p−1} vol(G))`.
pub fn p_diameter_volume_bound(g: &SignedGraph, result: &PEigenResult) -> BoundReport {
    let p = result.p;
    let vol = g.volume() as f64;
    let dd = g.diameter() as f64;
    let inputs = vec![computed("lambda_p", result.lambda_p), computed("p", p), computed("D", dd), computed("vol", vol)];
    BoundReport::new(
        "p_eigenvalue_estimate",
        format!("p = {p}"),
        inputs,
        result.lambda_p,
        Orientation::AtLeast,
        1.0 / ((dd + 1.0).powf(p - 1.0) * vol),
        Hypothesis::Unconditional,
    )
}

/// `λ_p ≥ ½ (2/(p vol(G)))^p`.
pub fn p_volume_only_bound(g: &SignedGraph, result: &PEigenResult) -> BoundReport {
    let p = result.p;
    let vol = g.volume() as f64;
    let inputs = vec![computed("lambda_p", result.lambda_p), computed("p", p), computed("vol", vol)];
    BoundReport::new(
        "p_volume_estimate",
        format!("p = {p}"),
        inputs,
        result.lambda_p,
        Orientation::AtLeast,
        0.5 * (2.0 / (p * vol)).powf(p),
        Hypothesis::Unconditional,
    )
}

/// Two-sided bounds for the all-positive Laplacian of a triangle-free graph satisfying `CD(0,N)`.
///
/// Bipartite graphs get the symmetric-spectrum check instead.
pub fn two_sided_liyau(g: &SignedGraph, n: Dimension) -> Result<Vec<BoundReport>> {
    check_volume_dimension(n)?;
    if g.has_triangle() {
        return Err(Error::Precondition("the graph contains a triangle".into()));
    }
    let rel = all_negative_spectrum_relation(g)?;
    if rel.bipartite {
        let nv = rel.positive.len();
        let dev = (0..nv).map(|i| (rel.positive[i] - (2.0 - rel.positive[nv - 1 - i])).abs()).fold(0.0, f64::max);
        return Ok(vec![BoundReport::new(
            "bipartite_symmetry",
            "lambda_i = 2 - lambda_{|V|-i+1}",
            vec![computed("max_deviation", dev)],
            dev,
            Orientation::AtMost,
            0.0,
            Hypothesis::Unconditional,
        )]);
    }
    let pos = g.with_all_positive();
    let neg = g.with_all_negative();
    let k_pos = graph_curvature(&pos, n)?;
    let k_neg = graph_curvature(&neg, n)?;
    let hyp = |k: f64| {
        if k >= -INEQUALITY_TOL {
            Hypothesis::Certified
        } else {
            Hypothesis::NotCertified(format!("CD(0,{}) fails: curvature {k}", fmt_dim(n)))
        }
    };
    let d = g.max_degree();
    let dd = g.diameter();
    let c = cd0n_coefficient(n);
    let nv = rel.positive.len();
    let lambda2 = rel.positive[1];
    let lambda_max = rel.positive[nv - 1];
    let inputs = |k: f64| {
        vec![
            computed("lambda_2", lambda2),
            computed("lambda_max", lambda_max),
            computed("K", k),
            computed("d", d as f64),
            computed("D", dd as f64),
            computed("N", n.unwrap_or(f64::INFINITY)),
        ]
    };
    Ok(vec![
        BoundReport::new(
            "two_sided_liyau",
            "lower: lambda_2",
            inputs(k_pos),
            lambda2,
            Orientation::AtLeast,
            c / (d as f64 * path_factor(dd)),
            hyp(k_pos),
        ),
        BoundReport::new(
            "two_sided_liyau",
            "upper: lambda_max",
            inputs(k_neg),
            lambda_max,
            Orientation::AtMost,
            2.0 - c / (d as f64 * path_factor(dd + 1)),
            hyp(k_neg),
        ),
    ])
}

/// Both monotonicity inequalities for each adjacent pair of an ascending grid.
///
/// A failure of the first points at the larger-p estimate, a failure of the
/// second at the smaller-p one; either means the solver underperformed.
pub fn monotonicity_check(results: &[PEigenResult]) -> Result<Vec<BoundReport>> {
    if results.windows(2).any(|w| w[0].p > w[1].p) {
        return Err(Error::InvalidParameter("p grid must be ascending".into()));
    }
    let mut out = Vec::new();
    for w in results.windows(2) {
        let (a, b) = (&w[0], &w[1]);
        let inputs = vec![computed("p", a.p), computed("q", b.p), computed("lambda_p", a.lambda_p), computed("lambda_q", b.lambda_p)];
        out.push(BoundReport::new(
            "monotonicity",
            format!("2^-p lambda_p >= 2^-q lambda_q, p = {}, q = {}", a.p, b.p),
            inputs.clone(),
            2f64.powf(-a.p) * a.lambda_p,
            Orientation::AtLeast,
            2f64.powf(-b.p) * b.lambda_p,
            Hypothesis::Unconditional,
        ));
        out.push(BoundReport::new(
            "monotonicity",
            format!("p (2 lambda_p)^(1/p) <= q (2 lambda_q)^(1/q), p = {}, q = {}", a.p, b.p),
            inputs,
            a.p * (2.0 * a.lambda_p).powf(1.0 / a.p),
            Orientation::AtMost,
            b.p * (2.0 * b.lambda_p).powf(1.0 / b.p),
            Hypothesis::Unconditional,
        ));
    }
    Ok(out)
}

#[derive(Debug, Clone, Serialize)]
pub struct SuiteConfig {
    pub dimension: Dimension,
    /// Offsets added to the Harnack threshold `2 − 2K/λ`.
    pub alpha_offsets: Vec<f64>,
    /// Explicit Harnack parameters; replaces the offsets when set.
    pub alphas: Option<Vec<f64>>,
    pub epsilons: Vec<f64>,
    pub p_grid: Vec<f64>,
    pub solver: PSolverOptions,
    pub frustration_limit: usize,
    pub cheeger_limit: usize,
    pub supplied_k: Option<f64>,
    /// `K_p` for the p-curvature form at every `p > 2` of the grid.
    pub supplied_kp: Option<f64>,
    pub falsify: FalsifyOptions,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        SuiteConfig {
            dimension: None,
            alpha_offsets: vec![0.5, 1.0, 3.0],
            alphas: None,
            epsilons: vec![0.5, 1.0, 2.0, 4.0],
            p_grid: vec![1.5, 2.0, 3.0],
            solver: PSolverOptions::default(),
            frustration_limit: DEFAULT_FRUSTRATION_LIMIT,
            cheeger_limit: DEFAULT_CHEEGER_LIMIT,
            supplied_k: None,
            supplied_kp: None,
            falsify: FalsifyOptions::default(),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct Skipped {
    pub check: &'static str,
    pub reason: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct SuiteReport {
    pub facts: GraphFacts,
    pub reports: Vec<BoundReport>,
    pub skipped: Vec<Skipped>,
}

impl SuiteReport {
    pub fn failures(&self) -> impl Iterator<Item = &BoundReport> {
        self.reports.iter().filter(|r| r.is_failure())
    }
}

/// Runs every applicable check; inapplicable ones are listed with the reason.
pub fn run_suite(g: &SignedGraph, config: &SuiteConfig) -> Result<SuiteReport> {
    let mut facts = GraphFacts::compute(g, config.dimension)?;
    if let Some(k) = config.supplied_k {
        facts = facts.with_supplied_k(k);
    }
    let mut reports = Vec::new();
    let mut skipped = Vec::new();
    let mut note = |check: &'static str, r: Result<Vec<BoundReport>>, reports: &mut Vec<BoundReport>| -> Result<()> {
        match r {
            Ok(v) => reports.extend(v),
            Err(e @ (Error::Precondition(_) | Error::InvalidParameter(_) | Error::SizeLimit { .. })) => {
                skipped.push(Skipped { check, reason: e.to_string() })
            }
            Err(e) => return Err(e),
        }
        Ok(())
    };

    let threshold = 2.0 - 2.0 * facts.k / facts.lambda;
    let alphas: Vec<f64> = match &config.alphas {
        Some(a) => a.clone(),
        None => config.alpha_offsets.iter().map(|o| threshold + o).collect(),
    };
    note("harnack", harnack_check(g, &facts, &alphas), &mut reports)?;
    note("gradient_estimate", gradient_estimate_check(g, &facts, &config.epsilons), &mut reports)?;
    for &eps in &config.epsilons {
        note("eigenvalue_estimate", eigenvalue_lower_bound(&facts, eps), &mut reports)?;
    }
    let eps_star = optimal_epsilon(facts.dimension);
    if !config.epsilons.iter().any(|e| (e - eps_star).abs() < 1e-12) {
        note("eigenvalue_estimate", eigenvalue_lower_bound(&facts, eps_star), &mut reports)?;
    }
    note("diameter_bound", diameter_lower_bound(&facts), &mut reports)?;
    reports.push(lichnerowicz_check(&facts));

    let iota = frustration_index(g, config.frustration_limit).map(|r| r.iota);
    note("volume", iota.clone().and_then(|i| volume_bound(&facts, i)).map(|r| vec![r]), &mut reports)?;
    let cheeger = cheeger_constant(g, config.cheeger_limit);
    note("buser", cheeger.map(|c| vec![buser_check(&facts, c.h)]), &mut reports)?;
    note("two_sided_liyau", two_sided_liyau(g, config.dimension), &mut reports)?;

    let mut p_results = Vec::new();
    for &p in &config.p_grid {
        let r = p_spectral_gap(g, Exponent::new(p)?, &config.solver)?;
        reports.push(p_diameter_volume_bound(g, &r));
        reports.push(p_volume_only_bound(g, &r));
        if p == 2.0 {
            // for p = 2 the p-curvature condition is the linear one, certified exactly
            let hyp = facts.cd_hypothesis();
            note("p_lichnerowicz", p_lichnerowicz_check(g, Exponent::new(p)?, facts.k, facts.dimension, r.lambda_p, hyp).map(|r| vec![r]), &mut reports)?;
        } else if let (Some(kp), true) = (config.supplied_kp, p > 2.0) {
            let e = Exponent::new(p)?;
            let hyp = cd_p_hypothesis(g, e, kp, config.dimension, &config.falsify)?;
            note("p_lichnerowicz", p_lichnerowicz_check(g, e, kp, config.dimension, r.lambda_p, hyp).map(|r| vec![r]), &mut reports)?;
        }
        p_results.push(r);
    }
    p_results.sort_by(|a, b| a.p.total_cmp(&b.p));
    note("monotonicity", monotonicity_check(&p_results), &mut reports)?;
    Ok(SuiteReport { facts, reports, skipped })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;
    use crate::graph::SignPattern;
    use std::f64::consts::PI;

    fn near(a: f64, b: f64) -> bool {
        (a - b).abs() < 1e-12
    }

    #[test]
    fn signed_triangle_improved_eigenvalue_bound() {
        let facts = GraphFacts::compute(&catalog::signed_triangle(), None).unwrap();
        let r = eigenvalue_lower_bound(&facts, 2.0).unwrap();
        assert!(near(r[1].rhs, 3.0 / 16.0));
        assert_eq!(r[1].status, Status::Pass);
    }

    #[test]
    fn triangle_diameter_numbers() {
        let s = GraphFacts::compute(&catalog::signed_triangle(), None).unwrap();
        let p = GraphFacts::compute(&SignedGraph::complete(3, SignPattern::AllPositive).unwrap(), None).unwrap();
        assert!(near(diameter_lower_bound(&s).unwrap()[1].rhs, 1.0 / 6.0));
        assert!(near(diameter_lower_bound(&p).unwrap()[1].rhs, 1.0 / 14.0));
    }

    #[test]
    fn unbalanced_odd_cycle_diameter_bound() {
        for n in [5, 7, 9] {
            let g = SignedGraph::cycle(n, SignPattern::OneNegative).unwrap();
            let f = GraphFacts::compute(&g, None).unwrap();
            let r = diameter_lower_bound(&f).unwrap();
            let want = 1.0 / (16.0 * (1.0 - (PI / n as f64).cos()));
            // K(∞) = 0 on odd cycles
            assert!((r[1].rhs - want).abs() < 1e-9);
        }
    }

    #[test]
    fn coefficient_limits() {
        let n = Some(5.0);
        let (_, c2) = eigen_coefficients(1e-9, n).unwrap();
        assert!((c2 - 5.0 / 4.0).abs() < 1e-8);
        let (c1, _) = eigen_coefficients(optimal_epsilon(n), n).unwrap();
        assert!(near(c1, cd0n_coefficient(n)));
        for eps in [0.1, 1.0, 3.0] {
            assert!(eigen_coefficients(eps, n).unwrap().0 <= c1 + 1e-15);
        }
        assert!(eigen_coefficients(1.0, Some(0.4)).is_err());
    }

    #[test]
    fn harnack_on_signed_triangle() {
        let g = catalog::signed_triangle();
        let facts = GraphFacts::compute(&g, None).unwrap();
        let r = harnack_check(&g, &facts, &[1.5, 2.0, 4.0]).unwrap();
        assert_eq!(r.len(), 6);
        assert!(r.iter().all(|b| b.status == Status::Pass));
        assert!(harnack_check(&g, &facts, &[0.9]).is_err());
    }

    #[test]
    fn harnack_epsilon_form_at_two_matches_classical() {
        // ε = 2: (16 − 4/N)λ/2 − 4K = (8 − 2/N)λ − 4K
        let g = SignedGraph::cycle(5, SignPattern::AllPositive).unwrap();
        let facts = GraphFacts::compute(&g, Some(2.0)).unwrap();
        let r = gradient_estimate_check(&g, &facts, &[2.0]).unwrap();
        let f = &facts.eigenfunctions[0];
        let max_f2 = f.iter().map(|v| v * v).fold(0.0, f64::max);
        let classical = ((8.0 - 1.0) * facts.lambda - 4.0 * facts.k) * max_f2;
        assert!(near(r[0].rhs, classical));
        assert!(r.iter().all(|b| b.satisfied));
    }

    #[test]
    fn volume_and_exclusion() {
        let g = SignedGraph::hypercube_one_negative(2).unwrap();
        let facts = GraphFacts::compute(&g, None).unwrap();
        let r = volume_bound(&facts, 2).unwrap();
        assert_eq!(r.status, Status::Pass);
        assert!((r.rhs - 8.0 * (2.0 * LN_2).sqrt() * 4.0 * 6f64.sqrt()).abs() < 1e-9);
        let scan = hypercube_exclusion_scan(10, None).unwrap();
        let first = scan.iter().position(|e| e.excluded).unwrap();
        assert_eq!(scan[first].label, "Q^7 one negative edge");
        assert!(scan[first..].iter().all(|e| e.excluded));
        let bal = GraphFacts::compute(&SignedGraph::cycle(5, SignPattern::AllPositive).unwrap(), None).unwrap();
        assert!(volume_bound(&bal, 0).is_err());
    }

    #[test]
    fn exclusion_matches_power_form() {
        // 2^{2n} ≤ 512 ln 2 (n+1)⌈(n+1)/2⌉
        for e in hypercube_exclusion_scan(12, None).unwrap() {
            let n = e.inputs[0].value as usize;
            let power = 4f64.powi(n as i32) > 512.0 * LN_2 * path_factor(n + 1);
            assert_eq!(e.excluded, power);
        }
    }

    #[test]
    fn lichnerowicz_forms() {
        let facts = GraphFacts::compute(&catalog::signed_triangle(), None).unwrap();
        let r = lichnerowicz_check(&facts);
        assert!(near(r.rhs, 0.25) && r.status == Status::Pass);
        let g = catalog::signed_triangle();
        let p = p_lichnerowicz_check(&g, Exponent::new(2.0).unwrap(), 0.25, Some(4.0), 0.5, Hypothesis::Certified).unwrap();
        assert!(near(p.rhs, 4.0 / 3.0 * 0.25));
        assert!(p_lichnerowicz_check(&g, Exponent::new(1.5).unwrap(), 0.25, None, 0.5, Hypothesis::Certified).is_err());
        let odd = GraphFacts::compute(&SignedGraph::cycle(7, SignPattern::OneNegative).unwrap(), None).unwrap();
        assert_eq!(lichnerowicz_check(&odd).status, Status::Vacuous);
    }

    #[test]
    fn two_sided_on_cycles() {
        let c5 = SignedGraph::cycle(5, SignPattern::AllPositive).unwrap();
        let r = two_sided_liyau(&c5, None).unwrap();
        assert!(r.iter().all(|b| b.status == Status::Pass));
        assert!((r[1].rhs - (2.0 - 1.0 / 96.0)).abs() < 1e-12);
        let c4 = SignedGraph::cycle(4, SignPattern::AllPositive).unwrap();
        assert_eq!(two_sided_liyau(&c4, None).unwrap()[0].theorem, "bipartite_symmetry");
        assert!(two_sided_liyau(&catalog::signed_triangle(), None).is_err());
    }

    #[test]
    fn epsilon_sweep_stays_below_lambda() {
        for g in [catalog::signed_triangle(), SignedGraph::cycle(7, SignPattern::OneNegative).unwrap()] {
            let facts = GraphFacts::compute(&g, None).unwrap();
            for i in 1..=100 {
                let eps = i as f64 * 0.1;
                for r in eigenvalue_lower_bound(&facts, eps).unwrap() {
                    if r.hypothesis == Hypothesis::Certified {
                        assert!(r.rhs <= facts.lambda + 1e-9);
                    }
                }
            }
        }
    }

    #[test]
    fn supplied_curvature_is_not_trusted() {
        let facts = GraphFacts::compute(&catalog::signed_triangle(), None).unwrap().with_supplied_k(1.0);
        let r = lichnerowicz_check(&facts);
        assert_eq!(r.status, Status::Informational);
        assert_eq!(r.inputs[1].provenance, Provenance::Supplied);
    }

    #[test]
    fn reports_are_reproducible() {
        let g = catalog::chorded_heptagon();
        let cfg = SuiteConfig { solver: PSolverOptions { restarts: 4, ..Default::default() }, ..Default::default() };
        let a = run_suite(&g, &cfg).unwrap();
        let b = run_suite(&g, &cfg).unwrap();
        assert_eq!(a.reports, b.reports);
        assert_eq!(a.failures().count(), 0, "{:#?}", a.failures().collect::<Vec<_>>());
    }
}
