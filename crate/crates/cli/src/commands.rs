use std::fmt::Write as _;

use serde::Serialize;

use sgraph::bounds::{run_suite, Hypothesis, SuiteConfig, SuiteReport};
use sgraph::combinatorics::{
    cheeger_constant, frustration_index, is_strong_nodal_walk, path_sign_trace, strong_nodal_decomposition,
};
use sgraph::curvature::{cd_check_psd, cd_p_falsify, curvature_profile, FalsifyOptions, FalsifyOutcome};
use sgraph::operators::Exponent;
use sgraph::report::{fmt_num, to_json, Table};
use sgraph::spectral::{first_from_spectrum, p_spectral_gap, spectrum, PEigenResult, PSolverOptions, Spectrum};
use sgraph::{Dimension, SignChoice, SignedGraph, VertexFunction, Walk};

use crate::scan::sign_scan;

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Json,
    Table,
}

pub struct Output {
    pub text: String,
    /// A certified inequality failed.
    pub failure: bool,
}

fn emit<T: Serialize>(format: Format, kind: &str, payload: &T, table: impl FnOnce() -> String) -> Output {
    let text = match format {
        Format::Json => to_json(kind, payload) + "\n",
        Format::Table => table(),
    };
    Output { text, failure: false }
}

fn dim_label(n: Dimension) -> String {
    n.map_or_else(|| "inf".to_string(), fmt_num)
}

fn labels(g: &SignedGraph, xs: &[usize]) -> Vec<String> {
    xs.iter().map(|&x| g.label(x).to_string()).collect()
}

#[derive(Serialize)]
struct SpectrumPayload<'a> {
    vertices: &'a [String],
    spectrum: &'a Spectrum,
    clusters: Vec<(f64, usize)>,
    lambda: f64,
    multiplicity: usize,
    p_estimates: &'a [PEigenResult],
}

pub fn spectrum_cmd(g: &SignedGraph, choice: SignChoice, ps: &[f64], solver: &PSolverOptions, format: Format) -> sgraph::Result<Output> {
    let spec = spectrum(g, choice)?;
    let first = first_from_spectrum(&spec)?;
    let target = choice.resolve(g);
    let estimates = ps
        .iter()
        .map(|&p| p_spectral_gap(&target, Exponent::new(p)?, solver))
        .collect::<sgraph::Result<Vec<_>>>()?;
    let payload = SpectrumPayload {
        vertices: g.labels(),
        spectrum: &spec,
        clusters: spec.clusters(),
        lambda: first.lambda,
        multiplicity: first.multiplicity,
        p_estimates: &estimates,
    };
    Ok(emit(format, "spectrum", &payload, || {
        let mut out = String::new();
        let _ = writeln!(out, "sign: {:?}  balanced: {}", choice, spec.balanced);
        let mut t = Table::new(["index", "eigenvalue", "residual"]);
        for (i, (v, r)) in spec.eigenvalues.iter().zip(&spec.residuals).enumerate() {
            t.push([(i + 1).to_string(), fmt_num(*v), fmt_num(*r)]);
        }
        out.push_str(&t.render());
        let _ = writeln!(out, "first nonzero eigenvalue: {} (multiplicity {})", fmt_num(first.lambda), first.multiplicity);
        if !estimates.is_empty() {
            let mut t = Table::new(["p", "lambda_p", "eigen_residual", "best_restart"]);
            for r in &estimates {
                t.push([fmt_num(r.p), fmt_num(r.lambda_p), fmt_num(r.eigen_residual), r.best_restart.to_string()]);
            }
            out.push('\n');
            out.push_str(&t.render());
        }
        out
    }))
}

#[derive(Serialize)]
struct CdpVertex {
    vertex: String,
    outcome: FalsifyOutcome,
}

#[derive(Serialize)]
struct CurvaturePayload {
    vertices: Vec<String>,
    dimensions: Vec<Dimension>,
    /// `k[x][i]` at `dimensions[i]`.
    k: Vec<Vec<f64>>,
    psd: Option<Vec<Vec<f64>>>,
    minimum: Vec<f64>,
    cd_p: Option<Vec<CdpVertex>>,
}

pub struct CdpRequest {
    pub p: f64,
    pub k: f64,
    pub options: FalsifyOptions,
}

pub fn curvature_cmd(g: &SignedGraph, dims: &[Dimension], psd: bool, cdp: Option<CdpRequest>, format: Format) -> sgraph::Result<Output> {
    let profile = curvature_profile(g, dims)?;
    let k: Vec<Vec<f64>> = profile.per_vertex.iter().map(|row| row.iter().map(|v| v.k).collect()).collect();
    let psd = if psd {
        Some(
            (0..g.n())
                .map(|x| dims.iter().map(|&n| cd_check_psd(g, x, n)).collect::<sgraph::Result<Vec<_>>>())
                .collect::<sgraph::Result<Vec<_>>>()?,
        )
    } else {
        None
    };
    let cd_p = match &cdp {
        Some(req) => {
            let p = Exponent::new(req.p)?;
            let n = dims.first().copied().flatten();
            Some(
                (0..g.n())
                    .map(|x| {
                        Ok(CdpVertex {
                            vertex: g.label(x).to_string(),
                            outcome: cd_p_falsify(g, x, p, req.k, n, &req.options)?,
                        })
                    })
                    .collect::<sgraph::Result<Vec<_>>>()?,
            )
        }
        None => None,
    };
    let payload = CurvaturePayload {
        vertices: g.labels().to_vec(),
        dimensions: dims.to_vec(),
        k,
        psd,
        minimum: profile.minimum.clone(),
        cd_p,
    };
    Ok(emit(format, "curvature", &payload, || {
        let mut headers = vec!["vertex".to_string()];
        headers.extend(dims.iter().map(|&n| format!("K(N={})", dim_label(n))));
        if payload.psd.is_some() {
            headers.extend(dims.iter().map(|&n| format!("psd(N={})", dim_label(n))));
        }
        let mut t = Table::new(headers);
        for x in 0..g.n() {
            let mut row = vec![g.label(x).to_string()];
            row.extend(payload.k[x].iter().map(|v| fmt_num(*v)));
            if let Some(p) = &payload.psd {
                row.extend(p[x].iter().map(|v| fmt_num(*v)));
            }
            t.push(row);
        }
        let mut row = vec!["min".to_string()];
        row.extend(payload.minimum.iter().map(|v| fmt_num(*v)));
        t.push(row);
        let mut out = t.render();
        if let (Some(req), Some(rows)) = (&cdp, &payload.cd_p) {
            let _ = writeln!(out, "\nCD_p search, p = {}, K = {}, N = {}", fmt_num(req.p), fmt_num(req.k), dim_label(dims[0]));
            let mut t = Table::new(["vertex", "outcome", "defect"]);
            for r in rows {
                let (what, d) = match &r.outcome {
                    FalsifyOutcome::Counterexample { defect, .. } => ("counterexample", *defect),
                    FalsifyOutcome::NotFalsified { best_defect, .. } => ("not falsified", *best_defect),
                };
                t.push([r.vertex.clone(), what.to_string(), fmt_num(d)]);
            }
            out.push_str(&t.render());
        }
        out
    }))
}

#[derive(Serialize)]
struct FrustrationPayload {
    iota: usize,
    negative_edges: usize,
    /// Vertices with `τ = −1` in an optimal switching.
    switched: Vec<String>,
}

pub fn frustration_cmd(g: &SignedGraph, limit: usize, format: Format) -> sgraph::Result<Output> {
    let r = frustration_index(g, limit)?;
    let switched: Vec<usize> = (0..g.n()).filter(|&x| r.optimal_tau.get(x).is_negative()).collect();
    let payload = FrustrationPayload { iota: r.iota, negative_edges: r.negative_edges, switched: labels(g, &switched) };
    Ok(emit(format, "frustration", &payload, || {
        format!(
            "frustration index: {}\nnegative edges after switching: {}\nswitched vertices: {}\n",
            payload.iota,
            payload.negative_edges,
            payload.switched.join(" ")
        )
    }))
}

#[derive(Serialize)]
struct CheegerPayload {
    h: f64,
    witness: Vec<String>,
    induced_iota: usize,
    boundary: usize,
    volume: usize,
}

pub fn cheeger_cmd(g: &SignedGraph, limit: usize, format: Format) -> sgraph::Result<Output> {
    let r = cheeger_constant(g, limit)?;
    let payload = CheegerPayload {
        h: r.h,
        witness: labels(g, &r.witness),
        induced_iota: r.induced_iota,
        boundary: r.boundary,
        volume: r.volume,
    };
    Ok(emit(format, "cheeger", &payload, || {
        format!(
            "cheeger constant: {} = ({} + {})/{}\nwitness: {}\n",
            fmt_num(payload.h),
            payload.induced_iota,
            payload.boundary,
            payload.volume,
            payload.witness.join(" ")
        )
    }))
}

#[derive(Serialize)]
struct WalkCheck {
    walk: Vec<String>,
    strong_nodal: bool,
    trace: Vec<f64>,
}

#[derive(Serialize)]
struct NodalPayload {
    function: Vec<f64>,
    domains: Vec<Vec<String>>,
    walk: Option<WalkCheck>,
}

pub fn nodal_cmd(g: &SignedGraph, function: Option<&str>, walk: &[String], format: Format) -> sgraph::Result<Output> {
    let f = match function {
        Some(text) => VertexFunction::parse(g, text)?.into_inner(),
        None => {
            let spec = spectrum(g, SignChoice::Given)?;
            first_from_spectrum(&spec)?.eigenfunctions.swap_remove(0)
        }
    };
    let dec = strong_nodal_decomposition(g, &f)?;
    let walk = if walk.is_empty() {
        None
    } else {
        let xs = walk.iter().map(|l| g.index_of(l)).collect::<sgraph::Result<Vec<_>>>()?;
        let w = Walk::new(g, xs.clone())?;
        Some(WalkCheck { walk: walk.to_vec(), strong_nodal: is_strong_nodal_walk(g, &f, &w), trace: path_sign_trace(g, &f, &xs)? })
    };
    let payload = NodalPayload { function: f.clone(), domains: dec.domains.iter().map(|d| labels(g, d)).collect(), walk };
    Ok(emit(format, "nodal", &payload, || {
        let mut t = Table::new(["vertex", "f"]);
        for (x, v) in f.iter().enumerate() {
            t.push([g.label(x).to_string(), fmt_num(*v)]);
        }
        let mut out = t.render();
        let _ = writeln!(out, "strong nodal domains: {}", payload.domains.len());
        for (i, d) in payload.domains.iter().enumerate() {
            let _ = writeln!(out, "  {}: {}", i + 1, d.join(" "));
        }
        if let Some(w) = &payload.walk {
            let trace: Vec<String> = w.trace.iter().map(|v| fmt_num(*v)).collect();
            let _ = writeln!(out, "walk {}: strong nodal = {}", w.walk.join("-"), w.strong_nodal);
            let _ = writeln!(out, "path-sign trace: {}", trace.join(" "));
        }
        out
    }))
}

fn hypothesis_label(h: &Hypothesis) -> String {
    match h {
        Hypothesis::Unconditional => "none".into(),
        Hypothesis::Certified => "certified".into(),
        Hypothesis::NotCertified(_) => "not certified".into(),
        Hypothesis::NotFalsified => "not falsified".into(),
        Hypothesis::Falsified => "falsified".into(),
        Hypothesis::NotApplicable(_) => "not applicable".into(),
    }
}

pub fn bounds_cmd(g: &SignedGraph, config: &SuiteConfig, format: Format) -> sgraph::Result<Output> {
    let suite: SuiteReport = run_suite(g, config)?;
    let failures = suite.failures().count();
    let mut out = emit(format, "bounds", &suite, || {
        let f = &suite.facts;
        let mut out = String::new();
        let _ = writeln!(
            out,
            "lambda = {} (multiplicity {}), K(N={}) = {}, K(inf) = {}, d = {}, D = {}, vol = {}, balanced = {}",
            fmt_num(f.lambda),
            f.multiplicity,
            dim_label(f.dimension),
            fmt_num(f.k),
            fmt_num(f.k_inf),
            f.max_degree,
            f.diameter,
            f.volume,
            f.balanced
        );
        let mut t = Table::new(["check", "detail", "lhs", "rhs", "margin", "hypothesis", "status"]);
        for r in &suite.reports {
            t.push([
                r.theorem.to_string(),
                r.detail.clone(),
                fmt_num(r.lhs),
                fmt_num(r.rhs),
                fmt_num(r.margin),
                hypothesis_label(&r.hypothesis),
                format!("{:?}", r.status).to_lowercase(),
            ]);
        }
        out.push_str(&t.render());
        for s in &suite.skipped {
            let _ = writeln!(out, "skipped {}: {}", s.check, s.reason);
        }
        let _ = writeln!(out, "{} checks, {} failures", suite.reports.len(), failures);
        out
    });
    out.failure = failures > 0;
    Ok(out)
}

pub fn sign_scan_cmd(g: &SignedGraph, limit: usize, format: Format) -> sgraph::Result<Output> {
    let scan = sign_scan(g, limit)?;
    Ok(emit(format, "sign_scan", &scan, || {
        let mut t = Table::new(["class", "negative", "balanced", "lambda", "mult", "K(inf)", "diameter rhs"]);
        for (i, c) in scan.classes.iter().enumerate() {
            t.push([
                i.to_string(),
                c.negative_edges.to_string(),
                c.balanced.to_string(),
                fmt_num(c.lambda),
                c.multiplicity.to_string(),
                fmt_num(c.k_inf),
                c.diameter_rhs.map_or_else(|| "-".to_string(), fmt_num),
            ]);
        }
        let mut out = t.render();
        if let Some(b) = scan.best {
            let neg: Vec<String> = scan
                .edges
                .iter()
                .zip(&scan.classes[b].signs)
                .filter(|(_, s)| **s < 0)
                .map(|((u, v), _)| format!("{u}-{v}"))
                .collect();
            let _ = writeln!(out, "best class: {} (negative edges: {})", b, if neg.is_empty() { "none".into() } else { neg.join(" ") });
        }
        out
    }))
}

#[derive(Serialize)]
struct GraphPayload {
    vertices: Vec<String>,
    edges: Vec<(String, String, i8)>,
}

pub fn generate_cmd(g: &SignedGraph, format: Format) -> Output {
    match format {
        Format::Table => Output { text: g.to_edge_list(), failure: false },
        Format::Json => {
            let payload = GraphPayload {
                vertices: g.labels().to_vec(),
                edges: g.edges().iter().map(|e| (g.label(e.u).to_string(), g.label(e.v).to_string(), e.sign.as_int())).collect(),
            };
            emit(format, "graph", &payload, String::new)
        }
    }
}
