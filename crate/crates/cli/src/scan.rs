//! Diameter lower bounds over all switching classes of a fixed underlying graph.

use rayon::prelude::*;
use serde::Serialize;

use sgraph::curvature::graph_curvature;
use sgraph::spectral::first_nonzero_eigenvalue;
use sgraph::{Result, Sign, SignedGraph};

#[derive(Debug, Clone, Serialize)]
pub struct ClassEntry {
    /// Canonical sign vector, in edge order.
    pub signs: Vec<i8>,
    pub negative_edges: usize,
    pub balanced: bool,
    pub lambda: f64,
    pub multiplicity: usize,
    pub k_inf: f64,
    /// `1/(4d(2λ^σ − K))`, absent when `2λ^σ − K ≤ 0`.
    pub diameter_rhs: Option<f64>,
}

#[derive(Debug, Clone, Serialize)]
pub struct SignScan {
    pub edges: Vec<(String, String)>,
    pub classes: Vec<ClassEntry>,
    /// Index into `classes` of the largest diameter bound; first wins ties.
    pub best: Option<usize>,
}

pub fn sign_scan(g: &SignedGraph, edge_limit: usize) -> Result<SignScan> {
    let reps = g.switching_classes(edge_limit)?;
    let d = g.max_degree() as f64;
    let classes = reps
        .par_iter()
        .map(|h| -> Result<ClassEntry> {
            let first = first_nonzero_eigenvalue(h)?;
            let k = graph_curvature(h, None)?;
            let gap = 2.0 * first.lambda - k;
            Ok(ClassEntry {
                signs: h.edge_signs().iter().map(|s| s.as_int()).collect(),
                negative_edges: h.edge_signs().iter().filter(|s| **s == Sign::Negative).count(),
                balanced: first.balanced,
                lambda: first.lambda,
                multiplicity: first.multiplicity,
                k_inf: k,
                diameter_rhs: (gap > 0.0).then(|| 1.0 / (4.0 * d * gap)),
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let best = classes
        .iter()
        .enumerate()
        .filter_map(|(i, c)| c.diameter_rhs.map(|v| (i, v)))
        .fold(None, |acc: Option<(usize, f64)>, (i, v)| match acc {
            Some((_, b)) if b >= v => acc,
            _ => Some((i, v)),
        })
        .map(|(i, _)| i);
    let edges = g.edges().iter().map(|e| (g.label(e.u).to_string(), g.label(e.v).to_string())).collect();
    Ok(SignScan { edges, classes, best })
}

#[cfg(test)]
mod tests {
    use super::*;
    use sgraph::SignPattern;
    use std::f64::consts::PI;

    #[test]
    fn triangle_prefers_unbalanced() {
        let k3 = SignedGraph::complete(3, SignPattern::AllPositive).unwrap();
        let s = sign_scan(&k3, 20).unwrap();
        assert_eq!(s.classes.len(), 2);
        let best = &s.classes[s.best.unwrap()];
        assert!(!best.balanced);
        assert!((best.diameter_rhs.unwrap() - 1.0 / 6.0).abs() < 1e-12);
        let other = s.classes.iter().find(|c| c.balanced).unwrap();
        assert!((other.diameter_rhs.unwrap() - 1.0 / 14.0).abs() < 1e-12);
    }

    #[test]
    fn pentagon_prefers_unbalanced() {
        let c5 = SignedGraph::cycle(5, SignPattern::AllPositive).unwrap();
        let s = sign_scan(&c5, 20).unwrap();
        let best = &s.classes[s.best.unwrap()];
        assert!(!best.balanced);
        assert!((best.diameter_rhs.unwrap() - 1.0 / (16.0 * (1.0 - (PI / 5.0).cos()))).abs() < 1e-9);
        let bal = s.classes.iter().find(|c| c.balanced).unwrap();
        assert!((bal.diameter_rhs.unwrap() - 1.0 / (16.0 * (1.0 - (2.0 * PI / 5.0).cos()))).abs() < 1e-9);
    }

    #[test]
    fn tree_has_one_class() {
        let t = SignedGraph::path(4, SignPattern::AllNegative).unwrap();
        let s = sign_scan(&t, 20).unwrap();
        assert_eq!(s.classes.len(), 1);
        assert!(s.classes[0].balanced);
    }
}
