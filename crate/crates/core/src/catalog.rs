//! Named graphs used in examples, tests and the CLI.

use crate::graph::{SignPattern, SignedGraph};

fn from_static(edges: &[(&str, &str, i64)]) -> SignedGraph {
    SignedGraph::from_edge_list(edges).expect("catalog graphs are valid")
}

/// `K₃` with one negative edge `{1,3}`.
pub fn signed_triangle() -> SignedGraph {
    from_static(&[("1", "2", 1), ("2", "3", 1), ("1", "3", -1)])
}

/// Heptagon `1…7` with chord `{2,7}` and negative edge `{4,5}`.
pub fn chorded_heptagon() -> SignedGraph {
    from_static(&[
        ("1", "2", 1),
        ("2", "3", 1),
        ("3", "4", 1),
        ("4", "5", -1),
        ("5", "6", 1),
        ("6", "7", 1),
        ("7", "1", 1),
        ("2", "7", 1),
    ])
}

pub fn petersen() -> SignedGraph {
    let mut edges = Vec::new();
    for i in 0..5 {
        edges.push((i, (i + 1) % 5));
        edges.push((i, i + 5));
        edges.push((i + 5, (i + 2) % 5 + 5));
    }
    let labels: Vec<String> = (0..10).map(|i| i.to_string()).collect();
    let edges = edges.into_iter().map(|(u, v)| (u, v, crate::Sign::Positive)).collect();
    SignedGraph::from_indexed(labels, edges).expect("valid")
}

/// The test corpus: every graph is small enough for exact frustration and Cheeger values.
pub fn corpus() -> Vec<(&'static str, SignedGraph)> {
    let cyc = |n, p| SignedGraph::cycle(n, p).expect("valid");
    vec![
        ("K2", SignedGraph::hypercube(1).expect("valid")),
        ("signed K3", signed_triangle()),
        ("K3", SignedGraph::complete(3, SignPattern::AllPositive).expect("valid")),
        ("K4 one negative", SignedGraph::complete(4, SignPattern::OneNegative).expect("valid")),
        ("P5", SignedGraph::path(5, SignPattern::AllPositive).expect("valid")),
        ("C4", cyc(4, SignPattern::AllPositive)),
        ("C4 unbalanced", cyc(4, SignPattern::OneNegative)),
        ("C5", cyc(5, SignPattern::AllPositive)),
        ("C5 unbalanced", cyc(5, SignPattern::OneNegative)),
        ("C7", cyc(7, SignPattern::AllPositive)),
        ("C7 unbalanced", cyc(7, SignPattern::OneNegative)),
        ("chorded heptagon", chorded_heptagon()),
        ("chorded heptagon positive", chorded_heptagon().with_all_positive()),
        ("Q2 one negative", SignedGraph::hypercube_one_negative(2).expect("valid")),
        ("Q3", SignedGraph::hypercube(3).expect("valid")),
        ("Q3 one negative", SignedGraph::hypercube_one_negative(3).expect("valid")),
        ("Petersen", petersen()),
    ]
}
