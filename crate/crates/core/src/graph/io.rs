//! Text edge lists: one edge per line, `u v s` with `s ∈ {+1, -1}`;
//! lines starting with `#` are comments.

use std::fmt::Write as _;

use super::SignedGraph;
use crate::error::{Error, Result};

fn parse_sign(tok: &str) -> Option<i64> {
    match tok {
        "+1" | "1" | "+" => Some(1),
        "-1" | "-" => Some(-1),
        _ => None,
    }
}

impl SignedGraph {
    pub fn parse_edge_list(text: &str) -> Result<Self> {
        let mut edges: Vec<(String, String, i64)> = Vec::new();
        for (i, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let toks: Vec<&str> = line.split_whitespace().collect();
            if toks.len() != 3 {
                return Err(Error::Parse {
                    line: i + 1,
                    msg: format!("expected `u v s`, found {} fields", toks.len()),
                });
            }
            let sign = parse_sign(toks[2]).ok_or_else(|| Error::Parse {
                line: i + 1,
                msg: format!("invalid sign {:?}: expected +1 or -1", toks[2]),
            })?;
            edges.push((toks[0].to_string(), toks[1].to_string(), sign));
        }
        SignedGraph::from_edge_list(&edges).map_err(|e| match e {
            Error::Empty => Error::Parse { line: 0, msg: "no edges".into() },
            other => other,
        })
    }

    /// Canonical serialization. Edges appear in insertion order and orientation,
    /// so `parse(serialize(g))` serializes identically.
    pub fn to_edge_list(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "# signed graph: {} vertices, {} edges", self.n(), self.num_edges());
        for e in self.edges() {
            let _ = writeln!(out, "{} {} {}", self.label(e.u), self.label(e.v), e.sign);
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::SignPattern;
    use proptest::prelude::*;

    #[test]
    fn parses_comments_and_signs() {
        let g = SignedGraph::parse_edge_list("# triangle\n1 2 +1\n\n2 3 1\n1 3 -1\n").unwrap();
        assert_eq!(g.n(), 3);
        assert_eq!(g.negative_edge_count(), 1);
    }

    #[test]
    fn parse_errors_carry_line_numbers() {
        let err = SignedGraph::parse_edge_list("a b +1\nb c 0\n").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 2, .. }));
        let err = SignedGraph::parse_edge_list("a b\n").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 1, .. }));
    }

    #[test]
    fn generator_output_round_trips() {
        let g = SignedGraph::hypercube_one_negative(3).unwrap();
        let text = g.to_edge_list();
        let h = SignedGraph::parse_edge_list(&text).unwrap();
        assert_eq!(h.to_edge_list(), text);
        assert_eq!(h.negative_edge_count(), 1);
    }

    proptest! {
        #[test]
        fn serialization_is_a_fixpoint(n in 3usize..9, mask in 0u64..512) {
            let signs = (0..n)
                .map(|i| if mask >> i & 1 == 1 { crate::Sign::Negative } else { crate::Sign::Positive })
                .collect();
            let g = SignedGraph::cycle(n, SignPattern::Explicit(signs)).unwrap();
            let text = g.to_edge_list();
            let h = SignedGraph::parse_edge_list(&text).unwrap();
            prop_assert_eq!(h.to_edge_list(), text);
            prop_assert_eq!(h, g);
        }
    }
}
