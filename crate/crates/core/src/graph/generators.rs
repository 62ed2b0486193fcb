use super::{Sign, SignedGraph};
use crate::error::{Error, Result};

/// How a generator assigns signs to its edges, in generation order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SignPattern {
    AllPositive,
    AllNegative,
    /// Only the first generated edge is negative.
    OneNegative,
    Explicit(Vec<Sign>),
}

impl SignPattern {
    fn signs(&self, m: usize) -> Result<Vec<Sign>> {
        Ok(match self {
            SignPattern::AllPositive => vec![Sign::Positive; m],
            SignPattern::AllNegative => vec![Sign::Negative; m],
            SignPattern::OneNegative => {
                let mut s = vec![Sign::Positive; m];
                s[0] = Sign::Negative;
                s
            }
            SignPattern::Explicit(s) => {
                if s.len() != m {
                    return Err(Error::LengthMismatch { expected: m, got: s.len() });
                }
                s.clone()
            }
        })
    }
}

fn numbered(n: usize) -> Vec<String> {
    (0..n).map(|i| i.to_string()).collect()
}

fn build(labels: Vec<String>, pairs: Vec<(usize, usize)>, pattern: &SignPattern) -> Result<SignedGraph> {
    let signs = pattern.signs(pairs.len())?;
    let edges = pairs.into_iter().zip(signs).map(|((u, v), s)| (u, v, s)).collect();
    SignedGraph::from_indexed(labels, edges)
}

impl SignedGraph {
    /// Cycle `C_n` with edges `{i, i+1 mod n}` generated for `i = 0..n`.
    pub fn cycle(n: usize, pattern: SignPattern) -> Result<Self> {
        if n < 3 {
            return Err(Error::InvalidParameter(format!("cycle needs n >= 3, got {n}")));
        }
        let pairs = (0..n).map(|i| (i, (i + 1) % n)).collect();
        build(numbered(n), pairs, &pattern)
    }

    /// Path on `n` vertices.
    pub fn path(n: usize, pattern: SignPattern) -> Result<Self> {
        if n < 2 {
            return Err(Error::InvalidParameter(format!("path needs n >= 2, got {n}")));
        }
        let pairs = (0..n - 1).map(|i| (i, i + 1)).collect();
        build(numbered(n), pairs, &pattern)
    }

    /// Complete graph `K_n`, edges in lexicographic order.
    pub fn complete(n: usize, pattern: SignPattern) -> Result<Self> {
        if n < 3 {
            return Err(Error::InvalidParameter(format!("complete graph needs n >= 3, got {n}")));
        }
        let pairs = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect();
        build(numbered(n), pairs, &pattern)
    }

    /// Hypercube `Q^n`; vertices are bit strings, edges flip one bit.
    pub fn hypercube(n: usize) -> Result<Self> {
        Self::hypercube_with(n, SignPattern::AllPositive)
    }

    /// `Q^n` whose only negative edge is the lexicographically first one, `{0…00, 0…01}`.
    pub fn hypercube_one_negative(n: usize) -> Result<Self> {
        Self::hypercube_with(n, SignPattern::OneNegative)
    }

    fn hypercube_with(n: usize, pattern: SignPattern) -> Result<Self> {
        if n == 0 || n > 20 {
            return Err(Error::InvalidParameter(format!("hypercube dimension must be in 1..=20, got {n}")));
        }
        let count = 1usize << n;
        let labels = (0..count).map(|u| format!("{:0width$b}", u, width = n)).collect();
        let mut pairs = Vec::with_capacity(n * count / 2);
        for u in 0..count {
            for b in 0..n {
                let v = u ^ (1 << b);
                if u < v {
                    pairs.push((u, v));
                }
            }
        }
        build(labels, pairs, &pattern)
    }

    /// Cartesian product `G □ H`; vertex `(x, u)` has index `x·|V_H| + u`.
    pub fn cartesian_product(g: &SignedGraph, h: &SignedGraph) -> Result<Self> {
        let nh = h.n();
        let labels = (0..g.n())
            .flat_map(|x| (0..nh).map(move |u| (x, u)))
            .map(|(x, u)| format!("({},{})", g.label(x), h.label(u)))
            .collect();
        let mut edges = Vec::with_capacity(g.num_edges() * nh + h.num_edges() * g.n());
        for e in g.edges() {
            for u in 0..nh {
                edges.push((e.u * nh + u, e.v * nh + u, e.sign));
            }
        }
        for x in 0..g.n() {
            for e in h.edges() {
                edges.push((x * nh + e.u, x * nh + e.v, e.sign));
            }
        }
        SignedGraph::from_indexed(labels, edges)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn hypercube_sizes() {
        let q3 = SignedGraph::hypercube(3).unwrap();
        assert_eq!(q3.n(), 8);
        assert_eq!(q3.num_edges(), 12);
        assert_eq!(q3.negative_edge_count(), 0);
        assert_eq!(q3.diameter(), 3);
    }

    #[test]
    fn one_negative_edge_is_canonical() {
        let q = SignedGraph::hypercube_one_negative(3).unwrap();
        assert_eq!(q.negative_edge_count(), 1);
        assert_eq!(q.sign(0, 1), Some(Sign::Negative));
        assert_eq!(q.label(0), "000");
        assert_eq!(q.label(1), "001");
    }

    #[test]
    fn cycle_diameter_and_balance() {
        let c7 = SignedGraph::cycle(7, SignPattern::OneNegative).unwrap();
        assert_eq!(c7.diameter(), 3);
        assert!(!c7.is_balanced());
        assert!(SignedGraph::cycle(7, SignPattern::AllPositive).unwrap().is_balanced());
    }

    #[test]
    fn invalid_sizes() {
        assert!(SignedGraph::cycle(2, SignPattern::AllPositive).is_err());
        assert!(SignedGraph::complete(2, SignPattern::AllPositive).is_err());
        assert!(SignedGraph::hypercube(0).is_err());
        assert!(SignedGraph::cycle(4, SignPattern::Explicit(vec![Sign::Positive])).is_err());
    }

    #[test]
    fn k2_squared_is_q2() {
        let k2 = SignedGraph::hypercube(1).unwrap();
        let q2 = SignedGraph::cartesian_product(&k2, &k2).unwrap();
        assert_eq!(q2.n(), 4);
        assert_eq!(q2.num_edges(), 4);
        assert_eq!(q2.negative_edge_count(), 0);
        assert!(q2.degrees().iter().all(|&d| d == 2));
        assert!(!q2.has_triangle());
    }

    #[test]
    fn signed_square_times_cube() {
        for n in 2..=5 {
            let q2 = SignedGraph::hypercube_one_negative(2).unwrap();
            let rest = SignedGraph::hypercube(n - 2);
            let prod = match rest {
                Ok(r) => SignedGraph::cartesian_product(&q2, &r).unwrap(),
                Err(_) => q2.clone(),
            };
            assert_eq!(prod.n(), 1 << n);
            assert_eq!(prod.negative_edge_count(), 1 << (n - 2));
            assert_eq!(prod.diameter(), n);
        }
    }

    #[test]
    fn product_counts_and_diameter() {
        let c5 = SignedGraph::cycle(5, SignPattern::OneNegative).unwrap();
        let p3 = SignedGraph::path(3, SignPattern::AllPositive).unwrap();
        let prod = SignedGraph::cartesian_product(&c5, &p3).unwrap();
        assert_eq!(prod.num_edges(), c5.num_edges() * 3 + p3.num_edges() * 5);
        assert_eq!(prod.diameter(), c5.diameter() + p3.diameter());
    }
}
