//! Switching classes: canonical representatives and enumeration.

use super::{Sign, SignedGraph};
use crate::error::{Error, Result};

pub const DEFAULT_SCAN_EDGE_LIMIT: usize = 20;

fn find(parent: &mut [usize], parity: &mut [bool], x: usize) -> (usize, bool) {
    let mut root = x;
    let mut par = false;
    while parent[root] != root {
        par ^= parity[root];
        root = parent[root];
    }
    // path compression
    let (mut cur, mut acc) = (x, par);
    while parent[cur] != root {
        let next = parent[cur];
        let p = parity[cur];
        parent[cur] = root;
        parity[cur] = acc;
        acc ^= p;
        cur = next;
    }
    (root, par)
}

impl SignedGraph {
    /// Edges (by index) of the spanning tree obtained by scanning edges in order.
    pub fn greedy_spanning_tree(&self) -> Vec<usize> {
        let mut parent: Vec<usize> = (0..self.n()).collect();
        let mut parity = vec![false; self.n()];
        let mut tree = Vec::with_capacity(self.n() - 1);
        for (i, e) in self.edges().iter().enumerate() {
            let (a, _) = find(&mut parent, &mut parity, e.u);
            let (b, _) = find(&mut parent, &mut parity, e.v);
            if a != b {
                parent[a] = b;
                tree.push(i);
            }
        }
        tree
    }

    /// Lexicographically smallest edge-sign vector (with `+ < −`) in the switching class.
    ///
    /// Scanning edges in order, an edge is made positive unless the signs of
    /// earlier edges already fix it through a cycle.
    pub fn canonical_signs(&self) -> Vec<Sign> {
        let mut parent: Vec<usize> = (0..self.n()).collect();
        // parity[x] = τ(x) ≠ τ(parent[x])
        let mut parity = vec![false; self.n()];
        let mut out = Vec::with_capacity(self.num_edges());
        for e in self.edges() {
            let (a, pa) = find(&mut parent, &mut parity, e.u);
            let (b, pb) = find(&mut parent, &mut parity, e.v);
            let flip = e.sign.is_negative();
            if a == b {
                // switched sign is σ τ(u) τ(v)
                out.push(if flip ^ pa ^ pb { Sign::Negative } else { Sign::Positive });
            } else {
                parent[a] = b;
                parity[a] = pa ^ pb ^ flip;
                out.push(Sign::Positive);
            }
        }
        out
    }

    pub fn canonical_form(&self) -> SignedGraph {
        self.with_edge_signs(&self.canonical_signs()).expect("same edge count")
    }

    /// One canonical representative per switching class of the underlying graph,
    /// ordered by the binary value of the cotree signs.
    pub fn switching_classes(&self, edge_limit: usize) -> Result<Vec<SignedGraph>> {
        let m = self.num_edges();
        if m > edge_limit {
            return Err(Error::SizeLimit { what: "edges for the sign scan", size: m, limit: edge_limit });
        }
        let tree = self.greedy_spanning_tree();
        let cotree: Vec<usize> = (0..m).filter(|i| !tree.contains(i)).collect();
        Ok((0u64..1 << cotree.len())
            .map(|mask| {
                let mut signs = vec![Sign::Positive; m];
                for (b, &i) in cotree.iter().enumerate() {
                    if mask >> b & 1 == 1 {
                        signs[i] = Sign::Negative;
                    }
                }
                self.with_edge_signs(&signs).expect("same edge count")
            })
            .collect())
    }
}
