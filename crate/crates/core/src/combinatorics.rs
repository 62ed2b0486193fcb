//! Frustration index, signed Cheeger constant and strong nodal domains.
//!
//! Frustration and Cheeger computations are exact and exponential. Vertex sets
//! are bitmasks; switchings are enumerated in Gray-code order so each step
//! updates the negative-edge count in O(1).

use std::cmp::Ordering;

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{Sign, SignedGraph, SwitchingFunction, Walk};

pub const DEFAULT_FRUSTRATION_LIMIT: usize = 24;
pub const DEFAULT_CHEEGER_LIMIT: usize = 20;
const HARD_LIMIT: usize = 63;

/// Neighbor masks split by sign.
struct Masks {
    pos: Vec<u64>,
    neg: Vec<u64>,
}

impl Masks {
    fn new(g: &SignedGraph) -> Self {
        let mut pos = vec![0u64; g.n()];
        let mut neg = vec![0u64; g.n()];
        for x in 0..g.n() {
            for &(y, s) in g.neighbors(x) {
                match s {
                    Sign::Positive => pos[x] |= 1 << y,
                    Sign::Negative => neg[x] |= 1 << y,
                }
            }
        }
        Masks { pos, neg }
    }

    fn adj(&self, v: usize) -> u64 {
        self.pos[v] | self.neg[v]
    }

    /// Edges inside `omega` that are negative after switching the vertices in `t`.
    fn negatives(&self, omega: u64, t: u64) -> u32 {
        let mut twice = 0;
        for v in bits(omega) {
            twice += self.negatives_at(v, omega, t);
        }
        twice / 2
    }

    fn negatives_at(&self, v: usize, omega: u64, t: u64) -> u32 {
        let (same, other) = if t >> v & 1 == 1 { (t, omega & !t) } else { (omega & !t, t) };
        (self.neg[v] & same).count_ones() + (self.pos[v] & other).count_ones()
    }

    /// Minimum of `negatives(omega, t)` over `t0 ^ s` for `s ⊆ free`, in Gray-code order.
    fn min_over(&self, omega: u64, t0: u64, free: &[usize]) -> (u32, u64) {
        let mut t = t0;
        let mut cur = self.negatives(omega, t) as i64;
        let mut best = (cur as u32, t);
        for i in 1u64..(1u64 << free.len()) {
            if best.0 == 0 {
                break;
            }
            let v = free[i.trailing_zeros() as usize];
            let deg_in = (self.adj(v) & omega).count_ones() as i64;
            cur += deg_in - 2 * self.negatives_at(v, omega, t) as i64;
            t ^= 1 << v;
            let c = (cur as u32, t);
            if c < best {
                best = c;
            }
        }
        best
    }
}

fn bits(mut m: u64) -> impl Iterator<Item = usize> {
    std::iter::from_fn(move || {
        if m == 0 {
            None
        } else {
            let v = m.trailing_zeros() as usize;
            m &= m - 1;
            Some(v)
        }
    })
}

fn check_limit(what: &'static str, size: usize, limit: usize) -> Result<()> {
    if size > limit.min(HARD_LIMIT) {
        return Err(Error::SizeLimit { what, size, limit: limit.min(HARD_LIMIT) });
    }
    Ok(())
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FrustrationResult {
    /// `ι^σ(G) = 2 · min_τ #negative edges of σ^τ`.
    pub iota: usize,
    pub optimal_tau: SwitchingFunction,
    pub negative_edges: usize,
}

/// Exact frustration index by enumerating all switchings with vertex 0 pinned.
pub fn frustration_index(g: &SignedGraph, limit: usize) -> Result<FrustrationResult> {
    check_limit("frustration index", g.n(), limit)?;
    let masks = Masks::new(g);
    let n = g.n();
    let omega = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
    let free: Vec<usize> = (1..n).collect();
    // the top free vertices form a prefix handled by separate workers
    let split = free.len().min(4);
    let (low, high) = free.split_at(free.len() - split);
    let (neg, t) = (0u64..1 << split)
        .into_par_iter()
        .map(|prefix| {
            let t0 = high.iter().enumerate().filter(|(i, _)| prefix >> i & 1 == 1).fold(0u64, |m, (_, &v)| m | 1 << v);
            masks.min_over(omega, t0, low)
        })
        .min()
        .expect("at least one prefix");
    let optimal_tau = SwitchingFunction::from_mask(n, t);
    Ok(FrustrationResult { iota: 2 * neg as usize, optimal_tau, negative_edges: neg as usize })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CheegerResult {
    /// `h^σ = min_Ω (ι^σ(G_Ω) + |∂Ω|)/vol(Ω)`.
    pub h: f64,
    /// Minimizing set, sorted.
    pub witness: Vec<usize>,
    pub induced_iota: usize,
    pub boundary: usize,
    pub volume: usize,
}

impl CheegerResult {
    pub fn numerator(&self) -> usize {
        self.induced_iota + self.boundary
    }
}

/// Frustration index of the subgraph induced by `omega`.
fn induced_iota(masks: &Masks, omega: u64) -> usize {
    let free: Vec<usize> = bits(omega).skip(1).collect();
    2 * masks.min_over(omega, 0, &free).0 as usize
}

/// `(numerator, volume, |Ω|, mask)` ordered by value, then size, then vertex list.
fn cheeger_cmp(a: &(usize, usize, u64), b: &(usize, usize, u64)) -> Ordering {
    let lhs = a.0 as u128 * b.1 as u128;
    let rhs = b.0 as u128 * a.1 as u128;
    lhs.cmp(&rhs)
        .then(a.2.count_ones().cmp(&b.2.count_ones()))
        .then_with(|| bits(a.2).cmp(bits(b.2)))
}

/// Exact signed Cheeger constant over all nonempty vertex subsets.
pub fn cheeger_constant(g: &SignedGraph, limit: usize) -> Result<CheegerResult> {
    check_limit("Cheeger constant", g.n(), limit)?;
    let masks = Masks::new(g);
    let n = g.n();
    let deg: Vec<usize> = g.degrees();
    let all = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
    let best = (1u64..=all)
        .into_par_iter()
        .map(|omega| {
            let boundary: usize = bits(omega).map(|v| (masks.adj(v) & !omega).count_ones() as usize).sum();
            let volume: usize = bits(omega).map(|v| deg[v]).sum();
            (induced_iota(&masks, omega) + boundary, volume, omega)
        })
        .min_by(cheeger_cmp)
        .expect("nonempty graph");
    let (num, volume, omega) = best;
    let iota = induced_iota(&masks, omega);
    Ok(CheegerResult {
        h: num as f64 / volume as f64,
        witness: bits(omega).collect(),
        induced_iota: iota,
        boundary: num - iota,
        volume,
    })
}

/// Strong nodal domains of `f`: classes of the support joined by edges with `f(x)σ_xy f(y) > 0`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct NodalDecomposition {
    pub support: Vec<usize>,
    /// Each domain sorted; domains ordered by smallest vertex.
    pub domains: Vec<Vec<usize>>,
}

impl NodalDecomposition {
    pub fn count(&self) -> usize {
        self.domains.len()
    }
}

fn find(parent: &mut [usize], mut x: usize) -> usize {
    while parent[x] != x {
        parent[x] = parent[parent[x]];
        x = parent[x];
    }
    x
}

pub fn strong_nodal_decomposition(g: &SignedGraph, f: &[f64]) -> Result<NodalDecomposition> {
    if f.len() != g.n() {
        return Err(Error::LengthMismatch { expected: g.n(), got: f.len() });
    }
    let mut parent: Vec<usize> = (0..g.n()).collect();
    for e in g.edges() {
        if f[e.u] * e.sign.value() * f[e.v] > 0.0 {
            let (a, b) = (find(&mut parent, e.u), find(&mut parent, e.v));
            parent[a.max(b)] = a.min(b);
        }
    }
    let support: Vec<usize> = (0..g.n()).filter(|&x| f[x] != 0.0).collect();
    let mut domains: Vec<Vec<usize>> = Vec::new();
    let mut slot = vec![usize::MAX; g.n()];
    for &x in &support {
        let r = find(&mut parent, x);
        if slot[r] == usize::MAX {
            slot[r] = domains.len();
            domains.push(Vec::new());
        }
        domains[slot[r]].push(x);
    }
    Ok(NodalDecomposition { support, domains })
}

/// Whether every step of the walk satisfies `f(x_k)σ f(x_{k+1}) > 0` (and `f(x_0) ≠ 0`).
pub fn is_strong_nodal_walk(g: &SignedGraph, f: &[f64], walk: &Walk) -> bool {
    let v = walk.vertices();
    f[v[0]] != 0.0
        && v.windows(2).all(|w| f[w[0]] * g.sign(w[0], w[1]).map_or(0.0, Sign::value) * f[w[1]] > 0.0)
}

/// `σ(P_{x₀x_i}) f(x_i)` along the walk.
pub fn path_sign_trace(g: &SignedGraph, f: &[f64], vertices: &[usize]) -> Result<Vec<f64>> {
    let walk = Walk::new(g, vertices.to_vec())?;
    Ok(walk.vertices().iter().zip(walk.path_sign()).map(|(&x, s)| s.value() * f[x]).collect())
}
