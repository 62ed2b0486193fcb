//! Spectral geometry toolkit for signed graphs.
//!
//! A signed graph is a finite, simple, connected graph whose edges carry a
//! sign `+1` or `-1`. This crate computes
//!
//! - the normalized signed Laplacian, its spectrum and the signed p-Laplacian
//!   first nonzero eigenvalue ([`spectral`]),
//! - carré du champ operators and their p-versions ([`operators`]),
//! - Bakry-Émery curvature of signed graphs through per-vertex curvature
//!   matrices, with an independent quadratic-form check ([`curvature`]),
//! - frustration index, signed Cheeger constant and strong nodal domains
//!   ([`combinatorics`]),
//! - certificates for eigenvalue, diameter and volume inequalities evaluated on
//!   concrete graphs ([`bounds`]).
//!
//! Everything is deterministic: neighbor iteration happens in index order and
//! randomized searches are seeded.

pub mod bounds;
pub mod catalog;
pub mod combinatorics;
pub mod curvature;
pub mod error;
pub mod graph;
pub mod linalg;
pub mod operators;
pub mod report;
pub mod spectral;

pub use error::{Error, Result};
pub use graph::{Sign, SignPattern, SignedGraph, SwitchingFunction, Walk};
pub use operators::{SignChoice, VertexFunction};

/// Default tolerance used when comparing two sides of an inequality.
pub const INEQUALITY_TOL: f64 = 1e-9;

/// The dimension parameter `N` of a curvature-dimension inequality; `None` is `N = ∞`.
pub type Dimension = Option<f64>;

/// `1/N`, with `1/∞ = 0`.
pub fn inv_dimension(n: Dimension) -> f64 {
    match n {
        Some(n) => 1.0 / n,
        None => 0.0,
    }
}
