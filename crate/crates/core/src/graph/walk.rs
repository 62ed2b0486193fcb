use super::{Sign, SignedGraph};
use crate::error::{Error, Result};

/// A walk `x_0 ∼ x_1 ∼ … ∼ x_t` together with the running path signs
/// `σ(P_{x_0 x_i}) = σ_{x_0 x_1} ⋯ σ_{x_{i−1} x_i}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Walk {
    vertices: Vec<usize>,
    path_sign: Vec<Sign>,
}

impl Walk {
    pub fn new(g: &SignedGraph, vertices: Vec<usize>) -> Result<Self> {
        let first = *vertices
            .first()
            .ok_or_else(|| Error::InvalidParameter("a walk needs at least one vertex".into()))?;
        if first >= g.n() {
            return Err(Error::VertexOutOfRange(first));
        }
        let mut path_sign = Vec::with_capacity(vertices.len());
        path_sign.push(Sign::Positive);
        for w in vertices.windows(2) {
            if w[1] >= g.n() {
                return Err(Error::VertexOutOfRange(w[1]));
            }
            let s = g.sign(w[0], w[1]).ok_or(Error::NotAdjacent(w[0], w[1]))?;
            let last = *path_sign.last().expect("non-empty");
            path_sign.push(last * s);
        }
        Ok(Walk { vertices, path_sign })
    }

    pub fn vertices(&self) -> &[usize] {
        &self.vertices
    }

    pub fn path_sign(&self) -> &[Sign] {
        &self.path_sign
    }

    /// Number of steps `t`.
    pub fn len(&self) -> usize {
        self.vertices.len() - 1
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.len() == 1
    }
}
