//! Generator specs such as `cycle:5:unbalanced` or `cycle:3*cycle:4`.

use sgraph::{catalog, SignPattern, SignedGraph};

#[derive(Debug, thiserror::Error)]
pub enum GenError {
    #[error("unknown generator `{0}`")]
    Unknown(String),
    #[error("generator `{spec}`: {msg}")]
    Bad { spec: String, msg: String },
    #[error(transparent)]
    Graph(#[from] sgraph::Error),
}

fn bad(spec: &str, msg: impl Into<String>) -> GenError {
    GenError::Bad { spec: spec.to_string(), msg: msg.into() }
}

fn pattern(spec: &str, tok: Option<&str>) -> Result<SignPattern, GenError> {
    Ok(match tok {
        None | Some("positive") | Some("balanced") => SignPattern::AllPositive,
        Some("negative") => SignPattern::AllNegative,
        Some("unbalanced") | Some("onenegative") => SignPattern::OneNegative,
        Some(other) => return Err(bad(spec, format!("unknown sign pattern `{other}`"))),
    })
}

/// Parses a generator spec.
///
/// ```text
/// cycle:N[:PATTERN]   path:N[:PATTERN]   complete:N[:PATTERN]
/// hypercube:N         hypercube1neg:N
/// petersen            signed-triangle    chorded-heptagon
/// A*B                 Cartesian product
/// ```
/// `PATTERN` is one of `positive`/`balanced`, `negative`, `unbalanced`/`onenegative`.
pub fn parse_gen(spec: &str) -> Result<SignedGraph, GenError> {
    if let Some((a, b)) = spec.split_once('*') {
        return Ok(SignedGraph::cartesian_product(&parse_gen(a)?, &parse_gen(b)?)?);
    }
    let parts: Vec<&str> = spec.trim().split(':').collect();
    let size = || -> Result<usize, GenError> {
        parts
            .get(1)
            .ok_or_else(|| bad(spec, "missing size"))?
            .parse()
            .map_err(|_| bad(spec, "size must be a nonnegative integer"))
    };
    let extra = |max: usize| if parts.len() > max { Err(bad(spec, "too many fields")) } else { Ok(()) };
    let g = match parts[0] {
        "cycle" => {
            extra(3)?;
            SignedGraph::cycle(size()?, pattern(spec, parts.get(2).copied())?)?
        }
        "path" => {
            extra(3)?;
            SignedGraph::path(size()?, pattern(spec, parts.get(2).copied())?)?
        }
        "complete" => {
            extra(3)?;
            SignedGraph::complete(size()?, pattern(spec, parts.get(2).copied())?)?
        }
        "hypercube" => {
            extra(2)?;
            SignedGraph::hypercube(size()?)?
        }
        "hypercube1neg" => {
            extra(2)?;
            SignedGraph::hypercube_one_negative(size()?)?
        }
        "petersen" => {
            extra(1)?;
            catalog::petersen()
        }
        "signed-triangle" => {
            extra(1)?;
            catalog::signed_triangle()
        }
        "chorded-heptagon" => {
            extra(1)?;
            catalog::chorded_heptagon()
        }
        other => return Err(GenError::Unknown(other.to_string())),
    };
    Ok(g)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn specs() {
        let g = parse_gen("cycle:5:unbalanced").unwrap();
        assert_eq!((g.n(), g.negative_edge_count()), (5, 1));
        assert_eq!(parse_gen("hypercube1neg:3").unwrap().n(), 8);
        assert_eq!(parse_gen("cycle:3*path:2").unwrap().n(), 6);
        assert_eq!(parse_gen("complete:4:negative").unwrap().negative_edge_count(), 6);
        assert!(matches!(parse_gen("wheel:5"), Err(GenError::Unknown(_))));
        assert!(matches!(parse_gen("cycle:x"), Err(GenError::Bad { .. })));
        assert!(matches!(parse_gen("cycle:5:odd"), Err(GenError::Bad { .. })));
        assert!(matches!(parse_gen("petersen:3"), Err(GenError::Bad { .. })));
    }
}
