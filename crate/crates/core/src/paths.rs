//! Explicit shortest paths from a precedence matrix.

use thiserror::Error;

use crate::graph::Graph;
use crate::matrix::PrecedenceMatrix;
use crate::weight::{VertexId, Weight};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PathError {
    #[error("path endpoints must differ (got {0} twice)")]
    SameEndpoints(VertexId),
    #[error("vertex {0} outside the matrix")]
    OutOfRange(VertexId),
    #[error("predecessor chain from {from} to {to} revisits vertex {at}")]
    Cycle { from: VertexId, to: VertexId, at: VertexId },
    #[error("predecessor chain from {from} to {to} steps {a} -> {b}, which is not an edge")]
    NotAdjacent {
        from: VertexId,
        to: VertexId,
        a: VertexId,
        b: VertexId,
    },
    #[error("predecessor chain from {from} to {to} exceeds {limit} vertices")]
    TooLong { from: VertexId, to: VertexId, limit: usize },
    #[error("empty path")]
    Empty,
}

/// Walks predecessors back from `j` until `i` is reached. An unset entry
/// means the current vertex is entered directly from `i`.
///
/// Every step is checked against `g0`, so a corrupt matrix yields an error
/// rather than a bogus or endless path.
pub fn reconstruct_path(prec: &PrecedenceMatrix, g0: &Graph, i: VertexId, j: VertexId) -> Result<Vec<VertexId>, PathError> {
    let n = prec.order();
    for v in [i, j] {
        if v.index() >= n || v.index() >= g0.n_original() {
            return Err(PathError::OutOfRange(v));
        }
    }
    if i == j {
        return Err(PathError::SameEndpoints(i));
    }
    let mut visited = vec![false; n];
    let mut path = vec![j];
    visited[j.index()] = true;
    let mut current = j;
    while current != i {
        let prev = prec.get(i, current).unwrap_or(i);
        if g0.weight_raw(prev, current) == u64::MAX {
            return Err(PathError::NotAdjacent {
                from: i,
                to: j,
                a: prev,
                b: current,
            });
        }
        if visited[prev.index()] {
            return Err(PathError::Cycle { from: i, to: j, at: prev });
        }
        if path.len() >= n {
            return Err(PathError::TooLong { from: i, to: j, limit: n });
        }
        visited[prev.index()] = true;
        path.push(prev);
        current = prev;
    }
    path.reverse();
    Ok(path)
}

/// Sum of edge weights along `path`; `INFINITY` if some step is not an edge.
pub fn path_weight(g0: &Graph, path: &[VertexId]) -> Result<Weight, PathError> {
    if path.is_empty() {
        return Err(PathError::Empty);
    }
    for &v in path {
        if !g0.is_present(v) {
            return Err(PathError::OutOfRange(v));
        }
    }
    Ok(path
        .windows(2)
        .map(|p| Weight::from_raw(g0.weight_raw(p[0], p[1])))
        .fold(Weight::ZERO, |acc, w| acc + w))
}
