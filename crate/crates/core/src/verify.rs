//! Checking a finished solution against the reference solvers and against
//! the original graph.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::graph::Graph;
use crate::matrix::DistanceMatrix;
use crate::oracle::{apsp_dijkstra_parallel, dijkstra_rows, floyd_warshall_capped, OracleError, FLOYD_WARSHALL_CAP};
use crate::paths::{path_weight, reconstruct_path, PathError};
use crate::weight::{VertexId, Weight};
use crate::Solution;

#[derive(Debug, Error)]
pub enum VerifyError {
    #[error(transparent)]
    Oracle(#[from] OracleError),
    #[error("{reference}: M[{i}][{j}] = {got}, expected {expected}")]
    Distance {
        reference: &'static str,
        i: VertexId,
        j: VertexId,
        got: Weight,
        expected: Weight,
    },
    #[error("path {i} -> {j}: {source}")]
    Path {
        i: VertexId,
        j: VertexId,
        #[source]
        source: PathError,
    },
    #[error("path {i} -> {j} has weight {got}, matrix says {expected}")]
    PathWeight {
        i: VertexId,
        j: VertexId,
        got: Weight,
        expected: Weight,
    },
}

/// What a successful verification covered.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VerifyReport {
    /// Names of the reference solvers compared against.
    pub references: Vec<&'static str>,
    /// Distance rows compared per reference.
    pub rows_checked: usize,
    pub paths_checked: usize,
}

/// First cell where `got` differs from `expected`, as a `Distance` error.
pub fn compare_matrices(reference: &'static str, got: &DistanceMatrix, expected: &DistanceMatrix) -> Result<(), VerifyError> {
    match got.first_mismatch(expected) {
        None => Ok(()),
        Some((i, j, got, expected)) => Err(VerifyError::Distance {
            reference,
            i,
            j,
            got,
            expected,
        }),
    }
}

/// Compares `sol` with Dijkstra from every vertex and, up to the
/// Floyd-Warshall cap, with Floyd-Warshall. Above the cap only `sample`
/// seeded sources are compared. Then rebuilds `sample` random paths and
/// checks each against `g`.
pub fn verify_solution(g: &Graph, sol: &Solution, sample: usize, seed: u64) -> Result<VerifyReport, VerifyError> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let verts: Vec<VertexId> = g.vertices().collect();
    let mut references = Vec::new();
    let rows_checked = if verts.len() <= FLOYD_WARSHALL_CAP {
        let fw = floyd_warshall_capped(g, FLOYD_WARSHALL_CAP)?;
        compare_matrices("floyd-warshall", &sol.distances, &fw)?;
        references.push("floyd-warshall");
        let (dij, _) = apsp_dijkstra_parallel(g)?;
        compare_matrices("dijkstra", &sol.distances, &dij)?;
        references.push("dijkstra");
        verts.len()
    } else {
        let sources: Vec<VertexId> = verts.choose_multiple(&mut rng, sample.min(verts.len())).copied().collect();
        let rows = dijkstra_rows(g, &sources)?;
        for (&i, row) in sources.iter().zip(&rows) {
            for &j in &verts {
                let got = sol.distances.get(i, j);
                if got != row[j.index()] {
                    return Err(VerifyError::Distance {
                        reference: "dijkstra",
                        i,
                        j,
                        got,
                        expected: row[j.index()],
                    });
                }
            }
        }
        references.push("dijkstra");
        sources.len()
    };

    let mut paths_checked = 0;
    if verts.len() >= 2 {
        for _ in 0..sample {
            let i = verts[rng.gen_range(0..verts.len())];
            let mut j = verts[rng.gen_range(0..verts.len() - 1)];
            if j == i {
                j = verts[verts.len() - 1];
            }
            check_path(g, sol, i, j)?;
            paths_checked += 1;
        }
    }
    Ok(VerifyReport {
        references,
        rows_checked,
        paths_checked,
    })
}

/// Rebuilds the `i -> j` path and checks its weight against the matrix.
pub fn check_path(g: &Graph, sol: &Solution, i: VertexId, j: VertexId) -> Result<Vec<VertexId>, VerifyError> {
    let path = reconstruct_path(&sol.precedence, g, i, j).map_err(|source| VerifyError::Path { i, j, source })?;
    let got = path_weight(g, &path).map_err(|source| VerifyError::Path { i, j, source })?;
    let expected = sol.distances.get(i, j);
    if got != expected {
        return Err(VerifyError::PathWeight { i, j, got, expected });
    }
    Ok(path)
}
