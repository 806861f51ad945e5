//! All-pairs shortest paths for sparse undirected graphs with non-negative
//! integer weights, by contraction and reassembly.
//!
//! The graph is first shrunk by removing low-degree vertices while shortcut
//! edges keep every surviving distance intact ([`disassembly`]). The small
//! graph that remains is solved exactly ([`microsolve`]). Removed vertices
//! are then put back in reverse order, each getting its distance row from
//! its recorded edges ([`assembly`]). The result is a full distance matrix
//! plus a precedence matrix from which any shortest path can be rebuilt
//! ([`paths`]).
//!
//! ```
//! use apsp_core::{solve, Graph, SolveParams, VertexId, Weight};
//!
//! let g = Graph::from_edges(3, &[(1, 2, 1), (2, 3, 1), (1, 3, 5)]);
//! let sol = solve(&g, SolveParams::default()).unwrap();
//! assert_eq!(sol.distances.get(VertexId::new(1), VertexId::new(3)), Weight::new(2));
//! ```

pub mod assembly;
pub mod bench;
pub mod dimacs;
pub mod disassembly;
pub mod generate;
pub mod graph;
pub mod matrix;
pub mod microsolve;
pub mod oracle;
pub mod paths;
pub mod subgraph;
pub mod verify;
pub mod weight;

use thiserror::Error;

pub use assembly::{assemble, restore_vertex, AssemblyError};
pub use disassembly::{disassemble, RemovalRecord, ShrinkSequence, SolveParams};
pub use graph::{Graph, GraphError, GraphStats};
pub use matrix::{DistanceMatrix, PrecedenceMatrix};
pub use microsolve::solve_residual;
pub use paths::{path_weight, reconstruct_path, PathError};
pub use weight::{VertexId, Weight, MAX_INPUT_WEIGHT};

#[derive(Debug, Error)]
pub enum SolveError {
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Assembly(#[from] AssemblyError),
    #[error("edge weights up to {max_weight} on {n} vertices can overflow path lengths")]
    WeightRange { max_weight: u64, n: usize },
}

/// Output of the full pipeline.
#[derive(Debug, Clone)]
pub struct Solution {
    pub distances: DistanceMatrix,
    pub precedence: PrecedenceMatrix,
    pub removals: usize,
    pub residual_order: usize,
    pub max_removed_degree: usize,
}

/// Solves all pairs on a connected graph: contract, solve the residual,
/// reassemble. `g` itself is not modified.
///
/// Among equally short paths the precedence matrix describes one with the
/// fewest edges. With zero-weight edges present this is what keeps every
/// predecessor chain acyclic, and it is obtained by running the pipeline on
/// weights `w * n + 1`, then dividing the distances back down.
pub fn solve(g: &Graph, params: SolveParams) -> Result<Solution, SolveError> {
    let n = g.n_original();
    let scale = if g.edges().any(|(_, _, w)| w == Weight::ZERO) {
        n as u64
    } else {
        1
    };
    let work = scaled(g, scale)?;
    let mut distances = DistanceMatrix::new(n);
    let mut precedence = PrecedenceMatrix::new(n);
    let seq = disassemble(work, params, &mut precedence)?;
    solve_residual(&seq.residual, &mut distances, &mut precedence)?;
    assemble(&seq, &mut distances, &mut precedence)?;
    if scale > 1 {
        for d in distances.cells_mut() {
            if *d != u64::MAX {
                *d /= scale;
            }
        }
    }
    Ok(Solution {
        distances,
        precedence,
        removals: seq.records.len(),
        residual_order: seq.residual.order(),
        max_removed_degree: seq.max_removed_degree(),
    })
}

/// Copy of `g` with every weight mapped to `w * scale + (scale > 1)`,
/// refusing inputs where a simple path could reach the infinity sentinel.
fn scaled(g: &Graph, scale: u64) -> Result<Graph, SolveError> {
    let n = g.n_original();
    let max_weight = g.edges().map(|(_, _, w)| w.finite().unwrap_or(0)).max().unwrap_or(0);
    let step = u64::from(scale > 1);
    let fits = max_weight
        .checked_mul(scale)
        .and_then(|w| w.checked_add(step))
        .and_then(|w| w.checked_mul(n.saturating_sub(1).max(1) as u64))
        .is_some_and(|total| total < u64::MAX);
    if !fits {
        return Err(SolveError::WeightRange { max_weight, n });
    }
    if scale == 1 {
        return Ok(g.clone());
    }
    let mut out = g.clone();
    for (u, v, w) in g.edges() {
        let w = w.finite().expect("stored weights are finite");
        out.write_edge(u, v, w * scale + step);
    }
    Ok(out)
}
