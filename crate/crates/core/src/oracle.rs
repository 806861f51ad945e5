//! Reference all-pairs solvers: Dijkstra from every vertex with a binary
//! heap, and Floyd-Warshall.
//!
//! Neither shares traversal code with the contraction pipeline. Both take a
//! flat copy of the edges up front and work on their own structures.

use std::cmp::Reverse;
use std::collections::BinaryHeap;

use rayon::prelude::*;
use thiserror::Error;

use crate::graph::{Graph, GraphError};
use crate::matrix::{DistanceMatrix, PrecedenceMatrix};
use crate::weight::{VertexId, Weight};

/// Default largest order `floyd_warshall` accepts.
pub const FLOYD_WARSHALL_CAP: usize = 512;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error("graph order {n} exceeds oracle cap {cap}")]
    TooLarge { n: usize, cap: usize },
}

/// Compressed adjacency over the present vertices of a graph.
struct Csr {
    offsets: Vec<usize>,
    targets: Vec<usize>,
    weights: Vec<u64>,
}

impl Csr {
    fn build(g: &Graph) -> Csr {
        let n = g.n_original();
        let mut offsets = Vec::with_capacity(n + 1);
        let mut targets = Vec::with_capacity(2 * g.edge_count());
        let mut weights = Vec::with_capacity(2 * g.edge_count());
        offsets.push(0);
        for i in 0..n {
            let u = VertexId::from_index(i);
            if g.is_present(u) {
                for (v, w) in g.neighbors(u) {
                    targets.push(v.index());
                    weights.push(w.finite().expect("stored weights are finite"));
                }
            }
            offsets.push(targets.len());
        }
        Csr {
            offsets,
            targets,
            weights,
        }
    }

    /// Distances and predecessors (as `index + 1`, 0 for none) from `source`.
    fn single_source(&self, source: usize, dist: &mut [u64], pred: &mut [u32], heap: &mut BinaryHeap<Reverse<(u64, usize)>>) {
        dist.fill(u64::MAX);
        pred.fill(0);
        heap.clear();
        dist[source] = 0;
        heap.push(Reverse((0, source)));
        while let Some(Reverse((d, u))) = heap.pop() {
            if d > dist[u] {
                continue;
            }
            for e in self.offsets[u]..self.offsets[u + 1] {
                let v = self.targets[e];
                let nd = d + self.weights[e];
                if nd < dist[v] {
                    dist[v] = nd;
                    pred[v] = u as u32 + 1;
                    heap.push(Reverse((nd, v)));
                }
            }
        }
    }
}

fn require_connected(g: &Graph) -> Result<(), GraphError> {
    match g.find_unreachable()? {
        Some((from, to)) => Err(GraphError::Disconnected { from, to }),
        None => Ok(()),
    }
}

/// Converts one Dijkstra row into the precedence convention: a predecessor
/// equal to the source is stored as unset.
fn write_row(m: &mut DistanceMatrix, p: &mut PrecedenceMatrix, s: VertexId, dist: &[u64], pred: &[u32], present: &[VertexId]) {
    for &t in present {
        m.set(s, t, Weight::from_raw(dist[t.index()]));
        let q = pred[t.index()];
        p.set(s, t, (q != 0 && q != s.get()).then(|| VertexId::new(q)));
    }
}

/// Dijkstra from every present vertex, one at a time.
pub fn apsp_dijkstra(g: &Graph) -> Result<(DistanceMatrix, PrecedenceMatrix), OracleError> {
    require_connected(g)?;
    let n = g.n_original();
    let csr = Csr::build(g);
    let present: Vec<VertexId> = g.vertices().collect();
    let mut m = DistanceMatrix::new(n);
    let mut p = PrecedenceMatrix::new(n);
    let mut dist = vec![0u64; n];
    let mut pred = vec![0u32; n];
    let mut heap = BinaryHeap::new();
    for &s in &present {
        csr.single_source(s.index(), &mut dist, &mut pred, &mut heap);
        write_row(&mut m, &mut p, s, &dist, &pred, &present);
    }
    Ok((m, p))
}

/// Same result as [`apsp_dijkstra`], sources spread over the rayon pool.
pub fn apsp_dijkstra_parallel(g: &Graph) -> Result<(DistanceMatrix, PrecedenceMatrix), OracleError> {
    require_connected(g)?;
    let n = g.n_original();
    let csr = Csr::build(g);
    let present: Vec<VertexId> = g.vertices().collect();
    let rows: Vec<(VertexId, Vec<u64>, Vec<u32>)> = present
        .par_iter()
        .map_init(
            || (vec![0u64; n], vec![0u32; n], BinaryHeap::new()),
            |(dist, pred, heap), &s| {
                csr.single_source(s.index(), dist, pred, heap);
                (s, dist.clone(), pred.clone())
            },
        )
        .collect();
    let mut m = DistanceMatrix::new(n);
    let mut p = PrecedenceMatrix::new(n);
    for (s, dist, pred) in rows {
        write_row(&mut m, &mut p, s, &dist, &pred, &present);
    }
    Ok((m, p))
}

/// Distance rows from the given sources only, indexed by `VertexId::index`.
pub fn dijkstra_rows(g: &Graph, sources: &[VertexId]) -> Result<Vec<Vec<Weight>>, OracleError> {
    for &s in sources {
        g.check_vertex(s)?;
    }
    let n = g.n_original();
    let csr = Csr::build(g);
    Ok(sources
        .par_iter()
        .map_init(
            || (vec![0u64; n], vec![0u32; n], BinaryHeap::new()),
            |(dist, pred, heap), &s| {
                csr.single_source(s.index(), dist, pred, heap);
                dist.iter().map(|&d| Weight::from_raw(d)).collect()
            },
        )
        .collect())
}

/// Floyd-Warshall over the present vertices, refusing graphs larger than
/// [`FLOYD_WARSHALL_CAP`].
pub fn floyd_warshall(g: &Graph) -> Result<DistanceMatrix, OracleError> {
    floyd_warshall_capped(g, FLOYD_WARSHALL_CAP)
}

pub fn floyd_warshall_capped(g: &Graph, cap: usize) -> Result<DistanceMatrix, OracleError> {
    let n = g.n_original();
    if g.order() > cap {
        return Err(OracleError::TooLarge { n: g.order(), cap });
    }
    let ids: Vec<VertexId> = g.vertices().collect();
    let k = ids.len();
    let mut slot = vec![usize::MAX; n];
    for (s, v) in ids.iter().enumerate() {
        slot[v.index()] = s;
    }
    // u128 cells: sums of two u64 distances cannot overflow
    let inf = u128::MAX;
    let mut d = vec![inf; k * k];
    for i in 0..k {
        d[i * k + i] = 0;
    }
    for (a, b, w) in g.edges() {
        let (i, j) = (slot[a.index()], slot[b.index()]);
        let w = w.finite().expect("stored weights are finite") as u128;
        if w < d[i * k + j] {
            d[i * k + j] = w;
            d[j * k + i] = w;
        }
    }
    for via in 0..k {
        for i in 0..k {
            let left = d[i * k + via];
            if left == inf {
                continue;
            }
            for j in 0..k {
                let right = d[via * k + j];
                if right != inf && left + right < d[i * k + j] {
                    d[i * k + j] = left + right;
                }
            }
        }
    }
    let mut m = DistanceMatrix::new(n);
    for (i, &a) in ids.iter().enumerate() {
        for (j, &b) in ids.iter().enumerate() {
            let c = d[i * k + j];
            m.set(a, b, if c == inf { Weight::INFINITY } else { Weight::new(c as u64) });
        }
    }
    Ok(m)
}
