//! Exact all-pairs solve on the residual graph left by contraction, merged
//! into the global matrices.

use std::cmp::Reverse;
use std::collections::BinaryHeap;

use crate::graph::{Graph, GraphError};
use crate::matrix::{DistanceMatrix, PrecedenceMatrix};
use crate::weight::{add_raw, VertexId, Weight};

/// Single-source result, indexed by `VertexId::index`. Absent and
/// unreachable vertices have `INFINITY` and no predecessor.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ShortestPathTree {
    pub source: VertexId,
    pub dist: Vec<Weight>,
    pub pred: Vec<Option<VertexId>>,
}

/// Binary-heap Dijkstra with lazy deletion over the present vertices of `g`.
pub fn dijkstra(g: &Graph, source: VertexId) -> Result<ShortestPathTree, GraphError> {
    g.check_vertex(source)?;
    let n = g.n_original();
    let mut dist = vec![u64::MAX; n];
    let mut pred = vec![None; n];
    let mut heap = BinaryHeap::new();
    dist[source.index()] = 0;
    heap.push(Reverse((0u64, source.get())));
    while let Some(Reverse((d, u))) = heap.pop() {
        let u = VertexId::new(u);
        if d > dist[u.index()] {
            continue;
        }
        for a in g.adjacency_raw(u) {
            let nd = add_raw(d, a.weight);
            let slot = a.to as usize - 1;
            if nd < dist[slot] {
                dist[slot] = nd;
                pred[slot] = Some(u);
                heap.push(Reverse((nd, a.to)));
            }
        }
    }
    Ok(ShortestPathTree {
        source,
        dist: dist.into_iter().map(Weight::from_raw).collect(),
        pred,
    })
}

/// Fills `dist` for every pair of residual vertices and completes their
/// precedence entries.
///
/// A residual edge may stand for a longer original path, so the last hop
/// `(q, j)` of each residual shortest path is expanded through the entry
/// `prec[q][j]` written during contraction. Entries are replaced only when
/// unset, or when the residual edge `(i, j)` is longer than the distance.
/// A one-vertex residual needs no work.
pub fn solve_residual(residual: &Graph, dist: &mut DistanceMatrix, prec: &mut PrecedenceMatrix) -> Result<(), GraphError> {
    if residual.order() <= 1 {
        return Ok(());
    }
    let verts: Vec<VertexId> = residual.vertices().collect();
    let mut updates = Vec::new();
    for &i in &verts {
        let tree = dijkstra(residual, i)?;
        for &j in &verts {
            let d = tree.dist[j.index()];
            if d.is_infinite() {
                return Err(GraphError::Disconnected { from: i, to: j });
            }
            dist.set(i, j, d);
            if j == i {
                continue;
            }
            let current = prec.get(i, j);
            let direct = Weight::from_raw(residual.weight_raw(i, j));
            if current.is_some() && direct <= d {
                continue;
            }
            let q = tree.pred[j.index()].expect("reachable vertex has a predecessor");
            if q != i {
                updates.push((i, j, prec.get(q, j).or(Some(q))));
            }
        }
    }
    // deferred so every expansion reads the contraction-time entries
    for (i, j, p) in updates {
        prec.set(i, j, p);
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::disassembly::{disassemble, remove_and_preserve, SolveParams};
    use crate::generate::random_connected_graph;
    use crate::oracle::{apsp_dijkstra, floyd_warshall};

    fn v(id: u32) -> VertexId {
        VertexId::new(id)
    }

    #[test]
    fn dijkstra_on_path() {
        let g = Graph::from_edges(3, &[(1, 2, 1), (2, 3, 2)]);
        let t = dijkstra(&g, v(1)).unwrap();
        assert_eq!(t.dist, vec![Weight::new(0), Weight::new(1), Weight::new(3)]);
        assert_eq!(t.pred, vec![None, Some(v(1)), Some(v(2))]);
        let one = dijkstra(&Graph::new(1), v(1)).unwrap();
        assert_eq!(one.dist, vec![Weight::ZERO]);
        assert!(dijkstra(&g, v(4)).is_err());
    }

    #[test]
    fn dijkstra_matches_floyd_warshall() {
        for seed in 0..10 {
            let g = random_connected_graph(50, 110, 0..=100, seed);
            let fw = floyd_warshall(&g).unwrap();
            for s in g.vertices() {
                let t = dijkstra(&g, s).unwrap();
                for x in g.vertices() {
                    assert_eq!(t.dist[x.index()], fw.get(s, x));
                }
            }
        }
    }

    #[test]
    fn single_vertex_residual_is_noop() {
        let mut m = DistanceMatrix::new(3);
        let mut p = PrecedenceMatrix::new(3);
        let mut g = Graph::from_edges(3, &[(1, 2, 1), (2, 3, 1)]);
        g.remove_vertex(v(1)).unwrap();
        g.remove_vertex(v(2)).unwrap();
        solve_residual(&g, &mut m, &mut p).unwrap();
        assert_eq!(m, DistanceMatrix::new(3));
        assert_eq!(p, PrecedenceMatrix::new(3));
    }

    #[test]
    fn uncontracted_edge_stays_direct() {
        let g = Graph::from_edges(2, &[(1, 2, 6)]);
        let mut m = DistanceMatrix::new(2);
        let mut p = PrecedenceMatrix::new(2);
        solve_residual(&g, &mut m, &mut p).unwrap();
        assert_eq!(m.get(v(1), v(2)), Weight::new(6));
        assert_eq!(p.get(v(1), v(2)), None);
        assert_eq!(p.get(v(2), v(1)), None);
    }

    #[test]
    fn shortcut_edge_keeps_inner_vertex() {
        // 1 - 2 - 3 with vertex 2 contracted away
        let mut g = Graph::from_edges(3, &[(1, 2, 2), (2, 3, 3)]);
        let mut m = DistanceMatrix::new(3);
        let mut p = PrecedenceMatrix::new(3);
        remove_and_preserve(&mut g, v(2), &mut p).unwrap();
        solve_residual(&g, &mut m, &mut p).unwrap();
        assert_eq!(m.get(v(1), v(3)), Weight::new(5));
        assert_eq!(p.get(v(1), v(3)), Some(v(2)));
        assert_eq!(p.get(v(3), v(1)), Some(v(2)));
    }

    #[test]
    fn residual_distances_equal_original_distances() {
        for seed in 0..20 {
            let g0 = random_connected_graph(70, 160, 0..=500, seed);
            let (oracle, _) = apsp_dijkstra(&g0).unwrap();
            let params = SolveParams::new(Some(3), Some(0), 1).unwrap();
            let mut m = DistanceMatrix::new(70);
            let mut p = PrecedenceMatrix::new(70);
            let seq = disassemble(g0.clone(), params, &mut p).unwrap();
            solve_residual(&seq.residual, &mut m, &mut p).unwrap();
            for i in seq.residual.vertices() {
                for j in seq.residual.vertices() {
                    assert_eq!(m.get(i, j), oracle.get(i, j), "seed {seed} pair {i},{j}");
                }
            }
        }
    }
}
