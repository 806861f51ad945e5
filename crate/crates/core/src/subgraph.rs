//! Connected test instances cut out of larger graphs.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::graph::{Graph, GraphError};
use crate::weight::VertexId;

/// An induced subgraph relabeled to `1..=size`.
#[derive(Debug, Clone)]
pub struct Subgraph {
    pub graph: Graph,
    /// `original_ids[new.index()]` is the id the vertex had in the source graph.
    pub original_ids: Vec<VertexId>,
}

/// Grows a breadth-first ball of exactly `size` vertices from a start vertex
/// chosen by `seed` and returns the induced subgraph.
///
/// Selected vertices are relabeled in ascending order of their original ids,
/// so extracting the whole of a `1..=n` graph is the identity.
pub fn extract_connected_subgraph(g: &Graph, size: usize, seed: u64) -> Result<Subgraph, GraphError> {
    if size == 0 || g.order() == 0 {
        return Err(GraphError::EmptyGraph);
    }
    if size > g.order() {
        return Err(GraphError::SubgraphTooLarge { size, n: g.order() });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let present: Vec<VertexId> = g.vertices().collect();
    let start = present[rng.gen_range(0..present.len())];

    let mut selected = g.bfs_order(start, size);
    if selected.len() < size {
        return Err(GraphError::ComponentTooSmall {
            start,
            reached: selected.len(),
            size,
        });
    }
    selected.sort_unstable();

    let mut new_id = vec![0u32; g.n_original()];
    for (i, v) in selected.iter().enumerate() {
        new_id[v.index()] = i as u32 + 1;
    }
    let mut sub = Graph::new(size);
    for &u in &selected {
        for (v, w) in g.neighbors(u) {
            let nv = new_id[v.index()];
            if nv != 0 && v > u {
                sub.write_edge(VertexId::new(new_id[u.index()]), VertexId::new(nv), w.raw());
            }
        }
    }
    Ok(Subgraph {
        graph: sub,
        original_ids: selected,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generate::random_connected_graph;
    use proptest::prelude::*;

    #[test]
    fn whole_graph_is_identity() {
        let g = random_connected_graph(25, 40, 0..=9, 3);
        let sub = extract_connected_subgraph(&g, 25, 11).unwrap();
        assert_eq!(sub.graph, g);
        assert_eq!(sub.original_ids, g.vertices().collect::<Vec<_>>());
    }

    #[test]
    fn single_vertex() {
        let g = random_connected_graph(10, 12, 1..=9, 3);
        let sub = extract_connected_subgraph(&g, 1, 5).unwrap();
        assert_eq!(sub.graph.order(), 1);
        assert_eq!(sub.graph.edge_count(), 0);
    }

    #[test]
    fn too_large() {
        let g = random_connected_graph(10, 12, 1..=9, 3);
        assert_eq!(
            extract_connected_subgraph(&g, 11, 5).unwrap_err(),
            GraphError::SubgraphTooLarge { size: 11, n: 10 }
        );
    }

    #[test]
    fn deterministic_per_seed() {
        let g = random_connected_graph(200, 300, 1..=50, 8);
        let a = extract_connected_subgraph(&g, 60, 42).unwrap();
        let b = extract_connected_subgraph(&g, 60, 42).unwrap();
        assert_eq!(a.graph, b.graph);
        assert_eq!(a.original_ids, b.original_ids);
    }

    #[test]
    fn induced_edges_match_source() {
        let g = random_connected_graph(80, 150, 1..=50, 2);
        let sub = extract_connected_subgraph(&g, 30, 7).unwrap();
        for (a, b, w) in sub.graph.edges() {
            let (oa, ob) = (sub.original_ids[a.index()], sub.original_ids[b.index()]);
            assert_eq!(g.edge_weight(oa, ob).unwrap(), w);
        }
        sub.graph.check_invariants().unwrap();
    }

    proptest! {
        #[test]
        fn result_is_connected_with_requested_order(n in 2usize..120, size_frac in 0.0f64..1.0, seed in any::<u64>()) {
            let g = random_connected_graph(n, 2 * n, 0..=100, seed);
            let size = 1 + ((n - 1) as f64 * size_frac) as usize;
            let sub = extract_connected_subgraph(&g, size, seed).unwrap();
            prop_assert_eq!(sub.graph.order(), size);
            prop_assert!(sub.graph.is_connected().unwrap());
        }
    }
}
