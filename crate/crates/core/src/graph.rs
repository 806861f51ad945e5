//! Mutable undirected simple graph with stable vertex ids.
//!
//! Adjacency is one id-sorted `Vec` per vertex. Road-like graphs keep vertex
//! degrees small even after contraction, so a binary search over a short
//! contiguous list beats hashing for weight lookup, and neighbor iteration
//! comes out in ascending id order for free.

use std::collections::VecDeque;

use thiserror::Error;

use crate::weight::{VertexId, Weight};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("vertex {id} is out of range 1..={n}")]
    VertexOutOfRange { id: u32, n: usize },
    #[error("vertex {0} is not present")]
    VertexNotPresent(VertexId),
    #[error("self-loop at vertex {0}")]
    SelfLoop(VertexId),
    #[error("edge weight must be finite")]
    InfiniteWeight,
    #[error("vertex {0} has no incident edges")]
    IsolatedVertex(VertexId),
    #[error("graph is disconnected: vertex {to} is unreachable from vertex {from}")]
    Disconnected { from: VertexId, to: VertexId },
    #[error("graph has no vertices")]
    EmptyGraph,
    #[error("requested subgraph of {size} vertices from a graph of {n}")]
    SubgraphTooLarge { size: usize, n: usize },
    #[error("component of start vertex {start} has only {reached} vertices, {size} requested")]
    ComponentTooSmall {
        start: VertexId,
        reached: usize,
        size: usize,
    },
}

/// Order, size and degree profile of a graph.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GraphStats {
    pub n: usize,
    pub m: usize,
    pub max_degree: usize,
}

impl GraphStats {
    /// `2m / n`, zero for the empty graph.
    pub fn avg_degree(&self) -> f64 {
        if self.n == 0 {
            0.0
        } else {
            2.0 * self.m as f64 / self.n as f64
        }
    }
}

/// One adjacency entry.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) struct Arc {
    pub to: u32,
    pub weight: u64,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    present: Vec<bool>,
    present_count: usize,
    adjacency: Vec<Vec<Arc>>,
    m: usize,
}

impl Graph {
    /// `n` present vertices with ids `1..=n` and no edges.
    pub fn new(n: usize) -> Self {
        assert!(n < u32::MAX as usize, "vertex count exceeds id space");
        Graph {
            present: vec![true; n],
            present_count: n,
            adjacency: vec![Vec::new(); n],
            m: 0,
        }
    }

    /// Builds a graph from undirected edges. Panics on invalid input; meant
    /// for tests and generators where edges are known-good.
    pub fn from_edges(n: usize, edges: &[(u32, u32, u64)]) -> Self {
        let mut g = Graph::new(n);
        for &(u, v, w) in edges {
            g.insert_min_edge(VertexId::new(u), VertexId::new(v), Weight::new(w))
                .expect("valid edge");
        }
        g
    }

    /// Vertex count of the original graph; the id space is `1..=n_original`.
    pub fn n_original(&self) -> usize {
        self.present.len()
    }

    /// Number of currently present vertices.
    pub fn order(&self) -> usize {
        self.present_count
    }

    /// Number of undirected edges.
    pub fn edge_count(&self) -> usize {
        self.m
    }

    pub fn is_present(&self, v: VertexId) -> bool {
        self.present.get(v.index()).copied().unwrap_or(false)
    }

    pub fn check_vertex(&self, v: VertexId) -> Result<(), GraphError> {
        if v.index() >= self.n_original() {
            return Err(GraphError::VertexOutOfRange {
                id: v.get(),
                n: self.n_original(),
            });
        }
        if !self.present[v.index()] {
            return Err(GraphError::VertexNotPresent(v));
        }
        Ok(())
    }

    /// Present vertices in ascending id order.
    pub fn vertices(&self) -> impl Iterator<Item = VertexId> + '_ {
        self.present
            .iter()
            .enumerate()
            .filter(|(_, &p)| p)
            .map(|(i, _)| VertexId::from_index(i))
    }

    /// Degree of a present vertex; 0 for absent ones.
    #[inline]
    pub fn degree(&self, v: VertexId) -> usize {
        self.adjacency[v.index()].len()
    }

    /// Neighbors of `v` with edge weights, ascending by id.
    pub fn neighbors(&self, v: VertexId) -> impl ExactSizeIterator<Item = (VertexId, Weight)> + '_ {
        self.adjacency[v.index()]
            .iter()
            .map(|a| (VertexId::new(a.to), Weight::from_raw(a.weight)))
    }

    #[inline]
    pub(crate) fn adjacency_raw(&self, v: VertexId) -> &[Arc] {
        &self.adjacency[v.index()]
    }

    /// Raw weight lookup without presence checks; `u64::MAX` if not adjacent.
    #[inline]
    pub(crate) fn weight_raw(&self, u: VertexId, v: VertexId) -> u64 {
        let list = &self.adjacency[u.index()];
        match list.binary_search_by_key(&v.get(), |a| a.to) {
            Ok(pos) => list[pos].weight,
            Err(_) => u64::MAX,
        }
    }

    /// Stored weight of edge `{u, v}`, or `INFINITY` when not adjacent.
    /// A vertex is never adjacent to itself.
    pub fn edge_weight(&self, u: VertexId, v: VertexId) -> Result<Weight, GraphError> {
        self.check_vertex(u)?;
        self.check_vertex(v)?;
        Ok(Weight::from_raw(self.weight_raw(u, v)))
    }

    /// Writes edge `{u, v}` with weight `w`, replacing any existing weight.
    pub fn set_edge(&mut self, u: VertexId, v: VertexId, w: Weight) -> Result<(), GraphError> {
        self.check_vertex(u)?;
        self.check_vertex(v)?;
        if u == v {
            return Err(GraphError::SelfLoop(u));
        }
        if w.is_infinite() {
            return Err(GraphError::InfiniteWeight);
        }
        self.write_edge(u, v, w.raw());
        Ok(())
    }

    /// Like `set_edge` but keeps the smaller weight when the edge exists.
    pub fn insert_min_edge(&mut self, u: VertexId, v: VertexId, w: Weight) -> Result<(), GraphError> {
        let current = self.edge_weight(u, v)?;
        if w < current {
            self.set_edge(u, v, w)?;
        }
        Ok(())
    }

    pub(crate) fn write_edge(&mut self, u: VertexId, v: VertexId, weight: u64) {
        let added = upsert(&mut self.adjacency[u.index()], Arc { to: v.get(), weight });
        upsert(&mut self.adjacency[v.index()], Arc { to: u.get(), weight });
        if added {
            self.m += 1;
        }
    }

    /// Removes `v` and its incident edges, returning those edges as they were.
    /// Weights between surviving vertices are left untouched.
    pub fn remove_vertex(&mut self, v: VertexId) -> Result<Vec<(VertexId, Weight)>, GraphError> {
        self.check_vertex(v)?;
        let incident = std::mem::take(&mut self.adjacency[v.index()]);
        for a in &incident {
            let list = &mut self.adjacency[a.to as usize - 1];
            if let Ok(pos) = list.binary_search_by_key(&v.get(), |x| x.to) {
                list.remove(pos);
            }
        }
        self.m -= incident.len();
        self.present[v.index()] = false;
        self.present_count -= 1;
        Ok(incident
            .into_iter()
            .map(|a| (VertexId::new(a.to), Weight::from_raw(a.weight)))
            .collect())
    }

    /// Inverse of `remove_vertex`: makes `v` present again with the given
    /// incident edges. Every neighbor must be present.
    pub fn reinsert_vertex(&mut self, v: VertexId, edges: &[(VertexId, Weight)]) -> Result<(), GraphError> {
        if v.index() >= self.n_original() {
            return Err(GraphError::VertexOutOfRange {
                id: v.get(),
                n: self.n_original(),
            });
        }
        if !self.present[v.index()] {
            self.present[v.index()] = true;
            self.present_count += 1;
        }
        for &(u, w) in edges {
            self.set_edge(v, u, w)?;
        }
        Ok(())
    }

    /// Undirected edges as `(u, v, w)` with `u < v`, ascending.
    pub fn edges(&self) -> impl Iterator<Item = (VertexId, VertexId, Weight)> + '_ {
        self.adjacency.iter().enumerate().flat_map(|(i, list)| {
            let u = VertexId::from_index(i);
            list.iter()
                .filter(move |a| a.to > u.get())
                .map(move |a| (u, VertexId::new(a.to), Weight::from_raw(a.weight)))
        })
    }

    pub fn is_connected(&self) -> Result<bool, GraphError> {
        Ok(self.find_unreachable()?.is_none())
    }

    /// First vertex (by id) unreachable from the lowest present vertex,
    /// paired with that start vertex.
    pub fn find_unreachable(&self) -> Result<Option<(VertexId, VertexId)>, GraphError> {
        let start = self.vertices().next().ok_or(GraphError::EmptyGraph)?;
        let seen = self.bfs_order(start, usize::MAX);
        if seen.len() == self.present_count {
            return Ok(None);
        }
        let mut mark = vec![false; self.n_original()];
        for v in &seen {
            mark[v.index()] = true;
        }
        let missing = self
            .vertices()
            .find(|v| !mark[v.index()])
            .expect("some vertex is unreached");
        Ok(Some((start, missing)))
    }

    /// Breadth-first visit order from `start`, neighbors taken in ascending
    /// id, stopping after `limit` vertices.
    pub fn bfs_order(&self, start: VertexId, limit: usize) -> Vec<VertexId> {
        let mut seen = vec![false; self.n_original()];
        let mut order = Vec::new();
        let mut queue = VecDeque::new();
        seen[start.index()] = true;
        queue.push_back(start);
        while let Some(v) = queue.pop_front() {
            order.push(v);
            if order.len() >= limit {
                break;
            }
            for a in &self.adjacency[v.index()] {
                let slot = a.to as usize - 1;
                if !seen[slot] {
                    seen[slot] = true;
                    queue.push_back(VertexId::new(a.to));
                }
            }
        }
        order
    }

    pub fn stats(&self) -> GraphStats {
        GraphStats {
            n: self.present_count,
            m: self.m,
            max_degree: self
                .vertices()
                .map(|v| self.degree(v))
                .max()
                .unwrap_or(0),
        }
    }

    /// Full scan of the structural invariants: symmetry, no loops, finite
    /// weights, sorted adjacency, edge count, and no edges to absent vertices.
    pub fn check_invariants(&self) -> Result<(), String> {
        let mut directed = 0usize;
        for (i, list) in self.adjacency.iter().enumerate() {
            let u = VertexId::from_index(i);
            if !self.present[i] && !list.is_empty() {
                return Err(format!("absent vertex {u} has edges"));
            }
            for pair in list.windows(2) {
                if pair[0].to >= pair[1].to {
                    return Err(format!("adjacency of {u} not strictly sorted"));
                }
            }
            for a in list {
                let (v, w) = (VertexId::new(a.to), a.weight);
                if v == u {
                    return Err(format!("self-loop at {u}"));
                }
                if w == u64::MAX {
                    return Err(format!("infinite weight on {u}-{v}"));
                }
                if !self.is_present(v) {
                    return Err(format!("edge {u}-{v} to absent vertex"));
                }
                if self.weight_raw(v, u) != w {
                    return Err(format!("asymmetric edge {u}-{v}"));
                }
            }
            directed += list.len();
        }
        if directed != 2 * self.m {
            return Err(format!("edge count {} but {} arcs stored", self.m, directed));
        }
        let count = self.present.iter().filter(|&&p| p).count();
        if count != self.present_count {
            return Err(format!("present count {} but {} flagged", self.present_count, count));
        }
        Ok(())
    }
}

/// Inserts or overwrites `arc` in an id-sorted list; true if inserted.
fn upsert(list: &mut Vec<Arc>, arc: Arc) -> bool {
    match list.binary_search_by_key(&arc.to, |a| a.to) {
        Ok(pos) => {
            list[pos] = arc;
            false
        }
        Err(pos) => {
            list.insert(pos, arc);
            true
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(id: u32) -> VertexId {
        VertexId::new(id)
    }

    fn path3() -> Graph {
        Graph::from_edges(3, &[(1, 2, 1), (2, 3, 2)])
    }

    #[test]
    fn edge_weight_lookup() {
        let g = Graph::from_edges(3, &[(1, 2, 7)]);
        assert_eq!(g.edge_weight(v(1), v(2)).unwrap(), Weight::new(7));
        assert_eq!(g.edge_weight(v(2), v(1)).unwrap(), Weight::new(7));
        assert_eq!(g.edge_weight(v(1), v(3)).unwrap(), Weight::INFINITY);
        assert_eq!(g.edge_weight(v(1), v(1)).unwrap(), Weight::INFINITY);
        assert_eq!(
            g.edge_weight(v(1), v(4)),
            Err(GraphError::VertexOutOfRange { id: 4, n: 3 })
        );
    }

    #[test]
    fn set_edge_counts_only_new_edges() {
        let mut g = Graph::new(3);
        g.set_edge(v(1), v(2), Weight::new(5)).unwrap();
        assert_eq!(g.edge_count(), 1);
        g.set_edge(v(2), v(1), Weight::new(3)).unwrap();
        assert_eq!(g.edge_count(), 1);
        assert_eq!(g.edge_weight(v(1), v(2)).unwrap(), Weight::new(3));
        assert_eq!(g.set_edge(v(1), v(1), Weight::new(1)), Err(GraphError::SelfLoop(v(1))));
        assert_eq!(
            g.set_edge(v(1), v(3), Weight::INFINITY),
            Err(GraphError::InfiniteWeight)
        );
        g.check_invariants().unwrap();
    }

    #[test]
    fn remove_vertex_returns_incident_edges() {
        let mut g = path3();
        let edges = g.remove_vertex(v(2)).unwrap();
        assert_eq!(edges, vec![(v(1), Weight::new(1)), (v(3), Weight::new(2))]);
        assert_eq!(g.edge_count(), 0);
        assert_eq!(g.order(), 2);
        assert_eq!(g.remove_vertex(v(2)), Err(GraphError::VertexNotPresent(v(2))));
        g.check_invariants().unwrap();
    }

    #[test]
    fn remove_isolated_and_triangle_vertex() {
        let mut g = Graph::new(2);
        assert!(g.remove_vertex(v(1)).unwrap().is_empty());

        let mut t = Graph::from_edges(3, &[(1, 2, 1), (2, 3, 1), (1, 3, 5)]);
        let edges = t.remove_vertex(v(2)).unwrap();
        assert_eq!(edges.len(), 2);
        assert_eq!(t.edge_weight(v(1), v(3)).unwrap(), Weight::new(5));
    }

    #[test]
    fn reinsert_restores_graph() {
        let g0 = Graph::from_edges(4, &[(1, 2, 1), (2, 3, 2), (2, 4, 9), (3, 4, 1)]);
        let mut g = g0.clone();
        let edges = g.remove_vertex(v(2)).unwrap();
        g.reinsert_vertex(v(2), &edges).unwrap();
        assert_eq!(g, g0);
    }

    #[test]
    fn connectivity() {
        assert!(path3().is_connected().unwrap());
        let split = Graph::from_edges(4, &[(1, 2, 1), (3, 4, 1)]);
        assert!(!split.is_connected().unwrap());
        assert_eq!(split.find_unreachable().unwrap(), Some((v(1), v(3))));
        assert!(Graph::new(1).is_connected().unwrap());
        assert_eq!(Graph::new(0).is_connected(), Err(GraphError::EmptyGraph));
    }

    #[test]
    fn stats_of_small_graphs() {
        let s = path3().stats();
        assert_eq!((s.n, s.m, s.max_degree), (3, 2, 2));
        assert!((s.avg_degree() - 4.0 / 3.0).abs() < 1e-12);
        let one = Graph::new(1).stats();
        assert_eq!((one.n, one.m, one.max_degree), (1, 0, 0));
    }

    #[test]
    fn edges_are_ascending_pairs() {
        let g = Graph::from_edges(4, &[(3, 1, 4), (2, 1, 1), (4, 3, 2)]);
        let e: Vec<_> = g.edges().map(|(a, b, w)| (a.get(), b.get(), w.finite().unwrap())).collect();
        assert_eq!(e, vec![(1, 2, 1), (1, 3, 4), (3, 4, 2)]);
    }
}
