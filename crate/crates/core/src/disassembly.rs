//! Graph contraction: remove low-degree vertices one at a time, writing
//! shortcut edges between their neighbors so that every distance among the
//! surviving vertices is preserved, and log each removal for reassembly.

use crate::graph::{Graph, GraphError};
use crate::matrix::PrecedenceMatrix;
use crate::weight::{add_raw, VertexId, Weight};

/// Contraction limits.
///
/// `max_degree`: vertices of higher degree are never removed (`None` for no
/// limit). `max_edge_growth`: a removal may add at most this many edges net
/// (`None` for no limit; may be negative). `min_order`: contraction stops
/// once this many vertices remain.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SolveParams {
    pub max_degree: Option<usize>,
    pub max_edge_growth: Option<i64>,
    pub min_order: usize,
}

impl Default for SolveParams {
    /// Contract everything down to a single vertex.
    fn default() -> Self {
        SolveParams {
            max_degree: None,
            max_edge_growth: None,
            min_order: 1,
        }
    }
}

impl SolveParams {
    pub fn new(max_degree: Option<usize>, max_edge_growth: Option<i64>, min_order: usize) -> Result<Self, String> {
        if min_order == 0 {
            return Err("min_order must be at least 1".into());
        }
        if max_degree == Some(0) {
            return Err("max_degree must be at least 1".into());
        }
        Ok(SolveParams {
            max_degree,
            max_edge_growth,
            min_order,
        })
    }
}

/// One edge write between two neighbors of a removed vertex.
/// `old` is `INFINITY` when the edge did not exist.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EdgeMutation {
    pub u: VertexId,
    pub v: VertexId,
    pub old: Weight,
    pub new: Weight,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RemovalRecord {
    pub vertex: VertexId,
    /// Incident edges at removal time, ascending by neighbor id.
    pub incident_edges: Vec<(VertexId, Weight)>,
    pub mutations: Vec<EdgeMutation>,
    /// Realized change in edge count.
    pub edge_delta: i64,
}

impl RemovalRecord {
    pub fn degree(&self) -> usize {
        self.incident_edges.len()
    }
}

/// The full contraction log plus the graph that remained.
#[derive(Debug, Clone)]
pub struct ShrinkSequence {
    pub records: Vec<RemovalRecord>,
    pub residual: Graph,
}

impl ShrinkSequence {
    pub fn max_removed_degree(&self) -> usize {
        self.records.iter().map(RemovalRecord::degree).max().unwrap_or(0)
    }
}

/// Length of the two-edge path `a - via - b`; `INFINITY` if either edge is
/// missing.
pub fn shortcut_weight(g: &Graph, via: VertexId, a: VertexId, b: VertexId) -> Result<Weight, GraphError> {
    Ok(g.edge_weight(a, via)? + g.edge_weight(via, b)?)
}

/// Shortest two-edge path between `a` and `b` through any common neighbor
/// other than `excluded`.
pub fn best_alternative_two_hop(g: &Graph, a: VertexId, b: VertexId, excluded: VertexId) -> Result<Weight, GraphError> {
    g.check_vertex(a)?;
    g.check_vertex(b)?;
    g.check_vertex(excluded)?;
    Ok(Weight::from_raw(two_hop_min(g, a, b, excluded, None)))
}

/// Minimum `w(a,h) + w(h,b)` over common neighbors `h != excluded`. With a
/// `bound`, returns as soon as a value `<= bound` is found.
fn two_hop_min(g: &Graph, a: VertexId, b: VertexId, excluded: VertexId, bound: Option<u64>) -> u64 {
    let (small, large) = if g.degree(a) <= g.degree(b) { (a, b) } else { (b, a) };
    let mut best = u64::MAX;
    for first in g.adjacency_raw(small) {
        if first.to == excluded.get() {
            continue;
        }
        let second = g.weight_raw(large, VertexId::new(first.to));
        if second == u64::MAX {
            continue;
        }
        let sum = add_raw(first.weight, second);
        if sum < best {
            best = sum;
            if bound.is_some_and(|limit| best <= limit) {
                return best;
            }
        }
    }
    best
}

/// A shortcut that removing the vertex requires: neighbors `a < b`, the
/// two-hop weight through the vertex, and the weight currently stored.
#[derive(Debug, Clone, Copy)]
struct Shortcut {
    a: VertexId,
    b: VertexId,
    weight: u64,
    current: u64,
}

/// Neighbor pairs whose path through `v` is strictly shorter than both
/// their direct edge and every other two-hop path. Evaluated entirely on
/// the graph before any write.
fn required_shortcuts(g: &Graph, v: VertexId) -> Vec<Shortcut> {
    let nbrs = g.adjacency_raw(v);
    let mut out = Vec::new();
    for (x, first) in nbrs.iter().enumerate() {
        let a = VertexId::new(first.to);
        for second in &nbrs[x + 1..] {
            let b = VertexId::new(second.to);
            let through = add_raw(first.weight, second.weight);
            let current = g.weight_raw(a, b);
            if through >= current {
                continue;
            }
            if two_hop_min(g, a, b, v, Some(through)) <= through {
                continue;
            }
            out.push(Shortcut {
                a,
                b,
                weight: through,
                current,
            });
        }
    }
    out
}

/// Net change in edge count if `v` were removed: minus its degree, plus one
/// for every required shortcut between non-adjacent neighbors. Does not
/// modify `g`.
pub fn edge_delta(g: &Graph, v: VertexId) -> Result<i64, GraphError> {
    g.check_vertex(v)?;
    let k = g.degree(v);
    if k == 0 {
        return Err(GraphError::IsolatedVertex(v));
    }
    let created = required_shortcuts(g, v)
        .iter()
        .filter(|s| s.current == u64::MAX)
        .count();
    Ok(created as i64 - k as i64)
}

/// Removes `v`, first writing every required shortcut among its neighbors
/// and recording in `prec` which vertex precedes each shortcut's endpoint
/// on the path it stands for.
pub fn remove_and_preserve(g: &mut Graph, v: VertexId, prec: &mut PrecedenceMatrix) -> Result<RemovalRecord, GraphError> {
    g.check_vertex(v)?;
    if g.degree(v) == 0 {
        return Err(GraphError::IsolatedVertex(v));
    }
    let shortcuts = required_shortcuts(g, v);
    Ok(apply_removal(g, v, shortcuts, prec))
}

fn apply_removal(g: &mut Graph, v: VertexId, shortcuts: Vec<Shortcut>, prec: &mut PrecedenceMatrix) -> RemovalRecord {
    let mut mutations = Vec::with_capacity(shortcuts.len());
    let mut created = 0i64;
    for s in shortcuts {
        g.write_edge(s.a, s.b, s.weight);
        // last hop into b on a -> v -> b is the last hop of edge (v, b)
        prec.set(s.a, s.b, prec.get(v, s.b).or(Some(v)));
        prec.set(s.b, s.a, prec.get(v, s.a).or(Some(v)));
        if s.current == u64::MAX {
            created += 1;
        }
        mutations.push(EdgeMutation {
            u: s.a,
            v: s.b,
            old: Weight::from_raw(s.current),
            new: Weight::from_raw(s.weight),
        });
    }
    let incident_edges = g.remove_vertex(v).expect("vertex checked present");
    let edge_delta = created - incident_edges.len() as i64;
    RemovalRecord {
        vertex: v,
        incident_edges,
        mutations,
        edge_delta,
    }
}

/// Contraction driver. Holds the graph, the precedence matrix being filled
/// and the removal log.
struct Disassembler<'p> {
    g: Graph,
    prec: &'p mut PrecedenceMatrix,
    params: SolveParams,
    records: Vec<RemovalRecord>,
    stack: Vec<VertexId>,
}

impl Disassembler<'_> {
    fn done(&self) -> bool {
        self.g.order() <= self.params.min_order
    }

    /// Removes `v` if its degree is in `1..=d` and the edge growth limit
    /// allows it. Pushes its former neighbors for re-examination.
    fn try_remove(&mut self, v: VertexId, d: usize) -> bool {
        let k = self.g.degree(v);
        if !self.g.is_present(v) || k == 0 || k > d {
            return false;
        }
        let shortcuts = required_shortcuts(&self.g, v);
        if let Some(limit) = self.params.max_edge_growth {
            let created = shortcuts.iter().filter(|s| s.current == u64::MAX).count() as i64;
            if created - k as i64 > limit {
                return false;
            }
        }
        let rec = apply_removal(&mut self.g, v, shortcuts, self.prec);
        self.stack.extend(rec.incident_edges.iter().rev().map(|&(u, _)| u));
        self.records.push(rec);
        true
    }

    /// Removes `v` if it has degree exactly `d`, then drains the work stack
    /// of neighbors whose degree has dropped to `d` or below.
    fn inspect(&mut self, v: VertexId, d: usize) -> bool {
        if self.g.degree(v) != d || !self.try_remove(v, d) {
            return false;
        }
        while let Some(u) = self.stack.pop() {
            if self.done() {
                self.stack.clear();
                break;
            }
            self.try_remove(u, d);
        }
        true
    }

    fn degree_limit(&self) -> usize {
        self.params
            .max_degree
            .unwrap_or_else(|| self.g.stats().max_degree)
    }

    fn run(mut self) -> ShrinkSequence {
        let n = self.g.n_original();
        'sweeps: while !self.done() {
            let mut progress = false;
            let mut d = 1;
            while d <= self.degree_limit() {
                for idx in 0..n {
                    if self.done() {
                        break 'sweeps;
                    }
                    progress |= self.inspect(VertexId::from_index(idx), d);
                }
                d += 1;
            }
            if !progress {
                break;
            }
        }
        ShrinkSequence {
            records: self.records,
            residual: self.g,
        }
    }
}

/// Contracts a connected graph by removing vertices in ascending degree
/// order (ascending id within a degree), until `params.min_order` vertices
/// remain or a full sweep over all allowed degrees removes nothing.
///
/// `prec` must be freshly created for `g`'s id space; it receives the
/// predecessor entries of every shortcut written.
pub fn disassemble(g: Graph, params: SolveParams, prec: &mut PrecedenceMatrix) -> Result<ShrinkSequence, GraphError> {
    if let Some((from, to)) = g.find_unreachable()? {
        return Err(GraphError::Disconnected { from, to });
    }
    assert_eq!(prec.order(), g.n_original(), "precedence matrix order");
    Ok(Disassembler {
        g,
        prec,
        params,
        records: Vec::new(),
        stack: Vec::new(),
    }
    .run())
}
