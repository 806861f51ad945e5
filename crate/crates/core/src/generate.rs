//! Seeded synthetic instances: random connected graphs for property tests
//! and thinned grids standing in for road networks.

use std::ops::RangeInclusive;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::graph::Graph;
use crate::weight::{VertexId, MAX_INPUT_WEIGHT};

/// A connected simple graph on `n` vertices with `min(max(m, n-1), n(n-1)/2)`
/// edges: a random spanning tree plus uniformly drawn extra edges.
pub fn random_connected_graph(n: usize, m: usize, weights: RangeInclusive<u64>, seed: u64) -> Graph {
    assert!(n >= 1);
    assert!(*weights.end() <= MAX_INPUT_WEIGHT);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut g = Graph::new(n);
    let mut order: Vec<u32> = (1..=n as u32).collect();
    order.shuffle(&mut rng);
    for i in 1..n {
        let parent = order[rng.gen_range(0..i)];
        let w = rng.gen_range(weights.clone());
        g.write_edge(VertexId::new(order[i]), VertexId::new(parent), w);
    }
    let max_edges = n * (n - 1) / 2;
    let target = m.max(n - 1).min(max_edges);
    while g.edge_count() < target {
        let a = VertexId::new(rng.gen_range(1..=n as u32));
        let b = VertexId::new(rng.gen_range(1..=n as u32));
        if a != b && g.weight_raw(a, b) == u64::MAX {
            let w = rng.gen_range(weights.clone());
            g.write_edge(a, b, w);
        }
    }
    g
}

/// Shape of a road-like grid instance.
#[derive(Debug, Clone)]
pub struct GridSpec {
    pub rows: usize,
    pub cols: usize,
    /// Probability that a grid cell receives one diagonal edge.
    pub diagonal_fraction: f64,
    pub weights: RangeInclusive<u64>,
    /// Grid edges outside a random spanning tree are dropped until the
    /// average degree is at most this value.
    pub max_avg_degree: f64,
}

impl Default for GridSpec {
    fn default() -> Self {
        GridSpec {
            rows: 32,
            cols: 32,
            diagonal_fraction: 0.05,
            weights: 1..=100,
            max_avg_degree: 3.0,
        }
    }
}

/// A `rows x cols` grid with random diagonals, thinned to road-like density.
/// Vertex `(r, c)` has id `r * cols + c + 1`. Always connected.
pub fn road_like_grid(spec: &GridSpec, seed: u64) -> Graph {
    let (rows, cols) = (spec.rows, spec.cols);
    assert!(rows >= 1 && cols >= 1);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let id = |r: usize, c: usize| (r * cols + c + 1) as u32;

    let mut edges: Vec<(u32, u32)> = Vec::new();
    for r in 0..rows {
        for c in 0..cols {
            if c + 1 < cols {
                edges.push((id(r, c), id(r, c + 1)));
            }
            if r + 1 < rows {
                edges.push((id(r, c), id(r + 1, c)));
            }
        }
    }
    for r in 0..rows.saturating_sub(1) {
        for c in 0..cols.saturating_sub(1) {
            if rng.gen_bool(spec.diagonal_fraction) {
                if rng.gen_bool(0.5) {
                    edges.push((id(r, c), id(r + 1, c + 1)));
                } else {
                    edges.push((id(r, c + 1), id(r + 1, c)));
                }
            }
        }
    }
    edges.shuffle(&mut rng);

    // Kruskal-style pass: the first edge joining two components is kept as a
    // tree edge, the rest are candidates for thinning.
    let n = rows * cols;
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(parent: &mut [usize], mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }
    let mut tree = Vec::new();
    let mut extra = Vec::new();
    for (a, b) in edges {
        let (ra, rb) = (find(&mut parent, a as usize - 1), find(&mut parent, b as usize - 1));
        if ra != rb {
            parent[ra] = rb;
            tree.push((a, b));
        } else {
            extra.push((a, b));
        }
    }
    let budget = ((spec.max_avg_degree * n as f64) / 2.0).floor() as usize;
    let keep_extra = budget.saturating_sub(tree.len()).min(extra.len());

    let mut g = Graph::new(n);
    for &(a, b) in tree.iter().chain(&extra[..keep_extra]) {
        let w = rng.gen_range(spec.weights.clone());
        g.write_edge(VertexId::new(a), VertexId::new(b), w);
    }
    g
}
