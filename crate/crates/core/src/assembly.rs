//! Reassembly: put removed vertices back in reverse removal order, deriving
//! each one's distance row from its recorded incident edges.

use thiserror::Error;

use crate::disassembly::{RemovalRecord, ShrinkSequence};
use crate::graph::Graph;
use crate::matrix::{DistanceMatrix, PrecedenceMatrix};
use crate::weight::{add_raw, VertexId, Weight};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AssemblyError {
    #[error("restoring vertex {vertex}: neighbor {neighbor} is not present")]
    MissingNeighbor { vertex: VertexId, neighbor: VertexId },
    #[error("vertex {0} is already present")]
    AlreadyPresent(VertexId),
}

/// Vertices whose matrix rows and columns are complete.
#[derive(Debug, Clone)]
pub struct PresentSet {
    flags: Vec<bool>,
    list: Vec<VertexId>,
}

impl PresentSet {
    pub fn from_graph(g: &Graph) -> Self {
        let mut flags = vec![false; g.n_original()];
        let list: Vec<VertexId> = g.vertices().collect();
        for v in &list {
            flags[v.index()] = true;
        }
        PresentSet { flags, list }
    }

    pub fn contains(&self, v: VertexId) -> bool {
        self.flags.get(v.index()).copied().unwrap_or(false)
    }

    pub fn len(&self) -> usize {
        self.list.len()
    }

    pub fn is_empty(&self) -> bool {
        self.list.is_empty()
    }

    /// Members in insertion order.
    pub fn iter(&self) -> impl Iterator<Item = VertexId> + '_ {
        self.list.iter().copied()
    }

    fn insert(&mut self, v: VertexId) {
        self.flags[v.index()] = true;
        self.list.push(v);
    }
}

/// A recorded incident edge together with the precedence entries that
/// describe the original path it stands for, read before any write.
struct RecordedEdge {
    neighbor: VertexId,
    weight: u64,
    /// Predecessor of `neighbor` on the path from the restored vertex.
    outward: Option<VertexId>,
    /// Predecessor of the restored vertex on the path from `neighbor`.
    inward: Option<VertexId>,
}

/// Restores `rec.vertex` on top of the present set.
///
/// For every present `l`, the distance is the minimum over recorded edges
/// `(z, w)` of `w + dist[z][l]`; the minimizing neighbor `x` (lowest id on
/// ties) supplies the path. When the recorded edge to `l` itself attains the
/// minimum, the entries describing that edge are kept. Only row and column
/// `rec.vertex` are written.
pub fn restore_vertex(
    dist: &mut DistanceMatrix,
    prec: &mut PrecedenceMatrix,
    rec: &RemovalRecord,
    present: &mut PresentSet,
) -> Result<(), AssemblyError> {
    let i = rec.vertex;
    if present.contains(i) {
        return Err(AssemblyError::AlreadyPresent(i));
    }
    let mut edges = Vec::with_capacity(rec.incident_edges.len());
    for &(z, w) in &rec.incident_edges {
        if !present.contains(z) {
            return Err(AssemblyError::MissingNeighbor { vertex: i, neighbor: z });
        }
        edges.push(RecordedEdge {
            neighbor: z,
            weight: w.finite().expect("recorded weights are finite"),
            outward: prec.get(i, z),
            inward: prec.get(z, i),
        });
    }

    let mut rows = Vec::with_capacity(present.len());
    for l in present.iter() {
        let mut best = u64::MAX;
        let mut arg = 0;
        for (k, e) in edges.iter().enumerate() {
            let cand = add_raw(e.weight, dist.get(e.neighbor, l).raw());
            if cand < best {
                best = cand;
                arg = k;
            }
        }
        rows.push((l, best, arg));
    }

    for (l, best, arg) in rows {
        dist.set(i, l, Weight::from_raw(best));
        dist.set(l, i, Weight::from_raw(best));
        let (out, inw) = match edges.iter().find(|e| e.neighbor == l) {
            _ if best == u64::MAX => (None, None),
            Some(e) if e.weight == best => (e.outward, e.inward),
            _ => {
                let x = &edges[arg];
                (
                    prec.get(x.neighbor, l).or(Some(x.neighbor)),
                    x.inward.or(Some(x.neighbor)),
                )
            }
        };
        prec.set(i, l, out);
        prec.set(l, i, inw);
    }
    dist.set(i, i, Weight::ZERO);
    prec.set(i, i, None);
    present.insert(i);
    Ok(())
}

/// Restores whose column writes are buffered and flushed together.
const BATCH: usize = 32;

/// A recorded edge in restore-order coordinates. Ids are raw, 0 for unset.
struct Edge {
    pos: usize,
    weight: u64,
    outward: u32,
    inward: u32,
}

/// Replays the removal log backwards, completing both matrices for every
/// vertex of the original graph. `dist` and `prec` must already hold the
/// residual solution.
///
/// Produces exactly what calling [`restore_vertex`] once per record would,
/// but works on matrices relabeled by restore position. The vertices present
/// at any point are then a prefix, so rows are read and written
/// contiguously and the column writes of a batch land in one segment per
/// row. The original labeling is put back at the end.
pub fn assemble(seq: &ShrinkSequence, dist: &mut DistanceMatrix, prec: &mut PrecedenceMatrix) -> Result<(), AssemblyError> {
    let n = dist.order();
    assert_eq!(prec.order(), n, "matrix orders differ");

    // order[t] is the vertex at position t; never-present ids go last
    let mut order: Vec<VertexId> = seq.residual.vertices().collect();
    let residual = order.len();
    let mut pos = vec![usize::MAX; n];
    for (t, v) in order.iter().enumerate() {
        pos[v.index()] = t;
    }
    for rec in seq.records.iter().rev() {
        let i = rec.vertex;
        if pos[i.index()] != usize::MAX {
            return Err(AssemblyError::AlreadyPresent(i));
        }
        if let Some(&(z, _)) = rec.incident_edges.iter().find(|(z, _)| pos[z.index()] == usize::MAX) {
            return Err(AssemblyError::MissingNeighbor { vertex: i, neighbor: z });
        }
        pos[i.index()] = order.len();
        order.push(i);
    }
    let present = order.len();
    for (idx, p) in pos.iter_mut().enumerate() {
        if *p == usize::MAX {
            *p = order.len();
            order.push(VertexId::from_index(idx));
        }
    }

    let raw = |p: Option<VertexId>| p.map_or(0, VertexId::get);
    let steps: Vec<Vec<Edge>> = seq
        .records
        .iter()
        .rev()
        .map(|rec| {
            let i = rec.vertex;
            rec.incident_edges
                .iter()
                .map(|&(z, w)| Edge {
                    pos: pos[z.index()],
                    weight: w.finite().expect("recorded weights are finite"),
                    outward: raw(prec.get(i, z)),
                    inward: raw(prec.get(z, i)),
                })
                .collect()
        })
        .collect();
    let mut block = Vec::with_capacity(residual * residual);
    for &a in &order[..residual] {
        for &b in &order[..residual] {
            block.push((dist.get(a, b).raw(), raw(prec.get(a, b))));
        }
    }

    let d = dist.cells_mut();
    let p = prec.cells_mut();
    d.fill(u64::MAX);
    p.fill(0);
    for t in 0..n {
        d[t * n + t] = 0;
    }
    for a in 0..residual {
        for b in 0..residual {
            let (dv, pv) = block[a * residual + b];
            d[a * n + b] = dv;
            p[a * n + b] = pv;
        }
    }

    let mut work = Batch {
        n,
        d,
        p,
        order: &order,
        t0: residual,
        best: vec![0; n],
        arg: vec![0; n],
        slot: vec![0; n],
        pcol: vec![0; BATCH * n],
    };
    while work.t0 < present {
        let t1 = (work.t0 + BATCH).min(present);
        for t in work.t0..t1 {
            work.restore(t, &steps[t - residual]);
        }
        work.flush(t1);
        work.t0 = t1;
    }

    unpermute(dist.cells_mut(), n, &order);
    unpermute(prec.cells_mut(), n, &order);
    Ok(())
}

/// Assembly state in restore-order coordinates. Rows of positions below
/// `t0` are complete; for positions in `t0..` only the part left of the
/// diagonal is written, with precedence columns held in `pcol`.
struct Batch<'a> {
    n: usize,
    d: &'a mut [u64],
    p: &'a mut [u32],
    order: &'a [VertexId],
    t0: usize,
    best: Vec<u64>,
    arg: Vec<u32>,
    slot: Vec<u32>,
    pcol: Vec<u32>,
}

impl Batch<'_> {
    #[inline]
    fn dist(&self, a: usize, b: usize) -> u64 {
        if a >= b {
            self.d[a * self.n + b]
        } else {
            self.d[b * self.n + a]
        }
    }

    #[inline]
    fn pred(&self, a: usize, b: usize) -> u32 {
        if a > b || b < self.t0 {
            self.p[a * self.n + b]
        } else {
            self.pcol[(b - self.t0) * self.n + a]
        }
    }

    fn restore(&mut self, t: usize, edges: &[Edge]) {
        let (n, t0) = (self.n, self.t0);
        self.best[..t].fill(u64::MAX);
        for (k, e) in edges.iter().enumerate() {
            let k = k as u32;
            let row = &self.d[e.pos * n..e.pos * n + t0];
            for ((b, a), &dz) in self.best[..t0].iter_mut().zip(&mut self.arg[..t0]).zip(row) {
                let cand = e.weight.saturating_add(dz);
                if cand < *b {
                    *b = cand;
                    *a = k;
                }
            }
            for l in t0..t {
                let cand = e.weight.saturating_add(self.dist(e.pos, l));
                if cand < self.best[l] {
                    self.best[l] = cand;
                    self.arg[l] = k;
                }
            }
            self.slot[e.pos] = k + 1;
        }
        self.d[t * n..t * n + t].copy_from_slice(&self.best[..t]);

        for l in 0..t {
            let best = self.best[l];
            let direct = self.slot[l].checked_sub(1).map(|k| &edges[k as usize]);
            let (out, inw) = match direct {
                _ if best == u64::MAX => (0, 0),
                Some(e) if e.weight == best => (e.outward, e.inward),
                _ => {
                    let x = &edges[self.arg[l] as usize];
                    let xid = self.order[x.pos].get();
                    let via = self.pred(x.pos, l);
                    (
                        if via == 0 { xid } else { via },
                        if x.inward == 0 { xid } else { x.inward },
                    )
                }
            };
            self.p[t * n + l] = out;
            self.pcol[(t - t0) * n + l] = inw;
        }
        for e in edges {
            self.slot[e.pos] = 0;
        }
    }

    /// Writes the buffered columns of positions `t0..t1`.
    fn flush(&mut self, t1: usize) {
        let (n, t0) = (self.n, self.t0);
        for l in 0..t1 {
            for tp in t0.max(l + 1)..t1 {
                self.d[l * n + tp] = self.d[tp * n + l];
                self.p[l * n + tp] = self.pcol[(tp - t0) * n + l];
            }
        }
    }
}

/// Moves cell `(a, b)` of a matrix in restore-order coordinates to
/// `(order[a], order[b])`, in place.
fn unpermute<T: Copy + Default>(cells: &mut [T], n: usize, order: &[VertexId]) {
    let mut tmp = vec![T::default(); n];
    for row in cells.chunks_exact_mut(n.max(1)) {
        for (c, &v) in row.iter().zip(order) {
            tmp[v.index()] = *c;
        }
        row.copy_from_slice(&tmp);
    }
    let mut done = vec![false; n];
    for start in 0..n {
        if done[start] {
            continue;
        }
        tmp.copy_from_slice(&cells[start * n..(start + 1) * n]);
        let mut t = start;
        loop {
            let dest = order[t].index();
            cells[dest * n..(dest + 1) * n].swap_with_slice(&mut tmp);
            done[t] = true;
            t = dest;
            if t == start {
                break;
            }
        }
    }
}
