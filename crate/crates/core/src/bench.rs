//! Timing the contraction pipeline against Dijkstra from every vertex.

use std::io::{self, Write};
use std::time::{Duration, Instant};

use crate::graph::Graph;
use crate::oracle::{apsp_dijkstra, apsp_dijkstra_parallel, OracleError};
use crate::{solve, SolveError, SolveParams};

pub const CSV_HEADER: &str =
    "instance,n,m,pa_seconds,db_seconds,speedup,removals,residual_order,max_removed_degree,matrices_equal";

#[derive(Debug, Clone, PartialEq)]
pub struct BenchReport {
    pub instance: String,
    pub n: usize,
    pub m: usize,
    /// Best wall time of the contraction pipeline.
    pub pa_seconds: f64,
    /// Best wall time of Dijkstra from every vertex.
    pub db_seconds: f64,
    pub removals: usize,
    pub residual_order: usize,
    pub max_removed_degree: usize,
    pub matrices_equal: bool,
}

impl BenchReport {
    pub fn speedup(&self) -> f64 {
        self.db_seconds / self.pa_seconds
    }

    pub fn csv_row(&self) -> String {
        format!(
            "{},{},{},{:.6},{:.6},{:.3},{},{},{},{}",
            self.instance,
            self.n,
            self.m,
            self.pa_seconds,
            self.db_seconds,
            self.speedup(),
            self.removals,
            self.residual_order,
            self.max_removed_degree,
            self.matrices_equal
        )
    }

    /// Appends the row, writing the header first when `out_is_empty`.
    pub fn append_csv<W: Write>(&self, mut out: W, out_is_empty: bool) -> io::Result<()> {
        if out_is_empty {
            writeln!(out, "{CSV_HEADER}")?;
        }
        writeln!(out, "{}", self.csv_row())
    }
}

#[derive(Debug, thiserror::Error)]
pub enum BenchError {
    #[error(transparent)]
    Solve(#[from] SolveError),
    #[error(transparent)]
    Oracle(#[from] OracleError),
}

/// Minimum wall time of `f` over `repeats` runs (at least one), along with
/// the last result.
pub fn best_of<T>(repeats: usize, mut f: impl FnMut() -> T) -> (Duration, T) {
    let mut best = Duration::MAX;
    let mut last = None;
    for _ in 0..repeats.max(1) {
        let start = Instant::now();
        let out = f();
        best = best.min(start.elapsed());
        last = Some(out);
    }
    (best, last.expect("ran at least once"))
}

/// Times both solvers `repeats` times each and compares their distance
/// matrices once.
pub fn run_bench(instance: &str, g: &Graph, params: SolveParams, repeats: usize, db_single_thread: bool) -> Result<BenchReport, BenchError> {
    let (pa_time, pa) = best_of(repeats, || solve(g, params));
    let pa = pa?;
    let (db_time, db) = best_of(repeats, || {
        if db_single_thread {
            apsp_dijkstra(g)
        } else {
            apsp_dijkstra_parallel(g)
        }
    });
    let (db_dist, _) = db?;
    Ok(BenchReport {
        instance: instance.to_string(),
        n: g.order(),
        m: g.edge_count(),
        pa_seconds: pa_time.as_secs_f64().max(1e-9),
        db_seconds: db_time.as_secs_f64().max(1e-9),
        removals: pa.removals,
        residual_order: pa.residual_order,
        max_removed_degree: pa.max_removed_degree,
        matrices_equal: pa.distances.first_mismatch(&db_dist).is_none(),
    })
}
