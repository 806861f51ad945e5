//! C interface to `apsp-core`.
//!
//! Graphs and solutions are opaque heap objects owned by the caller and
//! released with their `_free` function. Every fallible call returns an
//! [`ApspStatus`]; on failure a description of the most recent error on the
//! calling thread is available from [`apsp_last_error`]. Vertex ids are
//! 1-based, as in DIMACS files.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use apsp_core::dimacs::parse_dimacs_str;
use apsp_core::{reconstruct_path, solve, Graph, GraphError, Solution, SolveError, SolveParams, VertexId, Weight, MAX_INPUT_WEIGHT};

/// Distance reported for unreachable pairs.
pub const APSP_INFINITY: u64 = u64::MAX;

/// Parameter value meaning "no limit".
pub const APSP_UNBOUNDED: i64 = i64::MAX;

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ApspStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidArgument = 2,
    Parse = 3,
    Disconnected = 4,
    VertexOutOfRange = 5,
    BufferTooSmall = 6,
    Panic = 7,
}

/// Contraction limits. Use [`apsp_params_default`] for the full-contraction
/// setting.
#[repr(C)]
#[derive(Debug, Clone, Copy)]
pub struct ApspParams {
    /// Largest degree of a removed vertex, at least 1, or `APSP_UNBOUNDED`.
    pub max_degree: i64,
    /// Largest net edge growth per removal, or `APSP_UNBOUNDED`.
    pub max_edge_growth: i64,
    /// Contraction stops at this many vertices; at least 1.
    pub min_order: u64,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, Default)]
pub struct ApspSolveStats {
    pub removals: u64,
    pub residual_order: u64,
    pub max_removed_degree: u64,
}

/// An undirected graph on vertices `1..=n`.
pub struct ApspGraph(Graph);

/// The distance and precedence matrices of a solved graph.
pub struct ApspSolution {
    graph: Graph,
    solution: Solution,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_last_error(msg: impl Into<String>) {
    let text = msg.into().replace('\0', " ");
    LAST_ERROR.with(|e| *e.borrow_mut() = CString::new(text).ok());
}

fn fail(status: ApspStatus, msg: impl Into<String>) -> ApspStatus {
    set_last_error(msg);
    status
}

fn guard(f: impl FnOnce() -> ApspStatus) -> ApspStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(status) => status,
        Err(payload) => {
            let msg = payload
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| payload.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_else(|| "panic".to_string());
            fail(ApspStatus::Panic, msg)
        }
    }
}

fn graph_status(err: &GraphError) -> ApspStatus {
    match err {
        GraphError::VertexOutOfRange { .. } | GraphError::VertexNotPresent(_) => ApspStatus::VertexOutOfRange,
        GraphError::Disconnected { .. } | GraphError::IsolatedVertex(_) => ApspStatus::Disconnected,
        _ => ApspStatus::InvalidArgument,
    }
}

fn vertex(n: usize, id: u32) -> Result<VertexId, ApspStatus> {
    if id == 0 || id as usize > n {
        return Err(fail(ApspStatus::VertexOutOfRange, format!("vertex {id} is out of range 1..={n}")));
    }
    Ok(VertexId::new(id))
}

macro_rules! non_null {
    ($($p:ident),+) => {
        $(if $p.is_null() {
            return fail(ApspStatus::NullPointer, concat!("`", stringify!($p), "` is null"));
        })+
    };
}

/// Static description of a status code. Never null.
#[no_mangle]
pub extern "C" fn apsp_status_message(status: ApspStatus) -> *const c_char {
    let msg: &'static CStr = match status {
        ApspStatus::Ok => c"ok",
        ApspStatus::NullPointer => c"null pointer argument",
        ApspStatus::InvalidArgument => c"invalid argument",
        ApspStatus::Parse => c"malformed DIMACS input",
        ApspStatus::Disconnected => c"graph is not connected",
        ApspStatus::VertexOutOfRange => c"vertex id out of range",
        ApspStatus::BufferTooSmall => c"buffer too small",
        ApspStatus::Panic => c"internal error",
    };
    msg.as_ptr()
}

/// Description of the last failure on this thread, or null if there was
/// none. Valid until the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn apsp_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |s| s.as_ptr()))
}

/// Full contraction: no degree or growth limit, down to one vertex.
#[no_mangle]
pub extern "C" fn apsp_params_default() -> ApspParams {
    ApspParams {
        max_degree: APSP_UNBOUNDED,
        max_edge_growth: APSP_UNBOUNDED,
        min_order: 1,
    }
}

/// Creates an edgeless graph on `n >= 1` vertices.
///
/// # Safety
/// `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn apsp_graph_new(n: usize, out: *mut *mut ApspGraph) -> ApspStatus {
    guard(|| {
        non_null!(out);
        if n == 0 || n > u32::MAX as usize {
            return fail(ApspStatus::InvalidArgument, format!("invalid vertex count {n}"));
        }
        *out = Box::into_raw(Box::new(ApspGraph(Graph::new(n))));
        ApspStatus::Ok
    })
}

/// Parses a NUL-terminated DIMACS shortest-path text.
///
/// # Safety
/// `text` must point to a NUL-terminated string and `out` must be valid for
/// writes.
#[no_mangle]
pub unsafe extern "C" fn apsp_graph_parse_dimacs(text: *const c_char, out: *mut *mut ApspGraph) -> ApspStatus {
    guard(|| {
        non_null!(text, out);
        let Ok(text) = CStr::from_ptr(text).to_str() else {
            return fail(ApspStatus::Parse, "input is not valid UTF-8");
        };
        match parse_dimacs_str(text) {
            Ok(g) => {
                *out = Box::into_raw(Box::new(ApspGraph(g)));
                ApspStatus::Ok
            }
            Err(e) => fail(ApspStatus::Parse, e.to_string()),
        }
    })
}

/// Adds edge `{u, v}`. If the edge exists the smaller weight is kept.
/// Weights must not exceed `UINT32_MAX`.
///
/// # Safety
/// `graph` must come from this library and not be freed.
#[no_mangle]
pub unsafe extern "C" fn apsp_graph_add_edge(graph: *mut ApspGraph, u: u32, v: u32, weight: u64) -> ApspStatus {
    guard(|| {
        non_null!(graph);
        let g = &mut (*graph).0;
        let (u, v) = match (vertex(g.n_original(), u), vertex(g.n_original(), v)) {
            (Ok(u), Ok(v)) => (u, v),
            (Err(s), _) | (_, Err(s)) => return s,
        };
        if u == v {
            return fail(ApspStatus::InvalidArgument, format!("self-loop at vertex {u}"));
        }
        if weight > MAX_INPUT_WEIGHT {
            return fail(ApspStatus::InvalidArgument, format!("weight {weight} exceeds {MAX_INPUT_WEIGHT}"));
        }
        match g.insert_min_edge(u, v, Weight::new(weight)) {
            Ok(()) => ApspStatus::Ok,
            Err(e) => fail(graph_status(&e), e.to_string()),
        }
    })
}

/// Number of vertices, or 0 for a null graph.
///
/// # Safety
/// `graph` must be null or come from this library and not be freed.
#[no_mangle]
pub unsafe extern "C" fn apsp_graph_order(graph: *const ApspGraph) -> usize {
    graph.as_ref().map_or(0, |g| g.0.order())
}

/// Number of undirected edges, or 0 for a null graph.
///
/// # Safety
/// `graph` must be null or come from this library and not be freed.
#[no_mangle]
pub unsafe extern "C" fn apsp_graph_edge_count(graph: *const ApspGraph) -> usize {
    graph.as_ref().map_or(0, |g| g.0.edge_count())
}

/// # Safety
/// `graph` must be null or come from this library and not be freed yet.
#[no_mangle]
pub unsafe extern "C" fn apsp_graph_free(graph: *mut ApspGraph) {
    if !graph.is_null() {
        drop(Box::from_raw(graph));
    }
}

fn solve_params(p: &ApspParams) -> Result<SolveParams, ApspStatus> {
    let max_degree = match p.max_degree {
        APSP_UNBOUNDED => None,
        d if d >= 1 => Some(d as usize),
        d => return Err(fail(ApspStatus::InvalidArgument, format!("max_degree {d} must be at least 1"))),
    };
    let max_edge_growth = (p.max_edge_growth != APSP_UNBOUNDED).then_some(p.max_edge_growth);
    let min_order = usize::try_from(p.min_order).unwrap_or(usize::MAX);
    SolveParams::new(max_degree, max_edge_growth, min_order).map_err(|e| fail(ApspStatus::InvalidArgument, e))
}

/// Solves all pairs on a connected graph. `params` may be null for
/// [`apsp_params_default`]. The graph is not modified and may be freed
/// afterwards.
///
/// # Safety
/// `graph` must come from this library, `params` must be null or valid for
/// reads and `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn apsp_solve(graph: *const ApspGraph, params: *const ApspParams, out: *mut *mut ApspSolution) -> ApspStatus {
    guard(|| {
        non_null!(graph, out);
        let params = match solve_params(params.as_ref().unwrap_or(&apsp_params_default())) {
            Ok(p) => p,
            Err(s) => return s,
        };
        let g = &(*graph).0;
        match solve(g, params) {
            Ok(solution) => {
                *out = Box::into_raw(Box::new(ApspSolution {
                    graph: g.clone(),
                    solution,
                }));
                ApspStatus::Ok
            }
            Err(SolveError::Graph(e)) => fail(graph_status(&e), e.to_string()),
            Err(e) => fail(ApspStatus::InvalidArgument, e.to_string()),
        }
    })
}

/// Number of vertices, or 0 for a null solution.
///
/// # Safety
/// `sol` must be null or come from this library and not be freed.
#[no_mangle]
pub unsafe extern "C" fn apsp_solution_order(sol: *const ApspSolution) -> usize {
    sol.as_ref().map_or(0, |s| s.solution.distances.order())
}

/// # Safety
/// `sol` must come from this library and `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn apsp_solution_stats(sol: *const ApspSolution, out: *mut ApspSolveStats) -> ApspStatus {
    guard(|| {
        non_null!(sol, out);
        let s = &(*sol).solution;
        *out = ApspSolveStats {
            removals: s.removals as u64,
            residual_order: s.residual_order as u64,
            max_removed_degree: s.max_removed_degree as u64,
        };
        ApspStatus::Ok
    })
}

/// Shortest distance from `i` to `j`, `APSP_INFINITY` if unreachable.
///
/// # Safety
/// `sol` must come from this library and `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn apsp_solution_distance(sol: *const ApspSolution, i: u32, j: u32, out: *mut u64) -> ApspStatus {
    guard(|| {
        non_null!(sol, out);
        let m = &(*sol).solution.distances;
        match (vertex(m.order(), i), vertex(m.order(), j)) {
            (Ok(i), Ok(j)) => {
                *out = m.get(i, j).finite().unwrap_or(APSP_INFINITY);
                ApspStatus::Ok
            }
            (Err(s), _) | (_, Err(s)) => s,
        }
    })
}

/// Precedence entry for `(i, j)`: the vertex before `j` on the stored
/// `i -> j` path, or 0 when `j` is entered directly from `i`.
///
/// # Safety
/// `sol` must come from this library and `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn apsp_solution_predecessor(sol: *const ApspSolution, i: u32, j: u32, out: *mut u32) -> ApspStatus {
    guard(|| {
        non_null!(sol, out);
        let p = &(*sol).solution.precedence;
        match (vertex(p.order(), i), vertex(p.order(), j)) {
            (Ok(i), Ok(j)) => {
                *out = p.get(i, j).map_or(0, VertexId::get);
                ApspStatus::Ok
            }
            (Err(s), _) | (_, Err(s)) => s,
        }
    })
}

/// Writes the vertices of a shortest `i -> j` path, both ends included, to
/// `buf`. `*len` receives the path length; if it exceeds `cap` nothing is
/// written and `APSP_STATUS_BUFFER_TOO_SMALL` is returned. For `i == j` the
/// path is `[i]`.
///
/// # Safety
/// `sol` must come from this library, `len` must be valid for writes and
/// `buf` must be valid for `cap` writes (it may be null when `cap` is 0).
#[no_mangle]
pub unsafe extern "C" fn apsp_solution_path(
    sol: *const ApspSolution,
    i: u32,
    j: u32,
    buf: *mut u32,
    cap: usize,
    len: *mut usize,
) -> ApspStatus {
    guard(|| {
        non_null!(sol, len);
        let s = &*sol;
        let n = s.solution.distances.order();
        let (i, j) = match (vertex(n, i), vertex(n, j)) {
            (Ok(i), Ok(j)) => (i, j),
            (Err(st), _) | (_, Err(st)) => return st,
        };
        let path = if i == j {
            vec![i]
        } else {
            match reconstruct_path(&s.solution.precedence, &s.graph, i, j) {
                Ok(p) => p,
                Err(e) => return fail(ApspStatus::InvalidArgument, e.to_string()),
            }
        };
        *len = path.len();
        if path.len() > cap {
            return fail(ApspStatus::BufferTooSmall, format!("path has {} vertices, buffer holds {cap}", path.len()));
        }
        if buf.is_null() {
            return fail(ApspStatus::NullPointer, "`buf` is null");
        }
        for (k, v) in path.iter().enumerate() {
            *buf.add(k) = v.get();
        }
        ApspStatus::Ok
    })
}

/// Copies the `n * n` distance matrix in row-major order, row `i - 1`
/// holding distances from vertex `i`.
///
/// # Safety
/// `sol` must come from this library and `buf` must be valid for `cap`
/// writes.
#[no_mangle]
pub unsafe extern "C" fn apsp_solution_copy_distances(sol: *const ApspSolution, buf: *mut u64, cap: usize) -> ApspStatus {
    guard(|| {
        non_null!(sol, buf);
        let m = &(*sol).solution.distances;
        let n = m.order();
        if cap < n * n {
            return fail(ApspStatus::BufferTooSmall, format!("need {} cells, buffer holds {cap}", n * n));
        }
        let out = std::slice::from_raw_parts_mut(buf, n * n);
        for (idx, cell) in out.iter_mut().enumerate() {
            let (i, j) = (VertexId::from_index(idx / n), VertexId::from_index(idx % n));
            *cell = m.get(i, j).finite().unwrap_or(APSP_INFINITY);
        }
        ApspStatus::Ok
    })
}

/// # Safety
/// `sol` must be null or come from this library and not be freed yet.
#[no_mangle]
pub unsafe extern "C" fn apsp_solution_free(sol: *mut ApspSolution) {
    if !sol.is_null() {
        drop(Box::from_raw(sol));
    }
}
