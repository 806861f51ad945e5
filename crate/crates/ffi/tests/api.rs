use std::ffi::{CStr, CString};
use std::ptr;

use apsp_ffi::*;

const SQUARE: &str = "c square with a long diagonal
p sp 4 10
a 1 2 1
a 2 1 1
a 2 3 2
a 3 2 2
a 3 4 1
a 4 3 1
a 4 1 5
a 1 4 5
a 1 3 9
a 3 1 9
";

fn last_error() -> String {
    let p = apsp_last_error();
    assert!(!p.is_null());
    unsafe { CStr::from_ptr(p) }.to_str().unwrap().to_owned()
}

fn parse(text: &str) -> Result<*mut ApspGraph, ApspStatus> {
    let text = CString::new(text).unwrap();
    let mut g = ptr::null_mut();
    match unsafe { apsp_graph_parse_dimacs(text.as_ptr(), &mut g) } {
        ApspStatus::Ok => Ok(g),
        s => Err(s),
    }
}

fn solve(g: *const ApspGraph, params: Option<&ApspParams>) -> Result<*mut ApspSolution, ApspStatus> {
    let mut sol = ptr::null_mut();
    let p = params.map_or(ptr::null(), |p| p as *const _);
    match unsafe { apsp_solve(g, p, &mut sol) } {
        ApspStatus::Ok => Ok(sol),
        s => Err(s),
    }
}

fn distance(sol: *const ApspSolution, i: u32, j: u32) -> u64 {
    let mut d = 0;
    assert_eq!(unsafe { apsp_solution_distance(sol, i, j, &mut d) }, ApspStatus::Ok);
    d
}

#[test]
fn parse_solve_and_query() {
    let g = parse(SQUARE).unwrap();
    unsafe {
        assert_eq!(apsp_graph_order(g), 4);
        assert_eq!(apsp_graph_edge_count(g), 5);
    }
    let sol = solve(g, None).unwrap();
    unsafe { apsp_graph_free(g) };

    assert_eq!(distance(sol, 1, 3), 3);
    assert_eq!(distance(sol, 2, 4), 3);
    assert_eq!(distance(sol, 4, 4), 0);

    let mut buf = [0u32; 8];
    let mut len = 0;
    assert_eq!(unsafe { apsp_solution_path(sol, 1, 3, buf.as_mut_ptr(), buf.len(), &mut len) }, ApspStatus::Ok);
    assert_eq!(&buf[..len], &[1, 2, 3]);
    assert_eq!(unsafe { apsp_solution_path(sol, 2, 2, buf.as_mut_ptr(), buf.len(), &mut len) }, ApspStatus::Ok);
    assert_eq!(&buf[..len], &[2]);

    let mut pred = 99;
    assert_eq!(unsafe { apsp_solution_predecessor(sol, 1, 3, &mut pred) }, ApspStatus::Ok);
    assert_eq!(pred, 2);
    assert_eq!(unsafe { apsp_solution_predecessor(sol, 1, 2, &mut pred) }, ApspStatus::Ok);
    assert_eq!(pred, 0);

    let mut stats = ApspSolveStats::default();
    assert_eq!(unsafe { apsp_solution_stats(sol, &mut stats) }, ApspStatus::Ok);
    assert_eq!((stats.removals, stats.residual_order), (3, 1));

    let mut all = vec![0u64; 16];
    assert_eq!(unsafe { apsp_solution_copy_distances(sol, all.as_mut_ptr(), all.len()) }, ApspStatus::Ok);
    assert_eq!(all, vec![0, 1, 3, 4, 1, 0, 2, 3, 3, 2, 0, 1, 4, 3, 1, 0]);
    unsafe { apsp_solution_free(sol) };
}

#[test]
fn built_graph_matches_parsed_graph() {
    let mut g = ptr::null_mut();
    assert_eq!(unsafe { apsp_graph_new(4, &mut g) }, ApspStatus::Ok);
    for (u, v, w) in [(1, 2, 1), (2, 3, 2), (3, 4, 1), (4, 1, 5), (1, 3, 9), (1, 3, 20)] {
        assert_eq!(unsafe { apsp_graph_add_edge(g, u, v, w) }, ApspStatus::Ok);
    }
    let params = ApspParams {
        max_degree: 2,
        max_edge_growth: 0,
        min_order: 2,
    };
    let a = solve(g, Some(&params)).unwrap();
    let parsed = parse(SQUARE).unwrap();
    let b = solve(parsed, None).unwrap();
    for i in 1..=4 {
        for j in 1..=4 {
            assert_eq!(distance(a, i, j), distance(b, i, j));
        }
    }
    unsafe {
        apsp_solution_free(a);
        apsp_solution_free(b);
        apsp_graph_free(g);
        apsp_graph_free(parsed);
    }
}

#[test]
fn buffer_too_small_reports_length() {
    let g = parse(SQUARE).unwrap();
    let sol = solve(g, None).unwrap();
    let mut len = 0;
    assert_eq!(
        unsafe { apsp_solution_path(sol, 1, 3, ptr::null_mut(), 0, &mut len) },
        ApspStatus::BufferTooSmall
    );
    assert_eq!(len, 3);
    let mut small = [0u64; 15];
    assert_eq!(
        unsafe { apsp_solution_copy_distances(sol, small.as_mut_ptr(), small.len()) },
        ApspStatus::BufferTooSmall
    );
    assert!(last_error().contains("16"));
    unsafe {
        apsp_solution_free(sol);
        apsp_graph_free(g);
    }
}

#[test]
fn errors_map_to_status_codes() {
    assert_eq!(parse("p sp 3 2\na 1 4 1\n").unwrap_err(), ApspStatus::Parse);
    assert!(last_error().contains("line 2"));
    assert_eq!(parse("a 1 2 1\n").unwrap_err(), ApspStatus::Parse);

    let g = parse("p sp 4 4\na 1 2 1\na 3 4 1\n").unwrap();
    assert_eq!(solve(g, None).unwrap_err(), ApspStatus::Disconnected);
    unsafe {
        assert_eq!(apsp_graph_add_edge(g, 0, 1, 1), ApspStatus::VertexOutOfRange);
        assert_eq!(apsp_graph_add_edge(g, 1, 5, 1), ApspStatus::VertexOutOfRange);
        assert_eq!(apsp_graph_add_edge(g, 2, 2, 1), ApspStatus::InvalidArgument);
        assert_eq!(apsp_graph_add_edge(g, 2, 3, 1 << 40), ApspStatus::InvalidArgument);
        assert_eq!(apsp_graph_add_edge(g, 2, 3, 7), ApspStatus::Ok);
    }
    let bad = ApspParams {
        max_degree: 0,
        ..apsp_params_default()
    };
    assert_eq!(solve(g, Some(&bad)).unwrap_err(), ApspStatus::InvalidArgument);
    let bad = ApspParams {
        min_order: 0,
        ..apsp_params_default()
    };
    assert_eq!(solve(g, Some(&bad)).unwrap_err(), ApspStatus::InvalidArgument);

    let sol = solve(g, None).unwrap();
    let mut d = 0;
    assert_eq!(unsafe { apsp_solution_distance(sol, 1, 5, &mut d) }, ApspStatus::VertexOutOfRange);
    assert_eq!(distance(sol, 1, 4), 9);
    unsafe {
        apsp_solution_free(sol);
        apsp_graph_free(g);
    }
}

#[test]
fn null_pointers_are_rejected() {
    let mut g = ptr::null_mut();
    let mut sol = ptr::null_mut();
    let mut d = 0;
    unsafe {
        assert_eq!(apsp_graph_new(3, ptr::null_mut()), ApspStatus::NullPointer);
        assert_eq!(apsp_graph_new(0, &mut g), ApspStatus::InvalidArgument);
        assert_eq!(apsp_graph_parse_dimacs(ptr::null(), &mut g), ApspStatus::NullPointer);
        assert_eq!(apsp_graph_add_edge(ptr::null_mut(), 1, 2, 1), ApspStatus::NullPointer);
        assert_eq!(apsp_solve(ptr::null(), ptr::null(), &mut sol), ApspStatus::NullPointer);
        assert_eq!(apsp_solution_distance(ptr::null(), 1, 2, &mut d), ApspStatus::NullPointer);
        assert_eq!(apsp_graph_order(ptr::null()), 0);
        assert_eq!(apsp_solution_order(ptr::null()), 0);
        apsp_graph_free(ptr::null_mut());
        apsp_solution_free(ptr::null_mut());
    }
    assert!(last_error().contains("null"));
}

#[test]
fn status_messages_are_static_strings() {
    for s in [
        ApspStatus::Ok,
        ApspStatus::NullPointer,
        ApspStatus::InvalidArgument,
        ApspStatus::Parse,
        ApspStatus::Disconnected,
        ApspStatus::VertexOutOfRange,
        ApspStatus::BufferTooSmall,
        ApspStatus::Panic,
    ] {
        let msg = unsafe { CStr::from_ptr(apsp_status_message(s)) };
        assert!(!msg.to_bytes().is_empty());
    }
    assert_eq!(APSP_INFINITY, u64::MAX);
}
