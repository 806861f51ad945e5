//! Compiles a small C program against `include/apsp.h` and the static
//! library, then runs it. Skipped when no C compiler is on the path.

use std::env;
use std::path::{Path, PathBuf};
use std::process::Command;

const PROGRAM: &str = r#"
#include <stdio.h>
#include <string.h>
#include "apsp.h"

#define CHECK(x) do { if ((x) != APSP_STATUS_OK) { fprintf(stderr, "%s: %s\n", #x, apsp_last_error()); return 1; } } while (0)

int main(void) {
    const char *text = "p sp 4 8\na 1 2 1\na 2 3 2\na 3 4 1\na 4 1 5\n";
    ApspGraph *g = NULL;
    ApspSolution *sol = NULL;
    CHECK(apsp_graph_parse_dimacs(text, &g));
    ApspParams params = apsp_params_default();
    CHECK(apsp_solve(g, &params, &sol));
    apsp_graph_free(g);

    uint64_t d = 0;
    CHECK(apsp_solution_distance(sol, 1, 4, &d));
    uint32_t path[8];
    size_t len = 0;
    CHECK(apsp_solution_path(sol, 1, 4, path, 8, &len));
    printf("%llu", (unsigned long long)d);
    for (size_t k = 0; k < len; k++) printf(" %u", path[k]);
    printf("\n");

    if (apsp_solution_distance(sol, 9, 1, &d) != APSP_STATUS_VERTEX_OUT_OF_RANGE) return 2;
    if (strlen(apsp_status_message(APSP_STATUS_PANIC)) == 0) return 3;
    apsp_solution_free(sol);
    return 0;
}
"#;

fn compiler() -> Option<String> {
    let cc = env::var("CC").unwrap_or_else(|_| "cc".to_string());
    Command::new(&cc).arg("--version").output().ok().filter(|o| o.status.success()).map(|_| cc)
}

/// `target/<profile>`, two levels above the test executable.
fn profile_dir() -> PathBuf {
    let exe = env::current_exe().unwrap();
    exe.parent().and_then(Path::parent).unwrap().to_path_buf()
}

#[test]
fn c_program_links_and_runs() {
    let Some(cc) = compiler() else {
        eprintln!("no C compiler found, skipping");
        return;
    };
    let include = Path::new(env!("CARGO_MANIFEST_DIR")).join("include");
    assert!(include.join("apsp.h").exists());
    let lib = profile_dir().join("libapsp_ffi.a");
    assert!(lib.exists(), "{} not built", lib.display());

    let dir = tempfile::tempdir().unwrap();
    let src = dir.path().join("main.c");
    let exe = dir.path().join("main");
    std::fs::write(&src, PROGRAM).unwrap();
    let out = Command::new(&cc)
        .args(["-std=c99", "-Wall", "-Werror", "-I"])
        .arg(&include)
        .arg(&src)
        .arg(&lib)
        .args(["-lpthread", "-ldl", "-lm", "-o"])
        .arg(&exe)
        .output()
        .unwrap();
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));

    let run = Command::new(&exe).output().unwrap();
    assert!(run.status.success(), "{}", String::from_utf8_lossy(&run.stderr));
    assert_eq!(String::from_utf8_lossy(&run.stdout), "4 1 2 3 4\n");
}
