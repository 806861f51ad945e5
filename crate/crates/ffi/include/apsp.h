#ifndef APSP_H
#define APSP_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

// Distance reported for unreachable pairs.
#define APSP_INFINITY UINT64_MAX

// Parameter value meaning "no limit".
#define APSP_UNBOUNDED INT64_MAX

typedef enum ApspStatus {
  APSP_STATUS_OK = 0,
  APSP_STATUS_NULL_POINTER = 1,
  APSP_STATUS_INVALID_ARGUMENT = 2,
  APSP_STATUS_PARSE = 3,
  APSP_STATUS_DISCONNECTED = 4,
  APSP_STATUS_VERTEX_OUT_OF_RANGE = 5,
  APSP_STATUS_BUFFER_TOO_SMALL = 6,
  APSP_STATUS_PANIC = 7,
} ApspStatus;

// An undirected graph on vertices `1..=n`.
typedef struct ApspGraph ApspGraph;

// The distance and precedence matrices of a solved graph.
typedef struct ApspSolution ApspSolution;

// Contraction limits. Use [`apsp_params_default`] for the full-contraction
// setting.
typedef struct ApspParams {
  // Largest degree of a removed vertex, at least 1, or `APSP_UNBOUNDED`.
  int64_t max_degree;
  // Largest net edge growth per removal, or `APSP_UNBOUNDED`.
  int64_t max_edge_growth;
  // Contraction stops at this many vertices; at least 1.
  uint64_t min_order;
} ApspParams;

typedef struct ApspSolveStats {
  uint64_t removals;
  uint64_t residual_order;
  uint64_t max_removed_degree;
} ApspSolveStats;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Static description of a status code. Never null.
const char *apsp_status_message(enum ApspStatus status);

// Description of the last failure on this thread, or null if there was
// none. Valid until the next failing call on the same thread.
const char *apsp_last_error(void);

// Full contraction: no degree or growth limit, down to one vertex.
struct ApspParams apsp_params_default(void);

// Creates an edgeless graph on `n >= 1` vertices.
//
// # Safety
// `out` must be valid for writes.
enum ApspStatus apsp_graph_new(size_t n, struct ApspGraph **out);

// Parses a NUL-terminated DIMACS shortest-path text.
//
// # Safety
// `text` must point to a NUL-terminated string and `out` must be valid for
// writes.
enum ApspStatus apsp_graph_parse_dimacs(const char *text, struct ApspGraph **out);

// Adds edge `{u, v}`. If the edge exists the smaller weight is kept.
// Weights must not exceed `UINT32_MAX`.
//
// # Safety
// `graph` must come from this library and not be freed.
enum ApspStatus apsp_graph_add_edge(struct ApspGraph *graph,
                                    uint32_t u,
                                    uint32_t v,
                                    uint64_t weight);

// Number of vertices, or 0 for a null graph.
//
// # Safety
// `graph` must be null or come from this library and not be freed.
size_t apsp_graph_order(const struct ApspGraph *graph);

// Number of undirected edges, or 0 for a null graph.
//
// # Safety
// `graph` must be null or come from this library and not be freed.
size_t apsp_graph_edge_count(const struct ApspGraph *graph);

// # Safety
// `graph` must be null or come from this library and not be freed yet.
void apsp_graph_free(struct ApspGraph *graph);

// Solves all pairs on a connected graph. `params` may be null for
// [`apsp_params_default`]. The graph is not modified and may be freed
// afterwards.
//
// # Safety
// `graph` must come from this library, `params` must be null or valid for
// reads and `out` must be valid for writes.
enum ApspStatus apsp_solve(const struct ApspGraph *graph,
                           const struct ApspParams *params,
                           struct ApspSolution **out);

// Number of vertices, or 0 for a null solution.
//
// # Safety
// `sol` must be null or come from this library and not be freed.
size_t apsp_solution_order(const struct ApspSolution *sol);

// # Safety
// `sol` must come from this library and `out` must be valid for writes.
enum ApspStatus apsp_solution_stats(const struct ApspSolution *sol, struct ApspSolveStats *out);

// Shortest distance from `i` to `j`, `APSP_INFINITY` if unreachable.
//
// # Safety
// `sol` must come from this library and `out` must be valid for writes.
enum ApspStatus apsp_solution_distance(const struct ApspSolution *sol,
                                       uint32_t i,
                                       uint32_t j,
                                       uint64_t *out);

// Precedence entry for `(i, j)`: the vertex before `j` on the stored
// `i -> j` path, or 0 when `j` is entered directly from `i`.
//
// # Safety
// `sol` must come from this library and `out` must be valid for writes.
enum ApspStatus apsp_solution_predecessor(const struct ApspSolution *sol,
                                          uint32_t i,
                                          uint32_t j,
                                          uint32_t *out);

// Writes the vertices of a shortest `i -> j` path, both ends included, to
// `buf`. `*len` receives the path length; if it exceeds `cap` nothing is
// written and `APSP_STATUS_BUFFER_TOO_SMALL` is returned. For `i == j` the
// path is `[i]`.
//
// # Safety
// `sol` must come from this library, `len` must be valid for writes and
// `buf` must be valid for `cap` writes (it may be null when `cap` is 0).
enum ApspStatus apsp_solution_path(const struct ApspSolution *sol,
                                   uint32_t i,
                                   uint32_t j,
                                   uint32_t *buf,
                                   size_t cap,
                                   size_t *len);

// Copies the `n * n` distance matrix in row-major order, row `i - 1`
// holding distances from vertex `i`.
//
// # Safety
// `sol` must come from this library and `buf` must be valid for `cap`
// writes.
enum ApspStatus apsp_solution_copy_distances(const struct ApspSolution *sol,
                                             uint64_t *buf,
                                             size_t cap);

// # Safety
// `sol` must be null or come from this library and not be freed yet.
void apsp_solution_free(struct ApspSolution *sol);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* APSP_H */
