#ifndef TWOSILT_H
#define TWOSILT_H

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum TsStatus {
  TS_STATUS_OK = 0,
  TS_STATUS_NULL_POINTER = 1,
  TS_STATUS_INVALID_UTF8 = 2,
  TS_STATUS_PARSE_ERROR = 3,
  TS_STATUS_UNKNOWN_EXAMPLE = 4,
  TS_STATUS_MUTATION_FAILED = 5,
  TS_STATUS_OUT_OF_RANGE = 6,
  TS_STATUS_BUFFER_TOO_SMALL = 7,
  TS_STATUS_PANIC = 8,
} TsStatus;

typedef enum TsStart {
  TS_START_ALGEBRA = 0,
  TS_START_SHIFTED = 1,
} TsStart;

/**
 * A bound quiver algebra.
 */
typedef struct TsAlgebra TsAlgebra;

/**
 * An explored mutation graph together with its algebra.
 */
typedef struct TsGraph TsGraph;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message for the most recent failure on this thread; empty after a
 * success. Valid until the next call on the same thread.
 */
const char *ts_last_error(void);

/**
 * Loads a bundled example by name.
 *
 * # Safety
 * `name` must be a NUL-terminated string and `out` a valid pointer.
 */
enum TsStatus ts_algebra_from_example(const char *name, struct TsAlgebra **out);

/**
 * Parses and builds an algebra from a JSON spec document.
 *
 * # Safety
 * `text` must be a NUL-terminated string and `out` a valid pointer.
 */
enum TsStatus ts_algebra_from_spec(const char *text, struct TsAlgebra **out);

/**
 * # Safety
 * `alg` must come from this library and not be freed twice; null is ignored.
 */
void ts_algebra_free(struct TsAlgebra *alg);

/**
 * Number of vertices, or 0 for a null handle.
 *
 * # Safety
 * `alg` must be null or a live handle.
 */
size_t ts_algebra_num_vertices(const struct TsAlgebra *alg);

/**
 * Dimension over the ground field, or 0 for a null handle.
 *
 * # Safety
 * `alg` must be null or a live handle.
 */
size_t ts_algebra_dim(const struct TsAlgebra *alg);

/**
 * Explores the mutation graph. `max_depth = 0` means unlimited.
 *
 * # Safety
 * `alg` must be a live handle and `out` a valid pointer.
 */
enum TsStatus ts_explore(const struct TsAlgebra *alg,
                         enum TsStart start,
                         size_t budget,
                         size_t max_depth,
                         struct TsGraph **out);

/**
 * # Safety
 * `g` must come from this library and not be freed twice; null is ignored.
 */
void ts_graph_free(struct TsGraph *g);

/**
 * # Safety
 * `g` must be null or a live handle.
 */
size_t ts_graph_node_count(const struct TsGraph *g);

/**
 * # Safety
 * `g` must be null or a live handle.
 */
size_t ts_graph_edge_count(const struct TsGraph *g);

/**
 * 1 if the exploration finished, 0 otherwise (including null).
 *
 * # Safety
 * `g` must be null or a live handle.
 */
int32_t ts_graph_is_finite(const struct TsGraph *g);

/**
 * Copies the G-matrix of the `node`-th object (in canonical key order)
 * into `buf` column by column; `len` must be at least `n * n`.
 *
 * # Safety
 * `g` must be a live handle and `buf` valid for `len` writes.
 */
enum TsStatus ts_graph_gmatrix(const struct TsGraph *g, size_t node, int64_t *buf, size_t len);

/**
 * JSON dump of the graph, or null on error.
 *
 * # Safety
 * `g` must be a live handle.
 */
char *ts_graph_json(const struct TsGraph *g);

/**
 * DOT text of the Hasse quiver, or null on error.
 *
 * # Safety
 * `g` must be a live handle.
 */
char *ts_graph_hasse_dot(const struct TsGraph *g);

/**
 * Full check report as JSON, or null on error.
 *
 * # Safety
 * `g` must be a live handle.
 */
char *ts_graph_report_json(const struct TsGraph *g, uint64_t seed);

/**
 * # Safety
 * `s` must come from this library and not be freed twice; null is ignored.
 */
void ts_string_free(char *s);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* TWOSILT_H */
