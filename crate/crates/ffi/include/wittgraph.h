#ifndef WITTGRAPH_H
#define WITTGRAPH_H

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Result code of every fallible call.
 */
typedef enum WittStatus {
  WITT_STATUS_OK = 0,
  WITT_STATUS_NULL_POINTER = 1,
  WITT_STATUS_INVALID_ARGUMENT = 2,
  WITT_STATUS_INVALID_GRAPH = 3,
  WITT_STATUS_PARSE_ERROR = 4,
  WITT_STATUS_CAP_EXCEEDED = 5,
  WITT_STATUS_ARITHMETIC = 6,
  WITT_STATUS_BUFFER_TOO_SMALL = 7,
  WITT_STATUS_PANIC = 8,
} WittStatus;

/**
 * Opaque graph handle.
 */
typedef struct WittGraph WittGraph;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Builds a graph from `edge_count` pairs `(origin, end)` stored flat in
 * `edges` (length `2 * edge_count`).
 *
 * # Safety
 * `edges` must point to `2 * edge_count` readable values; `out` must be writable.
 */
enum WittStatus witt_graph_new(size_t vertices,
                               const size_t *edges,
                               size_t edge_count,
                               struct WittGraph **out);

/**
 * Parses `{"vertices": n, "edges": [[u, v], ...]}`.
 *
 * # Safety
 * `json` must be a NUL-terminated string; `out` must be writable.
 */
enum WittStatus witt_graph_from_json(const char *json, struct WittGraph **out);

/**
 * Releases a graph. Null is ignored.
 *
 * # Safety
 * `g` must come from a `witt_graph_*` constructor and not be freed twice.
 */
void witt_graph_free(struct WittGraph *g);

/**
 * # Safety
 * `g` must be a live handle; `out` must be writable.
 */
enum WittStatus witt_graph_edge_count(const struct WittGraph *g, size_t *out);

/**
 * # Safety
 * `g` must be a live handle; `out` must be writable.
 */
enum WittStatus witt_graph_is_connected(const struct WittGraph *g, bool *out);

/**
 * Copies the row-major edge matrix into `buf`. `dim_out` always receives the
 * dimension; if `buf_len < dim * dim` nothing is copied and
 * `BufferTooSmall` is returned.
 *
 * # Safety
 * `buf` must hold `buf_len` writable bytes (or be null with `buf_len == 0`).
 */
enum WittStatus witt_edge_matrix(const struct WittGraph *g,
                                 uint8_t *buf,
                                 size_t buf_len,
                                 size_t *dim_out);

/**
 * `Tr T^n` as a decimal string.
 *
 * # Safety
 * `g` must be a live handle; `out` must be writable.
 */
enum WittStatus witt_trace(const struct WittGraph *g, uint32_t n, char **out);

/**
 * `Ω(n, T)` as a decimal string.
 *
 * # Safety
 * `g` must be a live handle; `out` must be writable.
 */
enum WittStatus witt_omega(const struct WittGraph *g, uint32_t n, char **out);

/**
 * The full report up to `order` as JSON.
 *
 * # Safety
 * `g` must be a live handle; `out` must be writable.
 */
enum WittStatus witt_report_json(const struct WittGraph *g, uint32_t order, char **out);

/**
 * Brute-force counts for length `n`: all cycles and non-periodic rotation
 * classes. `n` is capped at 10.
 *
 * # Safety
 * `g` must be a live handle; both out-pointers must be writable.
 */
enum WittStatus witt_oracle_counts(const struct WittGraph *g,
                                   uint32_t n,
                                   uint64_t *cycles_out,
                                   uint64_t *classes_out);

/**
 * Necklace polynomial `M(n; r)` as a decimal string.
 *
 * # Safety
 * `out` must be writable.
 */
enum WittStatus witt_classical(uint32_t n, int64_t r, char **out);

/**
 * Releases a string returned by this library. Null is ignored.
 *
 * # Safety
 * `s` must come from this library and not be freed twice.
 */
void witt_string_free(char *s);

/**
 * Description of the last failure on this thread, or null. Valid until the
 * next call into the library from the same thread.
 */
const char *witt_last_error_message(void);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* WITTGRAPH_H */
