#ifndef KPLEXER_H
#define KPLEXER_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum KplexStrategy {
  KPLEX_STRATEGY_VERTEX = 0,
  KPLEX_STRATEGY_EDGE = 1,
  KPLEX_STRATEGY_HYBRID = 2,
} KplexStrategy;

/**
 * Error codes returned by fallible calls.
 */
typedef enum KplexError {
  KPLEX_ERROR_OK = 0,
  KPLEX_ERROR_NULL_POINTER = 1,
  KPLEX_ERROR_INVALID_ARGUMENT = 2,
  KPLEX_ERROR_IO = 3,
  KPLEX_ERROR_PARSE = 4,
  KPLEX_ERROR_INTERNAL = 5,
} KplexError;

typedef enum KplexFormat {
  /**
   * Pick from the file extension.
   */
  KPLEX_FORMAT_AUTO = 0,
  KPLEX_FORMAT_EDGE_LIST = 1,
  KPLEX_FORMAT_DIMACS = 2,
} KplexFormat;

/**
 * Solve outcome, mirrors the library status.
 */
typedef enum KplexStatus {
  KPLEX_STATUS_OPTIMAL = 0,
  /**
   * No k-plex of size 2k - 1 exists.
   */
  KPLEX_STATUS_TRIVIAL = 1,
  KPLEX_STATUS_TIMEOUT = 2,
} KplexStatus;

/**
 * Opaque graph handle.
 */
typedef struct KplexGraph KplexGraph;

/**
 * Opaque solve result handle.
 */
typedef struct KplexResult KplexResult;

/**
 * Solver options. Start from [`kplex_config_default`].
 */
typedef struct KplexConfig {
  enum KplexStrategy strategy;
  bool reductions_enabled;
  bool dbdd_bound_enabled;
  /**
   * Seconds, must be positive.
   */
  double time_limit_secs;
  bool compute_cd;
} KplexConfig;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message for the last failed call on this thread, or null. The pointer
 * stays valid until the next call into this library on the same thread.
 */
const char *kplex_last_error_message(void);

struct KplexConfig kplex_config_default(void);

/**
 * Reads a graph file. `path` is a NUL-terminated UTF-8 string.
 *
 * # Safety
 * `path` must be a valid C string and `out` a valid pointer.
 */
enum KplexError kplex_graph_from_file(const char *path,
                                      enum KplexFormat format,
                                      struct KplexGraph **out);

/**
 * Builds a graph on vertices `0..n` from `edge_count` pairs stored flat
 * in `edges` (`2 * edge_count` entries). Self-loops and duplicate edges
 * are ignored.
 *
 * # Safety
 * `edges` must point to `2 * edge_count` readable values (or may be null
 * when `edge_count` is 0) and `out` must be a valid pointer.
 */
enum KplexError kplex_graph_from_edges(size_t n,
                                       const uint32_t *edges,
                                       size_t edge_count,
                                       struct KplexGraph **out);

/**
 * # Safety
 * `g` must be null or a handle from this library that is not used again.
 */
void kplex_graph_free(struct KplexGraph *g);

/**
 * # Safety
 * `g` must be null or a live graph handle.
 */
size_t kplex_graph_vertex_count(const struct KplexGraph *g);

/**
 * # Safety
 * `g` must be null or a live graph handle.
 */
size_t kplex_graph_edge_count(const struct KplexGraph *g);

/**
 * Finds a maximum k-plex. `config` may be null for the defaults.
 *
 * # Safety
 * `g` must be a live graph handle, `config` null or valid, `out` valid.
 */
enum KplexError kplex_solve(const struct KplexGraph *g,
                            size_t k,
                            const struct KplexConfig *config,
                            struct KplexResult **out);

/**
 * # Safety
 * `r` must be null or a result handle that is not used again.
 */
void kplex_result_free(struct KplexResult *r);

/**
 * # Safety
 * `r` must be a live result handle.
 */
enum KplexStatus kplex_result_status(const struct KplexResult *r);

/**
 * Optimum size, or -1 unless the status is optimal.
 *
 * # Safety
 * `r` must be null or a live result handle.
 */
int64_t kplex_result_omega(const struct KplexResult *r);

/**
 * # Safety
 * `r` must be null or a live result handle.
 */
int64_t kplex_result_degeneracy(const struct KplexResult *r);

/**
 * Community degeneracy, or -1 when it was not computed.
 *
 * # Safety
 * `r` must be null or a live result handle.
 */
int64_t kplex_result_community_degeneracy(const struct KplexResult *r);

/**
 * Writes `g_k` and `cg_k` where available; returns how many were written
 * (0, 1 for `g_k` only, or 2).
 *
 * # Safety
 * `r` must be a live result handle; `g_k` and `cg_k` null or valid.
 */
uint32_t kplex_result_gaps(const struct KplexResult *r, int64_t *g_k, int64_t *cg_k);

/**
 * # Safety
 * `r` must be null or a live result handle.
 */
uint64_t kplex_result_elapsed_ms(const struct KplexResult *r);

/**
 * # Safety
 * `r` must be null or a live result handle.
 */
uint64_t kplex_result_search_nodes(const struct KplexResult *r);

/**
 * Average branching factor, NaN when nothing branched.
 *
 * # Safety
 * `r` must be null or a live result handle.
 */
double kplex_result_gamma(const struct KplexResult *r);

/**
 * Number of vertices in the best k-plex found.
 *
 * # Safety
 * `r` must be null or a live result handle.
 */
size_t kplex_result_witness_len(const struct KplexResult *r);

/**
 * Copies up to `cap` witness labels into `buf` and returns the full
 * witness length.
 *
 * # Safety
 * `r` must be a live result handle and `buf` valid for `cap` writes.
 */
size_t kplex_result_witness(const struct KplexResult *r, uint64_t *buf, size_t cap);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* KPLEXER_H */
