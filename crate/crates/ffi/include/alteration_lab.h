#ifndef ALTERATION_LAB_H
#define ALTERATION_LAB_H

/* Generated by cbindgen from src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum AlStatus {
  AL_STATUS_OK = 0,
  AL_STATUS_NULL_POINTER = 1,
  AL_STATUS_INVALID_ARGUMENT = 2,
  AL_STATUS_PARSE = 3,
  AL_STATUS_EDGELESS = 4,
  AL_STATUS_OVERFLOW = 5,
  AL_STATUS_BUDGET_EXHAUSTED = 6,
  AL_STATUS_INTERNAL = 7,
} AlStatus;

typedef enum AlMethod {
  AL_METHOD_REFINED = 0,
  AL_METHOD_GREEDY = 1,
  AL_METHOD_KRIVELEVICH = 2,
} AlMethod;

typedef enum AlVerdict {
  AL_VERDICT_CERTIFIED = 0,
  AL_VERDICT_NOT_CERTIFIED = 1,
  AL_VERDICT_UNDETERMINED = 2,
} AlVerdict;

/**
 * Opaque graph handle.
 */
typedef struct AlGraph AlGraph;

typedef struct AlCopyStats {
  size_t copies;
  size_t covered_edges;
  /**
   * Largest number of copies through one edge.
   */
  size_t delta;
  /**
   * Largest number of copies through one pair of edges.
   */
  size_t delta2;
} AlCopyStats;

typedef struct AlIndependence {
  size_t lower;
  size_t upper;
  bool exact;
} AlIndependence;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message for the last failure on this thread, or null. Owned by the library.
 */
const char *al_last_error_message(void);

/**
 * Builds a graph on `n` vertices from `edge_count` pairs stored flat in `edges`.
 *
 * # Safety
 * `edges` must point to `2 * edge_count` readable values (or be null when
 * `edge_count` is 0); `out` must be writable.
 */
enum AlStatus al_graph_new(size_t n,
                           const uint32_t *edges,
                           size_t edge_count,
                           struct AlGraph **out);

/**
 * Parses the text format: a `n m` header line, then one `u v` line per edge.
 *
 * # Safety
 * `text` must be a NUL-terminated string; `out` must be writable.
 */
enum AlStatus al_graph_from_text(const char *text, struct AlGraph **out);

/**
 * A named graph pattern such as `K4`, `C5`, `P3` or `K2,3`.
 *
 * # Safety
 * `name` must be a NUL-terminated string; `out` must be writable.
 */
enum AlStatus al_graph_named(const char *name, struct AlGraph **out);

/**
 * Binomial random graph from substream `index` of `seed`.
 *
 * # Safety
 * `out` must be writable.
 */
enum AlStatus al_sample_gnp(size_t n,
                            double p,
                            uint64_t seed,
                            uint64_t index,
                            struct AlGraph **out);

/**
 * Releases a graph. Null is ignored.
 *
 * # Safety
 * `g` must come from this library and not be used afterwards.
 */
void al_graph_free(struct AlGraph *g);

/**
 * Vertex count, or 0 for null.
 *
 * # Safety
 * `g` must be null or a live handle.
 */
size_t al_graph_vertex_count(const struct AlGraph *g);

/**
 * Edge count, or 0 for null.
 *
 * # Safety
 * `g` must be null or a live handle.
 */
size_t al_graph_edge_count(const struct AlGraph *g);

/**
 * Copies up to `capacity` edges, flattened, into `out_pairs` in lexicographic order.
 *
 * # Safety
 * `g` must be a live handle; `out_pairs` must have room for `2 * capacity` values.
 */
enum AlStatus al_graph_edges(const struct AlGraph *g, uint32_t *out_pairs, size_t capacity);

/**
 * The graph in text format; release with [`al_string_free`].
 *
 * # Safety
 * `g` must be a live handle; `out` must be writable.
 */
enum AlStatus al_graph_to_text(const struct AlGraph *g, char **out);

/**
 * Releases a string returned by this library. Null is ignored.
 *
 * # Safety
 * `s` must come from this library and not be used afterwards.
 */
void al_string_free(char *s);

/**
 * Exact `m_2` as a reduced fraction, and whether the graph is strictly 2-balanced.
 *
 * # Safety
 * `g` must be a live handle; the out-pointers must be writable.
 */
enum AlStatus al_m2(const struct AlGraph *g,
                    int64_t *out_numer,
                    int64_t *out_denom,
                    bool *out_strictly_balanced);

/**
 * Copy statistics of `pattern` in `host`.
 *
 * # Safety
 * Both handles must be live; `out` must be writable.
 */
enum AlStatus al_copy_stats(const struct AlGraph *host,
                            const struct AlGraph *pattern,
                            struct AlCopyStats *out);

/**
 * Pattern-free subgraph of `g` produced by `method`.
 *
 * # Safety
 * Both handles must be live; `out` must be writable.
 */
enum AlStatus al_alter(const struct AlGraph *g,
                       const struct AlGraph *pattern,
                       enum AlMethod method,
                       struct AlGraph **out);

/**
 * Independence number with at most `budget` search nodes.
 *
 * # Safety
 * `g` must be a live handle; `out` must be writable.
 */
enum AlStatus al_independence_number(const struct AlGraph *g,
                                     uint64_t budget,
                                     struct AlIndependence *out);

/**
 * Whether `g` has no copy of `pattern` and independence number below `k`.
 *
 * # Safety
 * Both handles must be live; `out` must be writable.
 */
enum AlStatus al_ramsey_certificate(const struct AlGraph *g,
                                    const struct AlGraph *pattern,
                                    size_t k,
                                    uint64_t budget,
                                    enum AlVerdict *out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* ALTERATION_LAB_H */
