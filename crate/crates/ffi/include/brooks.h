#ifndef BROOKS_H
#define BROOKS_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum BrooksStatus {
  BROOKS_STATUS_OK = 0,
  BROOKS_STATUS_NULL_POINTER = 1,
  BROOKS_STATUS_INVALID_INPUT = 2,
  /**
   * The graph refutes the coloring hypothesis: an odd cycle, a clique
   * on d + 1 vertices, or a vertex of degree above d.
   */
  BROOKS_STATUS_HYPOTHESIS = 3,
  BROOKS_STATUS_BUDGET = 4,
  BROOKS_STATUS_INTERNAL = 5,
} BrooksStatus;

/**
 * Opaque vertex coloring.
 */
typedef struct BrooksColoring BrooksColoring;

/**
 * Opaque finite graph.
 */
typedef struct BrooksGraph BrooksGraph;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message for the last failed call on this thread, or NULL after a
 * successful one. The pointer stays valid until the next call.
 */
const char *brooks_last_error(void);

/**
 * Builds a graph on `n` vertices from `m` edges stored as `2 * m`
 * consecutive vertex ids.
 *
 * # Safety
 * `edges` must point to `2 * m` readable values (it may be NULL when `m` is
 * 0) and the out pointer must be writable.
 */
enum BrooksStatus brooks_graph_from_edges(size_t n,
                                          const size_t *edges,
                                          size_t m,
                                          struct BrooksGraph **out_graph);

/**
 * Parses a graph in the text format read by the command line tool.
 *
 * # Safety
 * `text` must be a NUL-terminated string and the out pointer must be writable.
 */
enum BrooksStatus brooks_graph_parse(const char *text, struct BrooksGraph **out_graph);

/**
 * # Safety
 * `graph` must be NULL or a handle from this library not yet freed.
 */
void brooks_graph_free(struct BrooksGraph *graph);

/**
 * # Safety
 * `graph` must be a live handle and the out pointer writable.
 */
enum BrooksStatus brooks_graph_vertex_count(const struct BrooksGraph *graph, size_t *out_n);

/**
 * Maximum degree; 0 for the empty graph.
 *
 * # Safety
 * `graph` must be a live handle and the out pointer writable.
 */
enum BrooksStatus brooks_graph_max_degree(const struct BrooksGraph *graph, size_t *out_d);

/**
 * Colors `graph` with `d` colors, where `d` bounds the maximum degree.
 * Fails with `HYPOTHESIS` when the graph contains a clique on `d + 1`
 * vertices (or an odd cycle when `d = 2`).
 *
 * # Safety
 * `graph` must be a live handle and the out pointer writable.
 */
enum BrooksStatus brooks_color(const struct BrooksGraph *graph,
                               size_t d,
                               struct BrooksColoring **out_coloring);

/**
 * Color of vertex `v`.
 *
 * # Safety
 * `coloring` must be a live handle and the out pointer writable.
 */
enum BrooksStatus brooks_coloring_get(const struct BrooksColoring *coloring,
                                      size_t v,
                                      size_t *out_color);

/**
 * # Safety
 * `coloring` must be a live handle and the out pointer writable.
 */
enum BrooksStatus brooks_coloring_palette(const struct BrooksColoring *coloring, size_t *out_k);

/**
 * Coloring of vertices `0..n` with `colors[v] < palette`.
 *
 * # Safety
 * `colors` must point to `n` readable values (it may be NULL when `n` is 0)
 * and the out pointer must be writable.
 */
enum BrooksStatus brooks_coloring_from_colors(size_t palette,
                                              const size_t *colors,
                                              size_t n,
                                              struct BrooksColoring **out_coloring);

/**
 * # Safety
 * `coloring` must be NULL or a handle from this library not yet freed.
 */
void brooks_coloring_free(struct BrooksColoring *coloring);

/**
 * Whether `coloring` colors every vertex of `graph` with no monochromatic
 * edge.
 *
 * # Safety
 * Both handles must be live and the out pointer writable.
 */
enum BrooksStatus brooks_is_proper(const struct BrooksGraph *graph,
                                   const struct BrooksColoring *coloring,
                                   bool *out_proper);

/**
 * Chromatic number by exhaustive search, giving up with `BUDGET` above
 * `cap` colors.
 *
 * # Safety
 * `graph` must be a live handle and the out pointer writable.
 */
enum BrooksStatus brooks_chromatic_number(const struct BrooksGraph *graph,
                                          size_t cap,
                                          size_t *out_chi);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* BROOKS_H */
