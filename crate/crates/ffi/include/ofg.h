#ifndef OFG_H
#define OFG_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/*
 Result of an FFI call.
 */
typedef enum OfgStatus {
  OFG_STATUS_OK = 0,
  /*
   Rejected input: malformed string, invalid assignment, limit, ...
   */
  OFG_STATUS_INVALID_INPUT = 1,
  /*
   An internal self-check failed.
   */
  OFG_STATUS_INTERNAL = 2,
  OFG_STATUS_NULL_POINTER = 3,
  OFG_STATUS_INVALID_UTF8 = 4,
  OFG_STATUS_PANIC = 5,
} OfgStatus;

typedef enum OfgFormat {
  OFG_FORMAT_DOT = 0,
  OFG_FORMAT_JSON = 1,
  OFG_FORMAT_CSV = 2,
} OfgFormat;

typedef enum OfgAlgorithm {
  OFG_ALGORITHM_SHWOOP = 0,
  OFG_ALGORITHM_HALVES = 1,
} OfgAlgorithm;

/*
 Opaque flip graph handle.
 */
typedef struct OfgGraph OfgGraph;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/*
 Message for the last failure on this thread, or NULL. Valid until the
 next call into this library on the same thread.
 */
const char *ofg_last_error_message(void);

/*
 Stable error code (e.g. `E_MV_STRING`) for the last failure, or NULL.
 */
const char *ofg_last_error_code(void);

/*
 # Safety
 `s` must be NULL or a string returned by this library, freed once.
 */
void ofg_string_free(char *s);

/*
 Build OFG(A_2n). `OFG_MAX_N` bounds `n`.

 # Safety
 `out` must be a valid pointer.
 */
enum OfgStatus ofg_graph_build_uniform(uint32_t n, struct OfgGraph **out);

/*
 Build OFG(C) for comma-separated sector angles, e.g. `"45,15,60,85,75,80"`.

 # Safety
 `angles` must be a NUL-terminated string and `out` a valid pointer.
 */
enum OfgStatus ofg_graph_build_general(const char *angles, struct OfgGraph **out);

/*
 # Safety
 `graph` must be NULL or a handle from this library, freed once.
 */
void ofg_graph_free(struct OfgGraph *graph);

/*
 Number of vertices; 0 for NULL.

 # Safety
 `graph` must be NULL or a live handle.
 */
size_t ofg_graph_vertex_count(const struct OfgGraph *graph);

/*
 Number of edges, counting parallel edges; 0 for NULL.

 # Safety
 `graph` must be NULL or a live handle.
 */
size_t ofg_graph_edge_count(const struct OfgGraph *graph);

/*
 # Safety
 `graph` must be NULL or a live handle.
 */
bool ofg_graph_is_multigraph(const struct OfgGraph *graph);

/*
 MV string of vertex `index` (0-based, sorted order).

 # Safety
 `graph` must be a live handle and `out` a valid pointer.
 */
enum OfgStatus ofg_graph_vertex(const struct OfgGraph *graph, size_t index, char **out);

/*
 Serialize the graph.

 # Safety
 `graph` must be a live handle and `out` a valid pointer.
 */
enum OfgStatus ofg_graph_export(const struct OfgGraph *graph, enum OfgFormat format, char **out);

/*
 Connectivity and diameter (largest finite eccentricity).

 # Safety
 `graph` must be a live handle; `connected` and `diameter` valid pointers.
 */
enum OfgStatus ofg_graph_diameter(const struct OfgGraph *graph,
                                  bool *connected,
                                  uint32_t *diameter);

/*
 Closed-form vertex count of OFG(A_2n) as a decimal string.

 # Safety
 `out` must be a valid pointer.
 */
enum OfgStatus ofg_vertex_count_formula(uint32_t n, char **out);

/*
 Closed-form edge count of OFG(A_2n) as a decimal string.

 # Safety
 `out` must be a valid pointer.
 */
enum OfgStatus ofg_edge_count_formula(uint32_t n, char **out);

/*
 Whether an MV string is valid on the equal-angle vertex of its degree.

 # Safety
 `mv` must be a NUL-terminated string and `out` a valid pointer.
 */
enum OfgStatus ofg_is_valid_uniform(const char *mv, bool *out);

/*
 Whether an MV string is valid on the vertex with the given angles.

 # Safety
 `angles` and `mv` must be NUL-terminated strings and `out` a valid pointer.
 */
enum OfgStatus ofg_is_valid_general(const char *angles, const char *mv, bool *out);

/*
 Face-flip path between two valid assignments of A_2n, as a JSON
 document with `start`, `end` and 1-based `faces`.

 # Safety
 `from` and `to` must be NUL-terminated strings and `out` a valid pointer.
 */
enum OfgStatus ofg_find_path(const char *from,
                             const char *to,
                             enum OfgAlgorithm algorithm,
                             char **out);

/*
 Distinct images of OFG(C) in OFG(A_2n) under rotations, and under
 rotations and reflections.

 # Safety
 `angles` must be a NUL-terminated string; the outputs valid pointers.
 */
enum OfgStatus ofg_count_rotational_copies(const char *angles,
                                           size_t *rotational,
                                           size_t *with_reflections);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* OFG_H */
