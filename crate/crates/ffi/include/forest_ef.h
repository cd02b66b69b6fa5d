#ifndef FOREST_EF_H
#define FOREST_EF_H

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum FefStatus {
  FEF_STATUS_OK = 0,
  FEF_STATUS_NULL_POINTER = 1,
  FEF_STATUS_INVALID_UTF8 = 2,
  FEF_STATUS_PARSE_ERROR = 3,
  FEF_STATUS_INVALID_ARGUMENT = 4,
  FEF_STATUS_BUILD_ERROR = 5,
  FEF_STATUS_PANIC = 6,
} FefStatus;

/**
 * Opaque graph handle.
 */
typedef struct FefGraph FefGraph;

/**
 * Opaque linear system handle.
 */
typedef struct FefSystem FefSystem;

/**
 * Separator tree parameters: `c = c_num/c_den`, `beta = beta_num/beta_den`.
 * A `leaf_threshold` of 0 picks the default `max(2, ceil(c))`.
 */
typedef struct FefTreeParams {
  int64_t c_num;
  int64_t c_den;
  uint32_t beta_num;
  uint32_t beta_den;
  size_t leaf_threshold;
  /**
   * Exhaustive separator search instead of the BFS-layer heuristic.
   */
  bool exact_separators;
} FefTreeParams;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message for the last failed call on this thread, or null. Valid until the
 * next `fef_*` call on the same thread.
 */
const char *fef_last_error_message(void);

/**
 * Defaults used by the command line tool: `c = 4`, `beta = 1/2`, heuristic
 * separators.
 */
struct FefTreeParams fef_tree_params_default(void);

/**
 * Parses a simple graph in edge-list text form (`n m` then `m` lines `u v`).
 *
 * # Safety
 * `text` must be a nul-terminated string and `out` a valid pointer.
 */
enum FefStatus fef_graph_parse(const char *text, struct FefGraph **out);

/**
 * # Safety
 * `g` must be null or a handle from [`fef_graph_parse`].
 */
size_t fef_graph_num_vertices(const struct FefGraph *g);

/**
 * # Safety
 * `g` must be null or a handle from [`fef_graph_parse`].
 */
size_t fef_graph_num_edges(const struct FefGraph *g);

/**
 * # Safety
 * `g` must be null or a handle from [`fef_graph_parse`], freed at most once.
 */
void fef_graph_free(struct FefGraph *g);

/**
 * Builds the recursive extended formulation of the spanning forest polytope
 * of `g`. `within_bound` (optional) receives whether the size fits the
 * closed-form bound with `d` the largest host density seen.
 *
 * # Safety
 * `g` must be a live graph handle, `params` null (defaults) or valid,
 * `out` valid, `within_bound` null or valid.
 */
enum FefStatus fef_build_ef(const struct FefGraph *g,
                            const struct FefTreeParams *params,
                            struct FefSystem **out,
                            bool *within_bound);

/**
 * Parses a system in the text form produced by [`fef_system_to_text`].
 *
 * # Safety
 * `text` must be a nul-terminated string and `out` a valid pointer.
 */
enum FefStatus fef_system_parse(const char *text, struct FefSystem **out);

/**
 * Number of constraints (inequalities plus equalities).
 *
 * # Safety
 * `sys` must be null or a live system handle.
 */
size_t fef_system_size(const struct FefSystem *sys);

/**
 * Number of variables, original and auxiliary.
 *
 * # Safety
 * `sys` must be null or a live system handle.
 */
size_t fef_system_num_vars(const struct FefSystem *sys);

/**
 * # Safety
 * `sys` must be a live system handle and `out` a valid pointer. The string
 * written to `out` must be released with [`fef_string_free`].
 */
enum FefStatus fef_system_to_text(const struct FefSystem *sys, char **out);

/**
 * # Safety
 * `sys` must be null or a live system handle, freed at most once.
 */
void fef_system_free(struct FefSystem *sys);

/**
 * Checks that `sys` projects onto the spanning forest polytope of `g`:
 * every forest is feasible and LP optima match the greedy forest on a
 * structured plus `trials` random objectives. `report` (optional) receives
 * the per-check text.
 *
 * # Safety
 * `g` and `sys` must be live handles, `passed` valid, `report` null or
 * valid. A string written to `report` must be released with
 * [`fef_string_free`].
 */
enum FefStatus fef_verify(const struct FefGraph *g,
                          const struct FefSystem *sys,
                          size_t trials,
                          uint64_t seed,
                          bool *passed,
                          char **report);

/**
 * # Safety
 * `s` must be null or a string returned by this library, freed at most once.
 */
void fef_string_free(char *s);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* FOREST_EF_H */
