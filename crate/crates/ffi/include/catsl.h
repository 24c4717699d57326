#ifndef CATSL_H
#define CATSL_H

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum CatslStatus {
  CATSL_STATUS_OK = 0,
  CATSL_STATUS_INVALID_ARGUMENT = 1,
  CATSL_STATUS_CAPACITY = 2,
  CATSL_STATUS_NODE_OUT_OF_RANGE = 3,
  CATSL_STATUS_WEIGHT_MISMATCH = 4,
  CATSL_STATUS_UNSUPPORTED_REWRITE = 5,
  CATSL_STATUS_INTEGRITY = 6,
  CATSL_STATUS_PARSE = 7,
  CATSL_STATUS_NULL_POINTER = 8,
  CATSL_STATUS_INVALID_UTF8 = 9,
  CATSL_STATUS_PANIC = 10,
} CatslStatus;

/*
 Opaque handle to a tensor model `(C^m)^{\otimes N}`.
 */
typedef struct CatslModel CatslModel;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/*
 Message of the last failure on this thread; empty after a success.
 Valid until the next call into the library on this thread.
 */
const char *catsl_last_error(void);

/*
 Builds the model `(C^m)^{\otimes n}` and stores a new handle in `*out`.

 # Safety
 `out` must be valid for writes.
 */
enum CatslStatus catsl_model_new(size_t m, size_t n, struct CatslModel **out);

/*
 # Safety
 `model` must come from [`catsl_model_new`] and not be used afterwards.
 Null is ignored.
 */
void catsl_model_free(struct CatslModel *model);

/*
 Dimension `m^N`, or 0 for a null handle.

 # Safety
 `model` must be null or a live handle.
 */
size_t catsl_model_dim(const struct CatslModel *model);

/*
 Runs the quantum-group relation suite. `*passed` is set to whether every
 relation held and `*checks` to the number of checks.

 # Safety
 `model` must be a live handle; `passed` and `checks` valid for writes.
 */
enum CatslStatus catsl_relation_suite(const struct CatslModel *model, bool *passed, size_t *checks);

/*
 Braid (or commuting) relation between the reflections at nodes `i` and
 `j`.

 # Safety
 `model` must be a live handle; `passed` valid for writes.
 */
enum CatslStatus catsl_braid_check(const struct CatslModel *model,
                                   size_t i,
                                   size_t j,
                                   bool *passed);

/*
 Normal form of `word` at `weight`; `window` may be null for unbounded.
 The rendered sum is stored in `*out`.

 # Safety
 The inputs must be null-terminated strings (or null `window`); `out`
 valid for writes.
 */
enum CatslStatus catsl_simplify(const char *word,
                                const char *weight,
                                const char *window,
                                char **out);

/*
 Component table of `Z(k, N)` as a JSON array.

 # Safety
 `out` must be valid for writes.
 */
enum CatslStatus catsl_strata_json(uint32_t k, uint32_t n, char **out);

/*
 Runs a named suite with default parameters and `seed`; the JSON report
 goes to `*out` and `*passed` tells whether every check passed.

 # Safety
 `name` must be a null-terminated string; `out` and `passed` valid for
 writes.
 */
enum CatslStatus catsl_run_suite(const char *name, uint64_t seed, char **out, bool *passed);

/*
 Releases a string returned by the library. Null is ignored.

 # Safety
 `s` must come from this library and not be used afterwards.
 */
void catsl_string_free(char *s);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* CATSL_H */
