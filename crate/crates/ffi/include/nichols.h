#ifndef NICHOLS_H
#define NICHOLS_H

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Status codes returned by every function.
 */
typedef enum NicholsStatus {
  NICHOLS_STATUS_OK = 0,
  /**
   * A required pointer argument was null.
   */
  NICHOLS_STATUS_NULL_POINTER = 1,
  /**
   * A string argument was not valid UTF-8.
   */
  NICHOLS_STATUS_UTF8 = 2,
  /**
   * JSON input could not be decoded.
   */
  NICHOLS_STATUS_JSON = 3,
  /**
   * An element or relation failed to parse.
   */
  NICHOLS_STATUS_PARSE = 4,
  /**
   * The computation itself reported an error (bad index, cap exceeded, ...).
   */
  NICHOLS_STATUS_COMPUTE = 5,
  /**
   * A Rust panic was caught at the boundary.
   */
  NICHOLS_STATUS_PANIC = 6,
} NicholsStatus;

/**
 * An element of the free algebra.
 */
typedef struct NicholsElement NicholsElement;

/**
 * A finitely generated homogeneous ideal under construction.
 */
typedef struct NicholsIdeal NicholsIdeal;

/**
 * A braiding matrix, optionally remembering the family it came from so that
 * parameter names such as `q` resolve when parsing elements.
 */
typedef struct NicholsMatrix NicholsMatrix;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Returns the message of the last failure on this thread, or null. The
 * pointer stays valid until the next failing call on the same thread.
 */
const char *nichols_last_error(void);

/**
 * Releases a string returned by this library. Null is ignored.
 *
 * # Safety
 * `s` must be null or a string previously returned by this library.
 */
void nichols_string_free(char *s);

/**
 * Library version as a static NUL-terminated string.
 */
const char *nichols_version(void);

/**
 * Builds a matrix from `{"order": M, "exponents": [[...], ...]}`.
 *
 * # Safety
 * `json` must be a NUL-terminated string and `out` a writable pointer.
 */
enum NicholsStatus nichols_matrix_from_json(const char *json, struct NicholsMatrix **out);

/**
 * Builds a matrix from a family descriptor such as
 * `{"family": "CartanG2", "order": 5}`.
 *
 * # Safety
 * `json` must be a NUL-terminated string and `out` a writable pointer.
 */
enum NicholsStatus nichols_matrix_from_family(const char *json, struct NicholsMatrix **out);

/**
 * # Safety
 * `m` must be null or a handle from `nichols_matrix_from_*` not yet freed.
 */
void nichols_matrix_free(struct NicholsMatrix *m);

/**
 * Writes the rank of the braiding.
 *
 * # Safety
 * `m` must be a live matrix handle and `out` a writable pointer.
 */
enum NicholsStatus nichols_matrix_theta(const struct NicholsMatrix *m, size_t *out);

/**
 * Writes the matrix as JSON.
 *
 * # Safety
 * `m` must be a live matrix handle and `out` a writable pointer.
 */
enum NicholsStatus nichols_matrix_json(const struct NicholsMatrix *m, char **out);

/**
 * Writes the generalized Dynkin diagram as JSON.
 *
 * # Safety
 * `m` must be a live matrix handle and `out` a writable pointer.
 */
enum NicholsStatus nichols_diagram_json(const struct NicholsMatrix *m, char **out);

/**
 * Writes the positive roots (up to height `height_cap`) as a JSON array.
 * Fails with `Compute` when the Weyl groupoid is not finite within the cap.
 *
 * # Safety
 * `m` must be a live matrix handle and `out` a writable pointer.
 */
enum NicholsStatus nichols_roots_json(const struct NicholsMatrix *m,
                                      int64_t height_cap,
                                      char **out);

/**
 * Writes the GK-dimension of the distinguished pre-Nichols algebra.
 *
 * # Safety
 * `m` must be a live matrix handle and `out` a writable pointer.
 */
enum NicholsStatus nichols_gkdim(const struct NicholsMatrix *m, size_t *out);

/**
 * Parses an element such as `[x112, x12]` or `x1^3 - q*x2`. Brackets are
 * braided commutators for the braiding of `m`.
 *
 * # Safety
 * `m` must be a live matrix handle, `src` a NUL-terminated string and
 * `out` a writable pointer.
 */
enum NicholsStatus nichols_element_parse(const struct NicholsMatrix *m,
                                         const char *src,
                                         struct NicholsElement **out);

/**
 * # Safety
 * `e` must be null or a live element handle.
 */
void nichols_element_free(struct NicholsElement *e);

/**
 * Writes the element in the plain text form.
 *
 * # Safety
 * `e` must be a live element handle and `out` a writable pointer.
 */
enum NicholsStatus nichols_element_to_string(const struct NicholsElement *e, char **out);

/**
 * Writes the element as JSON.
 *
 * # Safety
 * `e` must be a live element handle and `out` a writable pointer.
 */
enum NicholsStatus nichols_element_json(const struct NicholsElement *e, char **out);

/**
 * Writes the coproduct of `e` in the braided tensor square as JSON.
 *
 * # Safety
 * `m` and `e` must be live handles and `out` a writable pointer.
 */
enum NicholsStatus nichols_coproduct_json(const struct NicholsMatrix *m,
                                          const struct NicholsElement *e,
                                          char **out);

/**
 * Writes whether `e` is primitive in the free algebra.
 *
 * # Safety
 * `m` and `e` must be live handles and `out` a writable pointer.
 */
enum NicholsStatus nichols_is_primitive(const struct NicholsMatrix *m,
                                        const struct NicholsElement *e,
                                        bool *out);

/**
 * Writes whether `e` vanishes in the Nichols algebra, that is, whether it
 * lies in the kernel of the quantum symmetrizer. `cap` bounds the degree.
 *
 * # Safety
 * `m` and `e` must be live handles and `out` a writable pointer.
 */
enum NicholsStatus nichols_in_nichols_ideal(const struct NicholsMatrix *m,
                                            const struct NicholsElement *e,
                                            size_t cap,
                                            bool *out);

/**
 * Starts an empty ideal in the free algebra on `theta` generators.
 *
 * # Safety
 * `out` must be a writable pointer.
 */
enum NicholsStatus nichols_ideal_new(size_t theta, struct NicholsIdeal **out);

/**
 * # Safety
 * `i` must be null or a live ideal handle.
 */
void nichols_ideal_free(struct NicholsIdeal *i);

/**
 * Adds a copy of `e` as a generator. Generators must be homogeneous.
 *
 * # Safety
 * `i` and `e` must be live handles.
 */
enum NicholsStatus nichols_ideal_add(struct NicholsIdeal *i, const struct NicholsElement *e);

/**
 * Writes whether `e` lies in the ideal, deciding with a Gröbner basis
 * truncated at `degree` (which must be at least the degree of `e`).
 *
 * # Safety
 * `i` and `e` must be live handles and `out` a writable pointer.
 */
enum NicholsStatus nichols_ideal_contains(const struct NicholsIdeal *i,
                                          const struct NicholsElement *e,
                                          size_t degree,
                                          bool *out);

/**
 * Writes the graded dimensions of the quotient up to total degree `degree`
 * as a JSON array of `{"degree": [...], "dim": n}` objects.
 *
 * # Safety
 * `i` must be a live ideal handle and `out` a writable pointer.
 */
enum NicholsStatus nichols_ideal_dims_json(const struct NicholsIdeal *i, size_t degree, char **out);

/**
 * Runs a replay manifest (a built-in name or a path), writes the report as
 * JSON to `report` and whether every check passed to `passed`.
 *
 * # Safety
 * `name_or_path` must be a NUL-terminated string; `report` and `passed`
 * must be writable pointers.
 */
enum NicholsStatus nichols_replay(const char *name_or_path, char **report, bool *passed);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* NICHOLS_H */
