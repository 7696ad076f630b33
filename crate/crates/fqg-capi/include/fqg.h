/* C API for the fqg finite quantum group toolkit. */

#ifndef FQG_H
#define FQG_H

/* This file is generated by cbindgen from fqg-capi; do not edit by hand. */

#include <stdarg.h>
#include <stdbool.h>
#include <stdint.h>
#include <stdlib.h>

// Status code returned by every fallible call.
typedef enum FqgStatus {
  // Success; all verified properties hold.
  FQG_STATUS_OK = 0,
  // The computation ran but a theorem-level check failed.
  FQG_STATUS_THEOREM_FAILURE = 1,
  // Invalid input: schema, shape, or axiom failure.
  FQG_STATUS_INPUT_ERROR = 2,
  // Filesystem or encoding problem.
  FQG_STATUS_IO_ERROR = 3,
} FqgStatus;

// Opaque parsed input document.
typedef struct FqgDocument FqgDocument;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Last error message for this thread, or NULL when the previous call
// succeeded. The pointer is valid until the next fqg call on this thread.
const char *fqg_last_error(void);

// # Safety
// `json` must be a valid NUL-terminated UTF-8 string; `out` must be a
// valid location to store the handle.
enum FqgStatus fqg_document_parse(const char *json, struct FqgDocument **out);

// # Safety
// `path` must be a valid NUL-terminated string naming a readable file;
// `out` must be a valid location to store the handle.
enum FqgStatus fqg_document_load(const char *path, struct FqgDocument **out);

// # Safety
// `doc` must be a handle from `fqg_document_parse`/`fqg_document_load`
// that has not been freed.
void fqg_document_free(struct FqgDocument *doc);

// Axiom checks only. `tol <= 0` selects the default tolerances.
//
// # Safety
// `doc` must be a live document handle and `report_out` a valid location;
// the returned string must be freed with [`fqg_string_free`].
enum FqgStatus fqg_verify(const struct FqgDocument *doc, double tol, char **report_out);

// Hopf axioms, Haar state, and block profile of a quantum group document.
//
// # Safety
// As for [`fqg_verify`].
enum FqgStatus fqg_analyze_group(const struct FqgDocument *doc,
                                 uint64_t seed,
                                 double tol,
                                 char **report_out);

// Coaction flags, isotypical dimensions, and core/kernel decomposition.
//
// # Safety
// As for [`fqg_verify`].
enum FqgStatus fqg_analyze_action(const struct FqgDocument *doc,
                                  uint64_t seed,
                                  double tol,
                                  char **report_out);

// Runs a reduction procedure; `mode` is "minimal", "reduced", or
// "universal".
//
// # Safety
// As for [`fqg_verify`]; `mode` must be a valid NUL-terminated string.
enum FqgStatus fqg_reduce(const struct FqgDocument *doc,
                          const char *mode,
                          uint64_t seed,
                          double tol,
                          char **report_out);

// Frees a report string returned by the analysis calls.
//
// # Safety
// `s` must have been returned by an fqg call and not yet freed.
void fqg_string_free(char *s);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* FQG_H */
