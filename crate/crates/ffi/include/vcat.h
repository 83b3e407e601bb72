#ifndef VCAT_H
#define VCAT_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum VcatStatus {
  VCAT_STATUS_OK = 0,
  /**
   * The command ran and at least one check failed.
   */
  VCAT_STATUS_CHECK_FAILED = 1,
  /**
   * Null pointer, bad UTF-8 or an argument out of range.
   */
  VCAT_STATUS_INVALID_ARGUMENT = 2,
  /**
   * The workspace text is not valid JSON or does not match the schema.
   */
  VCAT_STATUS_PARSE = 3,
  /**
   * A name does not resolve, or values do not fit together.
   */
  VCAT_STATUS_REFERENCE = 4,
  /**
   * An enumeration ran past its budget.
   */
  VCAT_STATUS_BUDGET = 5,
  /**
   * A panic was caught at the boundary.
   */
  VCAT_STATUS_INTERNAL = 6,
} VcatStatus;

/**
 * How `vcat_fun` should check the function space.
 */
typedef enum VcatFunMode {
  VCAT_FUN_MODE_LEVELS = 0,
  VCAT_FUN_MODE_SEGAL = 1,
  VCAT_FUN_MODE_COMPLETE = 2,
} VcatFunMode;

/**
 * A parsed and resolved workspace.
 */
typedef struct VcatWorkspace VcatWorkspace;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * The message for the last failed call on this thread. Owned by the
 * library and valid until the next call on the same thread.
 */
const char *vcat_last_error(void);

/**
 * Library version as a static string.
 */
const char *vcat_version(void);

/**
 * Parses and resolves a workspace from JSON text. On success `*out` holds
 * a handle to release with [`vcat_workspace_free`].
 *
 * # Safety
 * `text` must be a nul-terminated string and `out` a valid pointer.
 */
enum VcatStatus vcat_workspace_parse(const char *text, size_t budget, struct VcatWorkspace **out);

/**
 * # Safety
 * `ws` must come from [`vcat_workspace_parse`] and not be used afterwards.
 * Null is ignored.
 */
void vcat_workspace_free(struct VcatWorkspace *ws);

/**
 * Checks every category, bimodule and functor.
 *
 * # Safety
 * `ws` must be a live handle and `out` a valid pointer.
 */
enum VcatStatus vcat_validate(const struct VcatWorkspace *ws, bool machine, char **out);

/**
 * Composes bimodules `m` and `n` over the category `b` and compares the
 * result with the coend oracle.
 *
 * # Safety
 * `ws` must be a live handle, the names nul-terminated strings and `out`
 * a valid pointer.
 */
enum VcatStatus vcat_compose(const struct VcatWorkspace *ws,
                             const char *m,
                             const char *b,
                             const char *n,
                             size_t budget,
                             bool machine,
                             char **out);

/**
 * Builds the composite algebra of a named chain and checks the Segal
 * condition.
 *
 * # Safety
 * As for [`vcat_compose`].
 */
enum VcatStatus vcat_segal(const struct VcatWorkspace *ws,
                           const char *chain,
                           bool machine,
                           char **out);

/**
 * Enumerates functors `c ⊗ [k] -> d` up to `level` and runs the checks
 * selected by `mode`.
 *
 * # Safety
 * As for [`vcat_compose`].
 */
enum VcatStatus vcat_fun(const struct VcatWorkspace *ws,
                         const char *c,
                         const char *d,
                         size_t level,
                         enum VcatFunMode mode,
                         size_t budget,
                         bool machine,
                         char **out);

/**
 * Releases a report string. Null is ignored.
 *
 * # Safety
 * `s` must come from this library and not be used afterwards.
 */
void vcat_string_free(char *s);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* VCAT_H */
