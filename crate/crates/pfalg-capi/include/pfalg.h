#ifndef PFALG_H
#define PFALG_H

/* Generated by cbindgen from pfalg-capi; do not edit by hand. */

#include <stdarg.h>
#include <stdbool.h>
#include <stdint.h>
#include <stdlib.h>

#define PFALG_STATUS_OK 0

#define PFALG_STATUS_FAIL 1

#define PFALG_STATUS_BUDGET 2

#define PFALG_STATUS_USAGE 64

#define PFALG_STATUS_DATA 65

#define PFALG_STATUS_INTERNAL 70

/**
 * Search modes for `pfalg_check_equation`.
 */
#define PFALG_MODE_EXHAUSTIVE 0

#define PFALG_MODE_RANDOM 1

/**
 * An opaque finite algebra given by operation tables.
 */
typedef struct PfalgAlgebra PfalgAlgebra;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Version of the underlying library, as a static string.
 */
const char *pfalg_version(void);

/**
 * Free a string returned by any function of this API.
 *
 * # Safety
 * `s` must have been returned by this library and not freed before.
 */
void pfalg_string_free(char *s);

/**
 * Parse the line-oriented algebra format into a handle.
 *
 * # Safety
 * `text` must be a valid NUL-terminated string; `out` must be a valid
 * pointer slot when non-null.
 */
int32_t pfalg_algebra_parse(const char *text, struct PfalgAlgebra **out, char **error_out);

/**
 * Free an algebra handle.
 *
 * # Safety
 * `alg` must come from `pfalg_algebra_parse` and not be freed twice.
 */
void pfalg_algebra_free(struct PfalgAlgebra *alg);

/**
 * Number of elements of the algebra.
 *
 * # Safety
 * `alg` must be a live handle.
 */
uintptr_t pfalg_algebra_element_count(const struct PfalgAlgebra *alg);

/**
 * Check the axiom suite selected by the algebra's signature. Writes a
 * one-line-per-law report. Returns 0 when every checkable law holds and 1
 * when some law has a witness against it.
 *
 * # Safety
 * `alg` must be a live handle; `report_out` a valid slot when non-null.
 */
int32_t pfalg_algebra_check_axioms(const struct PfalgAlgebra *alg, char **report_out);

/**
 * Construct a functional representation for the given signature (or the
 * algebra's own when `signature` is null), verify it, and write the report.
 *
 * # Safety
 * `alg` must be a live handle; string arguments NUL-terminated;
 * `report_out` a valid slot when non-null.
 */
int32_t pfalg_algebra_represent(const struct PfalgAlgebra *alg,
                                const char *signature,
                                char **report_out);

/**
 * Decide an equation over all function algebras of a signature. `mode` is
 * one of the `PFALG_MODE_*` constants; `budget_secs` of 0 means no
 * wall-clock budget. Returns 0 (valid), 1 (counterexample, described in the
 * report), 2 (budget exceeded) or an error code.
 *
 * # Safety
 * String arguments must be NUL-terminated; `report_out` a valid slot when
 * non-null.
 */
int32_t pfalg_check_equation(const char *signature,
                             const char *equation,
                             uint32_t mode,
                             uint64_t seed,
                             uint64_t budget_secs,
                             char **report_out);

/**
 * Evaluate a term against a function fixture (the `base:`/`name: {…}`
 * format) and write the resulting partial function in map text form.
 *
 * # Safety
 * String arguments must be NUL-terminated; `value_out` a valid slot when
 * non-null.
 */
int32_t pfalg_eval_term(const char *fixture, const char *term, char **value_out);

/**
 * Translate a propositional formula over `!`/`&` into the equation whose
 * validity over function algebras matches the formula's validity.
 *
 * # Safety
 * `formula` must be NUL-terminated; `equation_out` a valid slot when
 * non-null.
 */
int32_t pfalg_reduce_sat(const char *formula, char **equation_out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* PFALG_H */
