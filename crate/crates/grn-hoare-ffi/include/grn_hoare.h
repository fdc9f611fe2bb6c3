/* C interface for the grn-hoare network analysis library. */

#ifndef GRN_HOARE_H
#define GRN_HOARE_H

#include <stdarg.h>
#include <stdbool.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Result of a fallible call.
 */
typedef enum GrnStatus {
  /**
   * The call succeeded.
   */
  GrnOk = 0,
  /**
   * The input text was rejected; see `grn_last_error`.
   */
  GrnParseError = 1,
  /**
   * A configured resource cap was hit before an answer was reached.
   */
  GrnCapExceeded = 2,
  /**
   * A null pointer, invalid UTF-8, or out-of-range argument was passed.
   */
  GrnInvalidArgument = 3,
  /**
   * An internal error occurred; see `grn_last_error`.
   */
  GrnInternalError = 4,
} GrnStatus;

/**
 * Verdict of `grn_check`.
 */
typedef enum GrnVerdict {
  /**
   * The triple holds under the valuation.
   */
  GrnHolds = 0,
  /**
   * A starting state violates the triple; see the witness out-parameter.
   */
  GrnFails = 1,
  /**
   * The loop-unrolling budget ran out before a verdict was reached.
   */
  GrnUndetermined = 2,
} GrnVerdict;

/**
 * Opaque parsed network.
 */
typedef struct GrnNetwork GrnNetwork;

/**
 * Opaque parsed specification triple.
 */
typedef struct GrnTriple GrnTriple;

/**
 * Opaque parameter valuation.
 */
typedef struct GrnValuation GrnValuation;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Last error message for the current thread, as a NUL-terminated string.
 * The pointer stays valid until the next failing call on this thread.
 */
const char *grn_last_error(void);

/**
 * Parse a network description. On success, `*out` owns the new handle.
 *
 * # Safety
 * `text` must be a valid NUL-terminated string and `out` a valid pointer.
 */
enum GrnStatus grn_network_parse(const char *text, struct GrnNetwork **out);

/**
 * Release a network handle. A null pointer is ignored.
 *
 * # Safety
 * `network` must come from `grn_network_parse` and not be used afterwards.
 */
void grn_network_free(struct GrnNetwork *network);

/**
 * Parse a `pre { } program { } post { }` triple against a network.
 *
 * # Safety
 * `network` must be a live handle; `text` and `out` as in
 * `grn_network_parse`.
 */
enum GrnStatus grn_triple_parse(const struct GrnNetwork *network,
                                const char *text,
                                struct GrnTriple **out);

/**
 * Release a triple handle. A null pointer is ignored.
 *
 * # Safety
 * `triple` must come from `grn_triple_parse` and not be used afterwards.
 */
void grn_triple_free(struct GrnTriple *triple);

/**
 * Parse a valuation (`param K[v,{...}] = n;` statements) against a network.
 * Every free parameter must be assigned.
 *
 * # Safety
 * `network` must be a live handle; `text` and `out` as in
 * `grn_network_parse`.
 */
enum GrnStatus grn_valuation_parse(const struct GrnNetwork *network,
                                   const char *text,
                                   struct GrnValuation **out);

/**
 * Release a valuation handle. A null pointer is ignored.
 *
 * # Safety
 * `valuation` must come from `grn_valuation_parse` and not be used
 * afterwards.
 */
void grn_valuation_free(struct GrnValuation *valuation);

/**
 * Derive the weakest precondition of a triple. `*out` receives a text
 * report (`wp:`, `vc[i] ...:` and `final:` lines). Pass `simplify` != 0 to
 * normalize intermediate assertions.
 *
 * # Safety
 * `network` and `triple` must be live handles from this library; `out`
 * must be a valid pointer.
 */
enum GrnStatus grn_wp(const struct GrnNetwork *network,
                      const struct GrnTriple *triple,
                      int simplify,
                      char **out);

/**
 * Decide a triple under one concrete valuation. `mode` is 0 for the
 * direct path semantics and 1 for the backward calculus; `fuel` bounds
 * loop unrolling in mode 0 (pass 0 for the default). On `GrnFails`,
 * `*witness_out` (if non-null) receives a description of the violating
 * state.
 *
 * # Safety
 * All handle arguments must be live handles from this library;
 * `verdict_out` must be valid; `witness_out` may be null.
 */
enum GrnStatus grn_check(const struct GrnNetwork *network,
                         const struct GrnTriple *triple,
                         const struct GrnValuation *valuation,
                         int mode,
                         uint64_t fuel,
                         enum GrnVerdict *verdict_out,
                         char **witness_out);

/**
 * Enumerate all valuations and report the consistent ones as a JSON
 * document in `*out`. `mode` is 0 for the direct path semantics and 1 for
 * the backward calculus; pass 0 for `fuel`, `max_sets` or
 * `max_valuations` to use the defaults.
 *
 * # Safety
 * `network` and `triple` must be live handles from this library; `out`
 * must be a valid pointer.
 */
enum GrnStatus grn_solve_json(const struct GrnNetwork *network,
                              const struct GrnTriple *triple,
                              int mode,
                              uint64_t fuel,
                              uint64_t max_sets,
                              uint64_t max_valuations,
                              char **out);

/**
 * Render the asynchronous state graph under a valuation as Graphviz DOT
 * text in `*out`.
 *
 * # Safety
 * `network` and `valuation` must be live handles from this library; `out`
 * must be a valid pointer.
 */
enum GrnStatus grn_graph_dot(const struct GrnNetwork *network,
                             const struct GrnValuation *valuation,
                             char **out);

/**
 * Release a string returned through an out-parameter. A null pointer is
 * ignored.
 *
 * # Safety
 * `s` must come from this library and not be used afterwards.
 */
void grn_string_free(char *s);

#ifdef __cplusplus
} // extern "C"
#endif // __cplusplus

#endif /* GRN_HOARE_H */
