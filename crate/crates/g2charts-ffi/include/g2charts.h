#ifndef G2CHARTS_H
#define G2CHARTS_H

#include <stdarg.h>
#include <stdbool.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum G2Status {
  G2_STATUS_OK = 0,
  G2_STATUS_NULL_ARGUMENT = 1,
  G2_STATUS_INVALID_UTF8 = 2,
  G2_STATUS_PARSE = 3,
  G2_STATUS_INVALID_CHART = 4,
  G2_STATUS_MOVE_REFUSED = 5,
  G2_STATUS_CONVERSION_FAILED = 6,
  G2_STATUS_UNKNOWN_NAME = 7,
  G2_STATUS_NOT_REALIZABLE = 8,
} G2Status;

/*
 Result of an identity check.
 */
typedef enum G2Verdict {
  G2_VERDICT_NO = 0,
  G2_VERDICT_YES = 1,
  G2_VERDICT_UNKNOWN = 2,
} G2Verdict;

/*
 Opaque chart handle.
 */
typedef struct G2Chart G2Chart;

/*
 Opaque Hurwitz system handle.
 */
typedef struct G2System G2System;

typedef struct G2Counts {
  uint64_t n_i_plus;
  uint64_t n_i_minus;
  uint64_t n_ii_plus;
  uint64_t n_ii_minus;
} G2Counts;

typedef struct G2NormalForm {
  int64_t energy;
  uint8_t epsilon;
  int64_t a;
  uint64_t b;
  uint64_t c;
  uint64_t d;
  uint64_t e;
  /*
   -1 when no bound is known.
   */
  int64_t m0;
} G2NormalForm;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/*
 Message of the last failure on this thread, or null. Valid until the next
 failing call on the same thread.
 */
const char *g2_last_error(void);

/*
 # Safety
 `s` must be null or a string returned by this library and not yet freed.
 */
void g2_string_free(char *s);

/*
 Parses a chart in the text format.

 # Safety
 `src` must be a nul-terminated string; `out` must be writable.
 */
enum G2Status g2_chart_parse(const char *src, struct G2Chart **out);

/*
 One of N0, N1, N2, F1, F2.

 # Safety
 `name` must be a nul-terminated string; `out` must be writable.
 */
enum G2Status g2_chart_basic(const char *name, struct G2Chart **out);

/*
 # Safety
 `chart` must be null or a handle from this library not yet freed.
 */
void g2_chart_free(struct G2Chart *chart);

/*
 Chart in the text format; free with [`g2_string_free`]. Null on a null handle.

 # Safety
 `chart` must be a live handle.
 */
char *g2_chart_print(const struct G2Chart *chart);

/*
 `Ok` when the chart satisfies every chart condition, `InvalidChart`
 otherwise (the report is the error message).

 # Safety
 `chart` must be a live handle.
 */
enum G2Status g2_chart_validate(const struct G2Chart *chart);

/*
 # Safety
 `chart` must be a live handle; `out` must be writable.
 */
enum G2Status g2_chart_counts(const struct G2Chart *chart, struct G2Counts *out);

/*
 Disjoint union of two charts, as a new handle.

 # Safety
 `a` and `b` must be live handles; `out` must be writable.
 */
enum G2Status g2_chart_product(const struct G2Chart *a,
                               const struct G2Chart *b,
                               struct G2Chart **out);

/*
 Applies a move written `<entry> <site>`, e.g. `hoop-remove edge e4`; the
 input handle is left unchanged.

 # Safety
 `chart` must be a live handle, `mv` a nul-terminated string, `out` writable.
 */
enum G2Status g2_chart_apply_move(const struct G2Chart *chart,
                                  const char *mv,
                                  struct G2Chart **out);

/*
 # Safety
 `chart` must be a live handle; `out` must be writable.
 */
enum G2Status g2_chart_to_system(const struct G2Chart *chart, struct G2System **out);

/*
 Parses a system, one factor per line `conjugator | core | sign`.

 # Safety
 `src` must be a nul-terminated string; `out` must be writable.
 */
enum G2Status g2_system_parse(const char *src, struct G2System **out);

/*
 One of W0, W1, W2, W1p, W2p.

 # Safety
 `name` must be a nul-terminated string; `out` must be writable.
 */
enum G2Status g2_system_basic(const char *name, struct G2System **out);

/*
 # Safety
 `system` must be null or a handle from this library not yet freed.
 */
void g2_system_free(struct G2System *system);

/*
 # Safety
 `system` must be a live handle.
 */
char *g2_system_print(const struct G2System *system);

/*
 # Safety
 `system` must be a live handle; `out` must be writable.
 */
enum G2Status g2_system_counts(const struct G2System *system, struct G2Counts *out);

/*
 # Safety
 `system` must be a live handle; `out` must be writable.
 */
enum G2Status g2_system_to_chart(const struct G2System *system, struct G2Chart **out);

/*
 Decides whether a word such as `z1 z2 s' z3` is trivial, with the default
 budget (or `G2CHARTS_BUDGET`).

 # Safety
 `word` must be a nul-terminated string; `out` must be writable.
 */
enum G2Status g2_word_is_identity(const char *word, enum G2Verdict *out);

/*
 # Safety
 `out` must be writable.
 */
enum G2Status g2_normal_form(struct G2Counts counts, struct G2NormalForm *out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* G2CHARTS_H */
