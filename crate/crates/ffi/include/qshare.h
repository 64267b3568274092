#ifndef QSHARE_H
#define QSHARE_H

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>

typedef enum QsStatus {
  QS_STATUS_OK = 0,
  // The computation finished but a check failed (or recovery is impossible).
  QS_STATUS_VERDICT_FAILED = 1,
  QS_STATUS_INPUT_ERROR = 2,
  QS_STATUS_NUMERIC_ERROR = 3,
  QS_STATUS_NULL_POINTER = 4,
  QS_STATUS_PANIC = 5,
} QsStatus;

// Opaque verification report handle.
typedef struct QsReport QsReport;

// Opaque scheme handle.
typedef struct QsScheme QsScheme;

typedef struct QsAccessFlags {
  bool monotone_antichain;
  bool quantum_admissible;
  bool complement_closed;
} QsAccessFlags;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Message of the last failed call on this thread, or NULL. Free with
// [`qs_string_free`].
char *qs_last_error_message(void);

// Built-in scheme by name (`"cgl23"`).
//
// # Safety
// `name` must be a NUL-terminated string and `out` a valid pointer.
enum QsStatus qs_scheme_builtin(const char *name, struct QsScheme **out);

// Polynomial `(t, n)` threshold scheme over `Z_q` with `n = 2t - 1`.
//
// # Safety
// `out` must be a valid pointer.
enum QsStatus qs_scheme_threshold(uint32_t t, uint32_t n, uint32_t q, struct QsScheme **out);

// Scheme from a JSON scheme document.
//
// # Safety
// `json` must be a NUL-terminated string and `out` a valid pointer.
enum QsStatus qs_scheme_from_json(const char *json, struct QsScheme **out);

// # Safety
// `scheme` must be NULL or a handle from a `qs_scheme_*` constructor that
// has not been freed.
void qs_scheme_free(struct QsScheme *scheme);

// Number of players, or 0 for NULL.
//
// # Safety
// `scheme` must be NULL or a live handle.
size_t qs_scheme_player_count(const struct QsScheme *scheme);

// # Safety
// `scheme` must be NULL or a live handle.
size_t qs_scheme_secret_dim(const struct QsScheme *scheme);

// Runs every check against the scheme's default ensemble. The report is
// written to `out` whenever the computation finishes; the status is
// `VERDICT_FAILED` when some check did not pass.
//
// # Safety
// `scheme` must be a live handle and `out` a valid pointer.
enum QsStatus qs_verify(const struct QsScheme *scheme,
                        double tolerance,
                        bool fast,
                        struct QsReport **out);

// # Safety
// `report` must be NULL or a live handle.
bool qs_report_overall(const struct QsReport *report);

// `S(S)` in bits; NaN for NULL.
//
// # Safety
// `report` must be NULL or a live handle.
double qs_report_secret_entropy(const struct QsReport *report);

// `I(R:S)` in bits; NaN for NULL.
//
// # Safety
// `report` must be NULL or a live handle.
double qs_report_reference_mutual_information(const struct QsReport *report);

// # Safety
// `report` must be NULL or a live handle.
size_t qs_report_subset_count(const struct QsReport *report);

// `I(R:A)` and verdict of the `index`-th checked coalition.
//
// # Safety
// `report` must be a live handle; `mutual_information` and `verdict` must
// be valid pointers.
enum QsStatus qs_report_subset(const struct QsReport *report,
                               size_t index,
                               double *mutual_information,
                               bool *verdict);

// # Safety
// `report` must be NULL or a live handle.
size_t qs_report_coexistence_violation_count(const struct QsReport *report);

// Pretty JSON of the report; free with [`qs_string_free`]. NULL for NULL.
//
// # Safety
// `report` must be NULL or a live handle.
char *qs_report_to_json(const struct QsReport *report);

// # Safety
// `report` must be NULL or a handle from [`qs_verify`] not yet freed.
void qs_report_free(struct QsReport *report);

// # Safety
// `s` must be NULL or a string returned by this library and not yet freed.
void qs_string_free(char *s);

// Information rate `S(S)/max S(X)` and average rate. Undefined rates (all
// shares pure) are reported as NaN.
//
// # Safety
// `scheme` must be a live handle; `rate` and `average_rate` valid pointers.
enum QsStatus qs_rates(const struct QsScheme *scheme, double *rate, double *average_rate);

// Synthesizes a decoder for the comma-separated coalition and reports its
// certified fidelity. `VERDICT_FAILED` means recovery is impossible.
//
// # Safety
// `scheme` must be a live handle, `subset` a NUL-terminated string and
// `fidelity` a valid pointer.
enum QsStatus qs_recovery_fidelity(const struct QsScheme *scheme,
                                   const char *subset,
                                   double tolerance,
                                   double *fidelity);

// Von Neumann entropy (bits) of a `dim × dim` density matrix given as
// `2·dim²` doubles, row-major, real and imaginary parts interleaved.
//
// # Safety
// `data` must point to `2·dim·dim` readable doubles and `out` be valid.
enum QsStatus qs_von_neumann_entropy(const double *data, size_t dim, double *out);

// Classifies `threshold:t,n`, `vernam` or `sets:A,M|B,M`.
//
// # Safety
// `structure` must be a NUL-terminated string and `out` a valid pointer.
enum QsStatus qs_classify(const char *structure, struct QsAccessFlags *out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* QSHARE_H */
