#ifndef HARBOURNE_H
#define HARBOURNE_H

#include <stdarg.h>
#include <stdbool.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Status codes returned by every API entry point.
 */
typedef enum HbStatus {
  HbOk = 0,
  HbInvalidArgument = 1,
  HbVerificationFailed = 2,
  HbNullPointer = 3,
  HbOverflow = 4,
  HbEnumerationCap = 5,
} HbStatus;

/**
 * Opaque handle to a built family report.
 */
typedef struct HbFamilyReport HbFamilyReport;

/**
 * Exact rational in lowest terms, `den > 0`.
 */
typedef struct HbRational {
  int64_t num;
  int64_t den;
} HbRational;

/**
 * Verified parameters of one of the incidence designs.
 */
typedef struct HbDesignParams {
  uint64_t curves;
  uint64_t points_per_curve;
  uint64_t points;
  uint64_t curves_per_point;
  uint64_t lambda;
  bool identity_holds;
} HbDesignParams;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Builds a family report. `name` is one of the CLI family names
 * (`kummer16-6`, `gamma-k`, ...); `parameter` is n or k.
 * On success `*out` owns the report.
 *
 * # Safety
 * `name` must be a valid NUL-terminated string and `out` a valid pointer.
 */
enum HbStatus hb_family_build(const char *name, int64_t parameter, struct HbFamilyReport **out);

/**
 * Releases a report returned by [`hb_family_build`]. NULL is a no-op.
 *
 * # Safety
 * `report` must come from [`hb_family_build`] and not be freed twice.
 */
void hb_family_free(struct HbFamilyReport *report);

/**
 * H(C, Sing C). Fails with `HbInvalidArgument` for smooth curves.
 *
 * # Safety
 * `report` and `out` must be valid pointers.
 */
enum HbStatus hb_family_h_local(const struct HbFamilyReport *report, struct HbRational *out);

/**
 * The global Harbourne constant H(C).
 *
 * # Safety
 * `report` and `out` must be valid pointers.
 */
enum HbStatus hb_family_h_global(const struct HbFamilyReport *report, struct HbRational *out);

/**
 * Runs the cross-consistency checks; `HbVerificationFailed` if any fails.
 * `level_cap` bounds the torsion level for enumeration (0 selects the
 * default cap of 12).
 *
 * # Safety
 * `report` must be a valid pointer.
 */
enum HbStatus hb_family_verify(const struct HbFamilyReport *report, uint32_t level_cap);

/**
 * Serializes the report (with its build-time checks) as JSON. The returned
 * string must be released with [`hb_string_free`].
 *
 * # Safety
 * `report` and `out` must be valid pointers.
 */
enum HbStatus hb_family_to_json(const struct HbFamilyReport *report, char **out);

/**
 * Frees a string returned by this library. NULL is a no-op.
 *
 * # Safety
 * `s` must originate from this library and not be freed twice.
 */
void hb_string_free(char *s);

/**
 * Global Harbourne constant of an abstract profile: self-intersection
 * `csq_num/csq_den` and `mults_len` singular multiplicities.
 *
 * # Safety
 * `mults` must point to `mults_len` readable u32 values (or be NULL with
 * `mults_len == 0`); `out` must be valid.
 */
enum HbStatus hb_h_constant(int64_t csq_num,
                            int64_t csq_den,
                            const uint32_t *mults,
                            uintptr_t mults_len,
                            struct HbRational *out);

/**
 * Brute-force oracle over subsets of the singular points plus at most
 * `b_cap` smooth and `c_cap` off-curve points.
 *
 * # Safety
 * Same contract as [`hb_h_constant`].
 */
enum HbStatus hb_h_bruteforce(int64_t csq_num,
                              int64_t csq_den,
                              const uint32_t *mults,
                              uintptr_t mults_len,
                              uint64_t b_cap,
                              uint64_t c_cap,
                              struct HbRational *out);

/**
 * Verifies a design. `kind` is `"16-6"` or `"16-10"`.
 *
 * # Safety
 * `kind` must be a valid NUL-terminated string; `out` a valid pointer.
 */
enum HbStatus hb_design_verify(const char *kind, struct HbDesignParams *out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* HARBOURNE_H */
