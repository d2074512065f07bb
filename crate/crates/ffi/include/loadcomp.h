#ifndef LOADCOMP_H
#define LOADCOMP_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

#define LC_SEASON_WINTER 0

#define LC_SEASON_SUMMER 1

#define LC_FORMAT_CSV 0

#define LC_FORMAT_JSON 1

#define LC_GRANULARITY_INFER 0

#define LC_GRANULARITY_HOURLY 1

#define LC_GRANULARITY_MONTHLY_AVERAGE 2

#define LC_GRANULARITY_MONTHLY_PEAK 3

/**
 * Result of every fallible call.
 */
typedef enum LcStatus {
  LC_STATUS_OK = 0,
  /**
   * A required pointer was NULL.
   */
  LC_STATUS_NULL_ARGUMENT = 1,
  /**
   * An integer argument is outside its documented range.
   */
  LC_STATUS_INVALID_ARGUMENT = 2,
  /**
   * Input bytes could not be parsed.
   */
  LC_STATUS_PARSE = 3,
  /**
   * Parsed input broke a model invariant.
   */
  LC_STATUS_VALIDATION = 4,
  /**
   * The computation has no defined result for this input.
   */
  LC_STATUS_COMPUTATION = 5,
  /**
   * A caller buffer is too small.
   */
  LC_STATUS_BUFFER_TOO_SMALL = 6,
  /**
   * Internal panic; the library state is unchanged.
   */
  LC_STATUS_PANIC = 99,
} LcStatus;

/**
 * Opaque appliance catalog.
 */
typedef struct LcCatalog LcCatalog;

/**
 * Opaque load profile.
 */
typedef struct LcProfile LcProfile;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message describing the last failed call on this thread, or "".
 * The pointer stays valid until the next `lc_*` call on the same thread.
 */
const char *lc_last_error(void);

/**
 * Library version as a static NUL-terminated string.
 */
const char *lc_version(void);

/**
 * Releases a string returned by this library. NULL is ignored.
 *
 * # Safety
 * `s` must come from an `lc_*` out-parameter and not have been freed.
 */
void lc_string_free(char *s);

/**
 * The built-in 15-activity household catalog.
 *
 * # Safety
 * `out` must be valid for a pointer write.
 */
enum LcStatus lc_catalog_builtin(struct LcCatalog **out);

/**
 * Parses and validates a catalog from `len` bytes in `format`.
 *
 * # Safety
 * `data` must point to `len` readable bytes; `out` must be writable.
 */
enum LcStatus lc_catalog_parse(const uint8_t *data,
                               size_t len,
                               uint32_t format,
                               struct LcCatalog **out);

/**
 * Releases a catalog. NULL is ignored.
 *
 * # Safety
 * `cat` must come from `lc_catalog_*` and not have been freed.
 */
void lc_catalog_free(struct LcCatalog *cat);

/**
 * Number of activities, 0 for NULL.
 *
 * # Safety
 * `cat` must be NULL or a live catalog handle.
 */
size_t lc_catalog_len(const struct LcCatalog *cat);

/**
 * Name of activity `index` as a new string.
 *
 * # Safety
 * `cat` must be a live catalog handle; `out` must be writable.
 */
enum LcStatus lc_catalog_activity_name(const struct LcCatalog *cat, size_t index, char **out);

/**
 * Catalog in the CSV or JSON file schema, as a new string.
 *
 * # Safety
 * `cat` must be a live catalog handle; `out` must be writable.
 */
enum LcStatus lc_catalog_serialize(const struct LcCatalog *cat, uint32_t format, char **out);

/**
 * Wh/day of one unit of activity `index`.
 *
 * # Safety
 * `cat` must be a live catalog handle; `out_wh` must be writable.
 */
enum LcStatus lc_device_daily_energy(const struct LcCatalog *cat,
                                     size_t index,
                                     uint32_t season_id,
                                     double *out_wh);

/**
 * Wh/day of all units of activity `index` in a household.
 *
 * # Safety
 * `cat` must be a live catalog handle; `out_wh` must be writable.
 */
enum LcStatus lc_household_energy(const struct LcCatalog *cat,
                                  size_t index,
                                  uint32_t season_id,
                                  double *out_wh);

/**
 * Daily (Wh) and monthly (kWh) household totals.
 *
 * # Safety
 * `cat` must be a live catalog handle; both out pointers must be writable.
 */
enum LcStatus lc_seasonal_totals(const struct LcCatalog *cat,
                                 uint32_t season_id,
                                 uint32_t days_per_month,
                                 double *out_daily_wh,
                                 double *out_monthly_kwh);

/**
 * Percentage share of activity `index` in the season's household energy.
 *
 * # Safety
 * `cat` must be a live catalog handle; `out_pct` must be writable.
 */
enum LcStatus lc_composition_share(const struct LcCatalog *cat,
                                   uint32_t season_id,
                                   size_t index,
                                   double *out_pct);

/**
 * Seasonal table and shares as JSON (full precision), as a new string.
 *
 * # Safety
 * `cat` must be a live catalog handle; `out` must be writable.
 */
enum LcStatus lc_composition_json(const struct LcCatalog *cat,
                                  uint32_t season_id,
                                  uint32_t days_per_month,
                                  char **out);

/**
 * Per-hour household energy (Wh) of a synthesised day, written to `out_total_wh[24]`.
 * `occupancy` is NULL for the default curve or points to 24 weights.
 *
 * # Safety
 * `cat` must be a live catalog handle; `occupancy` NULL or 24 readable
 * doubles; `out_total_wh` must have room for 24 doubles.
 */
enum LcStatus lc_synth_household_day(const struct LcCatalog *cat,
                                     uint32_t season_id,
                                     const double *occupancy_weights,
                                     double *out_total_wh);

/**
 * Scale factor (measured / bottom-up) and relative gap for a measured monthly energy.
 *
 * # Safety
 * `cat` must be a live catalog handle; out pointers must be writable.
 */
enum LcStatus lc_reconcile_scale(const struct LcCatalog *cat,
                                 uint32_t season_id,
                                 uint32_t days_per_month,
                                 double measured_kwh_month,
                                 double *out_scale,
                                 double *out_gap);

/**
 * Hourly attribution of a measured day, with its composition, as JSON.
 *
 * # Safety
 * `cat` and `profile` must be live handles; `occupancy` NULL or 24 readable
 * doubles; `out` must be writable.
 */
enum LcStatus lc_disaggregate_json(const struct LcCatalog *cat,
                                   const struct LcProfile *profile,
                                   uint32_t season_id,
                                   const double *occupancy_weights,
                                   char **out);

/**
 * Parses a `timestamp,power_kw` CSV profile.
 *
 * # Safety
 * `data` must point to `len` readable bytes; `out` must be writable.
 */
enum LcStatus lc_profile_parse(const uint8_t *data,
                               size_t len,
                               uint32_t granularity,
                               struct LcProfile **out);

/**
 * Hourly profile on the given date from `n` kW values starting at midnight.
 *
 * # Safety
 * `values` must point to `n` readable doubles; `out` must be writable.
 */
enum LcStatus lc_profile_from_hourly(const double *values,
                                     size_t n,
                                     int32_t year,
                                     uint32_t month,
                                     uint32_t day,
                                     struct LcProfile **out);

/**
 * Releases a profile. NULL is ignored.
 *
 * # Safety
 * `p` must come from `lc_profile_*` and not have been freed.
 */
void lc_profile_free(struct LcProfile *p);

/**
 * Number of samples, 0 for NULL.
 *
 * # Safety
 * `p` must be NULL or a live profile handle.
 */
size_t lc_profile_len(const struct LcProfile *p);

/**
 * Writes every sample divided by the peak into `out_fractions` (capacity
 * `cap`, at least the profile length) and the peak in kW into `out_peak_kw`.
 *
 * # Safety
 * `p` must be a live profile handle; `out_fractions` must have room for `cap`
 * doubles; `out_peak_kw` must be writable or NULL.
 */
enum LcStatus lc_profile_normalize(const struct LcProfile *p,
                                   double *out_fractions,
                                   size_t cap,
                                   double *out_peak_kw);

/**
 * Mean power over peak power.
 *
 * # Safety
 * `p` must be a live profile handle; `out` must be writable.
 */
enum LcStatus lc_profile_peak_average_ratio(const struct LcProfile *p, double *out);

/**
 * Percentage change between two months (1 = January) of a monthly profile.
 *
 * # Safety
 * `p` must be a live profile handle; `out_pct` must be writable.
 */
enum LcStatus lc_profile_monthly_growth(const struct LcProfile *p,
                                        uint32_t from_month,
                                        uint32_t to_month,
                                        double *out_pct);

/**
 * Hours of maximum and minimum power of a single hourly day.
 *
 * # Safety
 * `p` must be a live profile handle; both out pointers must be writable.
 */
enum LcStatus lc_profile_daily_extrema(const struct LcProfile *p,
                                       uint32_t *out_peak_hour,
                                       uint32_t *out_trough_hour);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* LOADCOMP_H */
