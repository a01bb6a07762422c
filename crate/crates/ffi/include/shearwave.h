#ifndef SHEARWAVE_H
#define SHEARWAVE_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum SwStatus {
  SW_STATUS_OK = 0,
  SW_STATUS_NULL_POINTER = 1,
  SW_STATUS_INVALID_UTF8 = 2,
  SW_STATUS_PARSE = 3,
  SW_STATUS_IO = 4,
  SW_STATUS_CONFIG = 5,
  SW_STATUS_DOMAIN = 6,
  SW_STATUS_MODEL = 7,
  SW_STATUS_BUFFER_TOO_SMALL = 8,
  SW_STATUS_PANIC = 9,
} SwStatus;

/*
 A fitted predictor loaded from a model file.
 */
typedef struct SwModel SwModel;

/*
 A parsed well log.
 */
typedef struct SwWellLog SwWellLog;

typedef struct SwElasticModuli {
  double youngs;
  double bulk;
  double shear;
  double compressibility;
  double poisson;
  double constrained;
  double lame_lambda;
} SwElasticModuli;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/*
 Message for the last failed call on this thread, or null. The pointer
 stays valid until the next library call on the same thread.
 */
const char *sw_last_error(void);

/*
 Library version as a static NUL-terminated string.
 */
const char *sw_version(void);

/*
 Parses LAS 2.0 text from memory.

 # Safety
 `data` must point to `len` readable bytes; `out` must be writable.
 */
enum SwStatus sw_well_log_parse_las(const uint8_t *data, size_t len, struct SwWellLog **out);

/*
 Reads a LAS or CSV file (by extension). CSV depth comes from the
 `DEPTH` column.

 # Safety
 `path` must be a NUL-terminated string; `out` must be writable.
 */
enum SwStatus sw_well_log_read(const char *path, struct SwWellLog **out);

/*
 # Safety
 `log` must come from this library and not be used afterwards. Null is
 ignored.
 */
void sw_well_log_free(struct SwWellLog *log);

/*
 # Safety
 `log` must be a live handle; `rows` and `curves` must be writable.
 */
enum SwStatus sw_well_log_shape(const struct SwWellLog *log, size_t *rows, size_t *curves);

/*
 Copies the depth index.

 # Safety
 `log` must be a live handle; `out` null or writable for `cap` values.
 */
enum SwStatus sw_well_log_depth(const struct SwWellLog *log,
                                double *out,
                                size_t cap,
                                size_t *len_out);

/*
 Copies one curve's samples (NaN where missing). Mnemonic lookup is
 case-insensitive and knows NPHI/NPFI as aliases.

 # Safety
 `log` must be a live handle; `mnemonic` NUL-terminated; `out` null or
 writable for `cap` values.
 */
enum SwStatus sw_well_log_curve(const struct SwWellLog *log,
                                const char *mnemonic,
                                double *out,
                                size_t cap,
                                size_t *len_out);

/*
 Writes the mnemonic of curve `index` as a NUL-terminated string.
 `*len_out` receives the byte count including the terminator.

 # Safety
 `log` must be a live handle; `buf` null or writable for `cap` bytes.
 */
enum SwStatus sw_well_log_curve_name(const struct SwWellLog *log,
                                     size_t index,
                                     char *buf,
                                     size_t cap,
                                     size_t *len_out);

/*
 Loads a model file written by `shearwave run`.

 # Safety
 `path` must be NUL-terminated; `out` must be writable.
 */
enum SwStatus sw_model_load(const char *path, struct SwModel **out);

/*
 Same as [`sw_model_load`] from JSON text in memory.

 # Safety
 `json` must be NUL-terminated; `out` must be writable.
 */
enum SwStatus sw_model_from_json(const char *json, struct SwModel **out);

/*
 # Safety
 `model` must come from this library and not be used afterwards. Null is
 ignored.
 */
void sw_model_free(struct SwModel *model);

/*
 # Safety
 `model` must be a live handle; `out` writable.
 */
enum SwStatus sw_model_feature_count(const struct SwModel *model, size_t *out);

/*
 Predicts Vs (km/s) for `n_rows` rows of raw inputs, row-major, with
 `n_cols` equal to the model's feature count in file order.

 # Safety
 `x` readable for `n_rows * n_cols` values; `out` writable for `n_rows`.
 */
enum SwStatus sw_model_predict_rows(const struct SwModel *model,
                                    const double *x,
                                    size_t n_rows,
                                    size_t n_cols,
                                    double *out);

/*
 Predicts Vs for every row of a well after unit normalization and the
 default range screens, as `shearwave predict` does. Rows with a missing
 input get NaN.

 # Safety
 Handles must be live; `out` null or writable for `cap` values.
 */
enum SwStatus sw_model_predict_log(const struct SwModel *model,
                                   const struct SwWellLog *log,
                                   double *out,
                                   size_t cap,
                                   size_t *len_out);

/*
 Compressional velocity (km/s) from sonic transit time (µs/ft).

 # Safety
 `out` must be writable.
 */
enum SwStatus sw_vp_from_dt(double dt, double *out);

/*
 Castagna shear velocity (km/s) with the default coefficients. May be
 non-positive for slow rocks.
 */
double sw_castagna_vs(double vp);

/*
 Dynamic moduli (psi) from vp, vs (ft/µs) and bulk density (g/cc).

 # Safety
 `out` must be writable.
 */
enum SwStatus sw_elastic_moduli(double vp, double vs, double rho, struct SwElasticModuli *out);

/*
 # Safety
 `actual` and `predicted` readable for `n` values; `out` writable.
 */
enum SwStatus sw_r_squared(const double *actual, const double *predicted, size_t n, double *out);

/*
 Average absolute percent relative error.

 # Safety
 `actual` and `predicted` readable for `n` values; `out` writable.
 */
enum SwStatus sw_aapre(const double *actual, const double *predicted, size_t n, double *out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* SHEARWAVE_H */
