#ifndef HARVEST_H
#define HARVEST_H

/* Generated by cbindgen. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum HarvestStatus {
  HARVEST_STATUS_OK = 0,
  HARVEST_STATUS_NULL_POINTER = 1,
  HARVEST_STATUS_INVALID_PARAMETER = 2,
  HARVEST_STATUS_DOMAIN_EXCEEDED = 3,
  HARVEST_STATUS_OVERFLOW = 4,
  HARVEST_STATUS_NON_CONVERGENCE = 5,
  HARVEST_STATUS_EXTRAPOLATION_DIVERGENCE = 6,
  HARVEST_STATUS_DEGENERATE_GEOMETRY = 7,
  HARVEST_STATUS_POSITIVITY_VIOLATION = 8,
  HARVEST_STATUS_INVALID_STATE = 9,
  HARVEST_STATUS_RANGE = 10,
  HARVEST_STATUS_DEGENERATE_VARIANCE = 11,
  HARVEST_STATUS_CONFIG = 12,
  HARVEST_STATUS_PANIC = 13,
} HarvestStatus;

typedef enum HarvestTopology {
  HARVEST_TOPOLOGY_MINKOWSKI = 0,
  HARVEST_TOPOLOGY_CYLINDER = 1,
  HARVEST_TOPOLOGY_TWISTED = 2,
} HarvestTopology;

typedef enum HarvestElement {
  HARVEST_ELEMENT_A = 0,
  HARVEST_ELEMENT_X = 1,
  HARVEST_ELEMENT_C = 2,
} HarvestElement;

/**
 * Opaque handle.
 */
typedef struct HarvestSetup HarvestSetup;

/**
 * Matrix elements per `eps0^2` plus image-sum diagnostics.
 */
typedef struct HarvestElements {
  double a;
  double b;
  double x_re;
  double x_im;
  double c_re;
  double c_im;
  double e;
  double tail_estimate;
  int truncation_warning;
} HarvestElements;

/**
 * Entanglement measures in physical units. `corr` is NaN when undefined.
 */
typedef struct HarvestReport {
  double negativity;
  double concurrence;
  double eof;
  double corr;
  double concurrence_leading;
  int harvested;
} HarvestReport;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Creates a Minkowski setup with B a distance `sigma` from A along x.
 *
 * # Safety
 * `out` must be null or valid for writes.
 */
enum HarvestStatus harvest_setup_new(double omega,
                                     double sigma,
                                     double eps0,
                                     struct HarvestSetup **out);

/**
 * # Safety
 * `setup` must be null or come from [`harvest_setup_new`] and not be freed yet.
 */
void harvest_setup_free(struct HarvestSetup *setup);

/**
 * `ell` is ignored for Minkowski; `eta` is +1 or -1.
 *
 * # Safety
 * `setup` must be a live handle or null.
 */
enum HarvestStatus harvest_setup_set_topology(struct HarvestSetup *setup,
                                              enum HarvestTopology kind,
                                              double ell,
                                              int eta);

/**
 * Places A at `(ax, ay, az)` and B at `(bx, by, bz)`; `z` is the compact direction.
 *
 * # Safety
 * `setup` must be a live handle or null.
 */
enum HarvestStatus harvest_setup_set_positions(struct HarvestSetup *setup,
                                               double ax,
                                               double ay,
                                               double az,
                                               double bx,
                                               double by,
                                               double bz);

/**
 * A at the origin, B at `(l cos theta, 0, l sin theta)`.
 *
 * # Safety
 * `setup` must be a live handle or null.
 */
enum HarvestStatus harvest_setup_set_orientation(struct HarvestSetup *setup,
                                                 double l,
                                                 double theta);

/**
 * # Safety
 * `setup` must be a live handle or null.
 */
enum HarvestStatus harvest_setup_set_nmax(struct HarvestSetup *setup, size_t nmax);

/**
 * # Safety
 * `setup` must be a live handle or null; `out` must be null or valid for writes.
 */
enum HarvestStatus harvest_elements(const struct HarvestSetup *setup, struct HarvestElements *out);

/**
 * # Safety
 * `setup` must be a live handle or null; `out` must be null or valid for writes.
 */
enum HarvestStatus harvest_report(const struct HarvestSetup *setup, struct HarvestReport *out);

/**
 * Quadrature value of one element at image distance `l_image`, per `eps0^2`.
 *
 * # Safety
 * `setup` must be a live handle or null; `re` and `im` must be null or valid for writes.
 */
enum HarvestStatus harvest_oracle(const struct HarvestSetup *setup,
                                  enum HarvestElement element,
                                  double l_image,
                                  double *re,
                                  double *im);

/**
 * Complex error function.
 *
 * # Safety
 * `re_out` and `im_out` must be null or valid for writes.
 */
enum HarvestStatus harvest_erf(double re, double im, double *re_out, double *im_out);

/**
 * Faddeeva function `w(z) = exp(-z^2) erfc(-iz)`.
 *
 * # Safety
 * `re_out` and `im_out` must be null or valid for writes.
 */
enum HarvestStatus harvest_faddeeva(double re, double im, double *re_out, double *im_out);

/**
 * Bytes needed for the last error message on this thread, including the
 * terminating NUL; 0 when there is none.
 */
size_t harvest_last_error_length(void);

/**
 * Copies the last error message into `buf`, truncating to `len - 1` bytes
 * and NUL-terminating. Returns the number of bytes written without the NUL.
 *
 * # Safety
 * `buf` must be null or valid for `len` bytes of writes.
 */
size_t harvest_last_error_message(char *buf, size_t len);

/**
 * NUL-terminated library version.
 */
const char *harvest_version(void);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* HARVEST_H */
