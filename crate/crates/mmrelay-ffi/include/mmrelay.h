/* C interface to the mmrelay two-ray relay-rate library. */

#ifndef MMRELAY_H
#define MMRELAY_H

#include <stdarg.h>
#include <stdbool.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Status codes returned by every fallible call.
 */
typedef enum MmrelayStatus {
  MMRELAY_STATUS_OK = 0,
  MMRELAY_STATUS_NULL_POINTER = 1,
  MMRELAY_STATUS_INVALID_PARAMETER = 2,
  MMRELAY_STATUS_INVALID_GEOMETRY = 3,
  MMRELAY_STATUS_NUMERICAL_ERROR = 4,
  MMRELAY_STATUS_INTERNAL_ERROR = 5,
} MmrelayStatus;

/**
 * Opaque scenario handle.
 */
typedef struct MmrelayScenario MmrelayScenario;

/**
 * One scheme's operating point, C layout.
 */
typedef struct MmrelayRate {
  /**
   * Achievable rate, bits/s/Hz.
   */
  double rate;
  /**
   * Source transmit power, linear.
   */
  double xi1;
  /**
   * Relay transmit power, linear.
   */
  double xi2;
  /**
   * Source-slot time share.
   */
  double beta;
  /**
   * Effective SNR/SINR at the destination.
   */
  double snr;
  /**
   * Relay amplification coefficient; meaningful only when `has_amp` is 1.
   */
  double amp;
  /**
   * 1 when `amp` is meaningful (relaying schemes), 0 otherwise.
   */
  uint8_t has_amp;
  /**
   * 1 when the beamwidth sits outside the antenna model's fit range.
   */
  uint8_t out_of_range;
} MmrelayRate;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Copy the most recent error message of this thread into `buf` (NUL
 * terminated, truncated to `cap` bytes). Returns the full message length in
 * bytes, excluding the terminator; call with `cap == 0` to query the length.
 *
 * # Safety
 * `buf` must be NULL or point to at least `cap` writable bytes.
 */
uintptr_t mmrelay_last_error_message(char *buf, uintptr_t cap);

/**
 * Create a scenario from explicit parameters. `perpendicular` selects the
 * wave polarization (1 = perpendicular, 0 = horizontal). On success writes
 * a handle that must be released with [`mmrelay_scenario_free`].
 *
 * # Safety
 * `out` must be NULL or a valid pointer to a handle slot.
 */
enum MmrelayStatus mmrelay_scenario_create(double lambda,
                                           double height,
                                           double distance,
                                           double l1,
                                           double theta_m,
                                           double mu_db,
                                           double xi_db,
                                           double omega,
                                           uint8_t perpendicular,
                                           struct MmrelayScenario **out);

/**
 * Create the default scenario (5 mm wavelength, 5 m heights, 200 m span,
 * relay at 80 m, pi/6 beamwidth, -90 dB self-interference, 100 dB budget).
 *
 * # Safety
 * `out` must be NULL or a valid pointer to a handle slot.
 */
enum MmrelayStatus mmrelay_scenario_default(struct MmrelayScenario **out);

/**
 * Release a scenario handle. Passing NULL is a no-op.
 *
 * # Safety
 * `scenario` must be NULL or a handle obtained from this library that has
 * not been freed yet.
 */
void mmrelay_scenario_free(struct MmrelayScenario *scenario);

/**
 * Two-ray channel power gains of the source-relay, relay-destination and
 * source-destination links.
 *
 * # Safety
 * `scenario` must be a live handle from this library; out-pointers must be
 * NULL or valid for writes.
 */
enum MmrelayStatus mmrelay_channel_gains(const struct MmrelayScenario *scenario,
                                         double *g1,
                                         double *g2,
                                         double *g_direct);

/**
 * Direct source-destination transmission at full budget.
 *
 * # Safety
 * `scenario` must be a live handle from this library; `out` must be NULL or
 * valid for writes.
 */
enum MmrelayStatus mmrelay_rate_direct(const struct MmrelayScenario *scenario,
                                       struct MmrelayRate *out);

/**
 * Half-duplex relaying with equal slots and optimal power split.
 *
 * # Safety
 * See [`mmrelay_rate_direct`].
 */
enum MmrelayStatus mmrelay_rate_hd_equal_slot(const struct MmrelayScenario *scenario,
                                              struct MmrelayRate *out);

/**
 * Half-duplex relaying with jointly optimized time share and power split.
 *
 * # Safety
 * See [`mmrelay_rate_direct`].
 */
enum MmrelayStatus mmrelay_rate_hd_optimal(const struct MmrelayScenario *scenario,
                                           struct MmrelayRate *out);

/**
 * Full-duplex relaying with optimal power split at the scenario's
 * self-interference level.
 *
 * # Safety
 * See [`mmrelay_rate_direct`].
 */
enum MmrelayStatus mmrelay_rate_fd(const struct MmrelayScenario *scenario, struct MmrelayRate *out);

/**
 * Zero-self-interference upper limit of the full-duplex rate.
 *
 * # Safety
 * See [`mmrelay_rate_direct`].
 */
enum MmrelayStatus mmrelay_rate_fd_upper_limit(const struct MmrelayScenario *scenario,
                                               struct MmrelayRate *out);

/**
 * Self-interference penalty ratio (zero-interference SINR over actual).
 *
 * # Safety
 * `scenario` must be a live handle from this library; `out` must be NULL or
 * valid for writes.
 */
enum MmrelayStatus mmrelay_kappa(const struct MmrelayScenario *scenario, double *out);

/**
 * Directional antenna gain at orientation `phi` for a pattern of main-lobe
 * beamwidth `theta_m` (both radians).
 *
 * # Safety
 * `out` must be NULL or valid for writes.
 */
enum MmrelayStatus mmrelay_antenna_gain(double theta_m, double phi, double *out);

#ifdef __cplusplus
} // extern "C"
#endif // __cplusplus

#endif /* MMRELAY_H */
