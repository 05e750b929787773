#ifndef GEOQKD_H
#define GEOQKD_H

/* Generated by cbindgen from the geoqkd-ffi crate; do not edit by hand. */

#include <stdarg.h>
#include <stdbool.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Eavesdropper selection for [`gq_bb84_run`].
 */
typedef enum GqEveMode {
  /**
   * No eavesdropper on the channel.
   */
  GQ_EVE_NONE = 0,
  /**
   * Intercept-resend, always measuring in the computational basis.
   */
  GQ_EVE_INTERCEPT_Z = 1,
  /**
   * Intercept-resend, always measuring in the conjugate basis.
   */
  GQ_EVE_INTERCEPT_X = 2,
  /**
   * Intercept-resend with a uniformly random basis per round.
   */
  GQ_EVE_INTERCEPT_RANDOM = 3,
} GqEveMode;

/**
 * Status codes returned by every fallible entry point.
 */
typedef enum GqStatus {
  /**
   * The call succeeded.
   */
  GQ_STATUS_OK = 0,
  /**
   * A required pointer argument was null.
   */
  GQ_STATUS_NULL_POINTER = 1,
  /**
   * An argument failed validation (window bounds, thresholds, modes).
   */
  GQ_STATUS_INVALID_ARGUMENT = 2,
  /**
   * A JSON payload could not be parsed.
   */
  GQ_STATUS_PARSE_ERROR = 3,
  /**
   * The keyed decoder produced only erasures.
   */
  GQ_STATUS_UNDECODABLE = 4,
  /**
   * An output buffer was too small; required size is in the length
   * out-param.
   */
  GQ_STATUS_BUFFER_TOO_SMALL = 5,
  /**
   * The built-in invariant suite reported a failure.
   */
  GQ_STATUS_SELFCHECK_FAILED = 6,
} GqStatus;

/**
 * Opaque secret-key handle.
 */
typedef struct GqKey GqKey;

/**
 * Opaque trajectory handle.
 */
typedef struct GqTrajectory GqTrajectory;

/**
 * Public encoder parameters; obtain defaults from
 * [`gq_encoder_config_default`].
 */
typedef struct GqEncoderConfig {
  /**
   * Angular step (radians), must be positive.
   */
  double delta;
  /**
   * Public start index.
   */
  int64_t j0;
  /**
   * Inclusive lower window bound.
   */
  int64_t j_min;
  /**
   * Inclusive upper window bound.
   */
  int64_t j_max;
} GqEncoderConfig;

/**
 * Aggregated counters from one protocol run.
 */
typedef struct GqBb84Stats {
  uint64_t n_rounds;
  uint64_t n_sifted;
  uint64_t n_errors;
  double qber;
  double sift_rate;
} GqBb84Stats;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message describing the most recent failure on this thread, or null if
 * none has occurred. The pointer stays valid until the next failing call
 * on the same thread.
 */
const char *gq_last_error(void);

/**
 * Releases a string returned through a `char **` out-param.
 *
 * # Safety
 * `s` must be a pointer previously returned by this library, or null.
 */
void gq_string_free(char *s);

/**
 * The default encoder window (delta = pi/16, walk on [1, 7] starting
 * at 4).
 */
struct GqEncoderConfig gq_encoder_config_default(void);

/**
 * Releases a trajectory handle (null is a no-op).
 *
 * # Safety
 * `t` must come from this library and must not be used afterwards.
 */
void gq_trajectory_free(struct GqTrajectory *t);

/**
 * Releases a key handle (null is a no-op).
 *
 * # Safety
 * `k` must come from this library and must not be used afterwards.
 */
void gq_key_free(struct GqKey *k);

/**
 * Creates the keyed functional with twist angle `theta`.
 *
 * # Safety
 * `out` must be a valid pointer.
 */
enum GqStatus gq_key_twisted_global(double theta, struct GqKey **out);

/**
 * Creates the unkeyed (trivial-leaf) functional.
 *
 * # Safety
 * `out` must be a valid pointer.
 */
enum GqStatus gq_key_standard_vn(struct GqKey **out);

/**
 * Parses a key from its JSON wire form.
 *
 * # Safety
 * `json` must be a valid NUL-terminated string and `out` a valid pointer.
 */
enum GqStatus gq_key_from_json(const char *json, struct GqKey **out);

/**
 * Encodes `len` bits (each 0 or 1) into a trajectory.
 *
 * # Safety
 * `bits` must point to `len` readable bytes and `out` must be valid.
 */
enum GqStatus gq_encode(const uint8_t *bits,
                        uintptr_t len,
                        struct GqEncoderConfig config,
                        struct GqTrajectory **out);

/**
 * Parses a trajectory from its JSON wire form.
 *
 * # Safety
 * `json` must be a valid NUL-terminated string and `out` a valid pointer.
 */
enum GqStatus gq_trajectory_from_json(const char *json, struct GqTrajectory **out);

/**
 * Serializes a trajectory to JSON; release the string with
 * [`gq_string_free`].
 *
 * # Safety
 * `t` must be a live trajectory handle and `out` a valid pointer.
 */
enum GqStatus gq_trajectory_to_json(const struct GqTrajectory *t, char **out);

/**
 * Number of steps (states minus one) in a trajectory; zero for a null
 * handle.
 *
 * # Safety
 * `t` must be a live trajectory handle or null.
 */
uintptr_t gq_trajectory_steps(const struct GqTrajectory *t);

/**
 * Public index decoder. Writes up to `cap` bits into `out_bits` and the
 * message length into `out_len`. If `cap` is too small, returns
 * `GQ_STATUS_BUFFER_TOO_SMALL` with the required size in `out_len`.
 *
 * # Safety
 * `t` must be a live trajectory handle; `out_bits` must hold `cap` bytes;
 * `out_len` must be valid.
 */
enum GqStatus gq_decode_index(const struct GqTrajectory *t,
                              struct GqEncoderConfig config,
                              uint8_t *out_bits,
                              uintptr_t cap,
                              uintptr_t *out_len);

/**
 * Keyed profile decoder. Each output symbol is 0, 1, or -1 for an
 * erasure. Thresholds follow the classifier defaults when
 * `eps_tan`/`eps_norm` are 0.
 *
 * # Safety
 * `t` and `key` must be live handles; `out_symbols` must hold `cap`
 * bytes; `out_len` must be valid.
 */
enum GqStatus gq_decode_profile(const struct GqTrajectory *t,
                                const struct GqKey *key,
                                double eps_tan,
                                double eps_norm,
                                int8_t *out_symbols,
                                uintptr_t cap,
                                uintptr_t *out_len);

/**
 * Runs the BB84 simulation; identical seeds yield identical statistics.
 *
 * # Safety
 * `out` must be a valid pointer.
 */
enum GqStatus gq_bb84_run(uint64_t rounds,
                          enum GqEveMode eve,
                          uint64_t seed,
                          struct GqBb84Stats *out);

/**
 * Runs the built-in invariant suite with the default finite-difference
 * step.
 */
enum GqStatus gq_selfcheck(uint64_t seed);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* GEOQKD_H */
