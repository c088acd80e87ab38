/* SPDX-License-Identifier: Apache-2.0 */

#ifndef TQSF_H
#define TQSF_H

/* Generated by cbindgen from src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Result code of every fallible call.
 */
typedef enum TqsfStatus {
  TQSF_STATUS_OK = 0,
  /**
   * A required pointer argument was null.
   */
  TQSF_STATUS_NULL_POINTER = 1,
  /**
   * Arguments violate the operation's preconditions, including out-of-range indices.
   */
  TQSF_STATUS_INVALID_INPUT = 2,
  /**
   * The circuit does not fit the simulator's qubit limit.
   */
  TQSF_STATUS_CAPACITY = 3,
  /**
   * Register sizes cannot resolve the operator spectrum.
   */
  TQSF_STATUS_CONFIGURATION = 4,
  /**
   * A register reading matches no attainable eigenvalue.
   */
  TQSF_STATUS_DECODE = 5,
  /**
   * Numerical breakdown inside the library.
   */
  TQSF_STATUS_INTERNAL = 6,
  /**
   * A Rust panic was caught at the boundary.
   */
  TQSF_STATUS_PANIC = 7,
} TqsfStatus;

/**
 * Phase-estimation register kind for [`tqsf_min_ancillas`].
 */
typedef enum TqsfAncillaKind {
  TQSF_ANCILLA_KIND_NUMBER = 0,
  TQSF_ANCILLA_KIND_SPIN_EVEN = 1,
  TQSF_ANCILLA_KIND_SPIN_ODD = 2,
  TQSF_ANCILLA_KIND_COUPLING = 3,
} TqsfAncillaKind;

/**
 * Named initial states.
 */
typedef enum TqsfPreset {
  /**
   * |+⟩ on every qubit.
   */
  TQSF_PRESET_HADAMARD = 0,
  /**
   * H on every qubit after X on qubits 1 and 3 (needs at least 4 qubits).
   */
  TQSF_PRESET_HADAMARD_X13 = 1,
} TqsfPreset;

/**
 * Filtering circuit selector.
 */
typedef enum TqsfMethod {
  TQSF_METHOD_A = 0,
  /**
   * Path registers read S²_[j].
   */
  TQSF_METHOD_B_SPIN_SQUARED = 1,
  /**
   * Path registers read H_[j].
   */
  TQSF_METHOD_B_COUPLING = 2,
  /**
   * Sequential Hadamard tests; the run holds the exact distribution over feedback paths.
   */
  TQSF_METHOD_C = 3,
  TQSF_METHOD_C_DEFERRED = 4,
} TqsfMethod;

/**
 * Opaque filtering result.
 */
typedef struct TqsfRun TqsfRun;

/**
 * Opaque state vector.
 */
typedef struct TqsfState TqsfState;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Library version as a static NUL-terminated string.
 */
const char *tqsf_version(void);

/**
 * Message of the last failed call on this thread, or null if none.
 *
 * The pointer stays valid until the next failing call on the same thread.
 */
const char *tqsf_last_error(void);

/**
 * Dimension of each (S, M) eigenspace on `n` qubits, with `two_s` = 2S.
 *
 * # Safety
 * `out` must be null or valid for a write.
 */
enum TqsfStatus tqsf_degeneracy(size_t n, uint32_t two_s, uint64_t *out);

/**
 * Smallest phase register that resolves the spectrum of the given kind.
 *
 * `n` is the qubit count, or the prefix length j for [`TqsfAncillaKind::Coupling`].
 *
 * # Safety
 * `out` must be null or valid for a write.
 */
enum TqsfStatus tqsf_min_ancillas(enum TqsfAncillaKind kind, size_t n, size_t *out);

/**
 * Builds a named initial state on `n` qubits.
 *
 * # Safety
 * `out` must be null or valid for a write. The handle is released with [`tqsf_state_free`].
 */
enum TqsfStatus tqsf_state_preset(size_t n, enum TqsfPreset preset, struct TqsfState **out);

/**
 * Builds a basis state from a 0/1 string, most significant qubit first.
 *
 * # Safety
 * `bits` must be null or a NUL-terminated string; `out` must be null or valid for a write.
 */
enum TqsfStatus tqsf_state_from_bits(const char *bits, struct TqsfState **out);

/**
 * Builds a state from `len` amplitudes and normalizes it. `imag` may be null for a real state.
 *
 * # Safety
 * `real` (and `imag` if non-null) must be valid for `len` reads; `out` must be valid for a write.
 */
enum TqsfStatus tqsf_state_from_amplitudes(const double *real,
                                           const double *imag,
                                           size_t len,
                                           struct TqsfState **out);

/**
 * Releases a state handle. Null is ignored.
 *
 * # Safety
 * `state` must be null or a handle from this library that has not been freed.
 */
void tqsf_state_free(struct TqsfState *state);

/**
 * Number of qubits of a state.
 *
 * # Safety
 * `state` must be a live handle or null; `out` must be null or valid for a write.
 */
enum TqsfStatus tqsf_state_num_qubits(const struct TqsfState *state, size_t *out);

/**
 * Copies the 2^n amplitudes into `real` and `imag`, each of capacity `len`.
 *
 * # Safety
 * `state` must be a live handle; `real` and `imag` must be valid for `len` writes.
 */
enum TqsfStatus tqsf_state_amplitudes(const struct TqsfState *state,
                                      double *real,
                                      double *imag,
                                      size_t len);

/**
 * Filters `state` with `method`. `trotter_steps` = 0 selects exact evolution.
 *
 * # Safety
 * `state` must be a live handle; `out` must be valid for a write. The run is released with
 * [`tqsf_run_free`].
 */
enum TqsfStatus tqsf_run(const struct TqsfState *state,
                         enum TqsfMethod method,
                         size_t trotter_steps,
                         struct TqsfRun **out);

/**
 * Releases a run handle. Null is ignored.
 *
 * # Safety
 * `run` must be null or a handle from this library that has not been freed.
 */
void tqsf_run_free(struct TqsfRun *run);

/**
 * Number of decoded outcomes, sorted by descending S, then M, then path.
 *
 * # Safety
 * `run` must be a live handle; `out` must be valid for a write.
 */
enum TqsfStatus tqsf_run_outcome_count(const struct TqsfRun *run, size_t *out);

/**
 * Total probability of register readings that decode to no label (Trotter leakage).
 *
 * # Safety
 * `run` must be a live handle; `out` must be valid for a write.
 */
enum TqsfStatus tqsf_run_unresolved_probability(const struct TqsfRun *run, double *out);

/**
 * Born probability of outcome `index`.
 *
 * # Safety
 * `run` must be a live handle; `out` must be valid for a write.
 */
enum TqsfStatus tqsf_run_outcome_probability(const struct TqsfRun *run, size_t index, double *out);

/**
 * Final 2S of outcome `index`, and 2M when the method reads it (`has_m` reports which).
 *
 * # Safety
 * `run` must be a live handle; the out-pointers must be valid for writes.
 */
enum TqsfStatus tqsf_run_outcome_spin(const struct TqsfRun *run,
                                      size_t index,
                                      uint32_t *two_s,
                                      int32_t *two_m,
                                      bool *has_m);

/**
 * Writes the text label of outcome `index` into `buf` (capacity `cap`, NUL included).
 *
 * `needed` receives the full length including the NUL, so a call with `cap` = 0 sizes the buffer.
 * A buffer that is too small is an invalid-input error and is left untouched.
 *
 * # Safety
 * `run` must be a live handle; `buf` must be valid for `cap` writes (or null when `cap` = 0);
 * `needed` must be null or valid for a write.
 */
enum TqsfStatus tqsf_run_outcome_label(const struct TqsfRun *run,
                                       size_t index,
                                       char *buf,
                                       size_t cap,
                                       size_t *needed);

/**
 * Copy of the collapsed system state of outcome `index`.
 *
 * # Safety
 * `run` must be a live handle; `out` must be valid for a write. Free with [`tqsf_state_free`].
 */
enum TqsfStatus tqsf_run_outcome_post_state(const struct TqsfRun *run,
                                            size_t index,
                                            struct TqsfState **out);

/**
 * Draws `shots` samples from the run distribution with a seeded generator.
 *
 * `counts[i]` receives the count of outcome i; `len` must be at least the outcome count.
 * `unresolved` (nullable) receives the count of undecodable readings.
 *
 * # Safety
 * `run` must be a live handle; `counts` must be valid for `len` writes.
 */
enum TqsfStatus tqsf_run_sample(const struct TqsfRun *run,
                                uint64_t shots,
                                uint64_t seed,
                                uint64_t *counts,
                                size_t len,
                                uint64_t *unresolved);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* TQSF_H */
