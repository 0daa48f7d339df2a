#ifndef QRING_H
#define QRING_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum QrParity {
  QR_PARITY_CE = 0,
  QR_PARITY_SE = 1,
} QrParity;

/**
 * Result code of every call.
 */
typedef enum QrStatus {
  QR_STATUS_OK = 0,
  QR_STATUS_NULL_POINTER = 1,
  QR_STATUS_INVALID_ARGUMENT = 2,
  QR_STATUS_DOMAIN = 3,
  QR_STATUS_SUPERCRITICAL = 4,
  QR_STATUS_CONVERGENCE = 5,
  QR_STATUS_EVALUATION = 6,
  QR_STATUS_PANIC = 7,
} QrStatus;

/**
 * A configured Hamiltonian.
 */
typedef struct QrSystem QrSystem;

/**
 * A normalised eigenfunction.
 */
typedef struct QrWave QrWave;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Library version as a static NUL-terminated string.
 */
const char *qr_version(void);

/**
 * Message for the last failed call on this thread ("" after success).
 * Valid until the next call on the same thread.
 */
const char *qr_last_error_message(void);

/**
 * H = −∇²/2μ + A r² + B/r² + C + D_θ cos θ / r² with flux ratio δ.
 */
enum QrStatus qr_system_new(double a,
                            double b,
                            double c,
                            double d_theta,
                            double mu,
                            double delta,
                            struct QrSystem **out_system);

/**
 * Ring built from a built-in material with dipole `dipole` (a.u.).
 */
enum QrStatus qr_system_from_material(const char *material,
                                      double dipole,
                                      double delta,
                                      struct QrSystem **out_system);

/**
 * Releases a system. Null is ignored.
 *
 * # Safety
 * `system` must come from a `qr_system_*` constructor and not be used again.
 */
void qr_system_free(struct QrSystem *system);

/**
 * Energy in hartree of state (n_r, m, parity) at the system's flux.
 *
 * # Safety
 * `system` must be a live handle or null.
 */
enum QrStatus qr_system_energy(const struct QrSystem *system,
                               uint32_t n_r,
                               uint32_t m,
                               enum QrParity parity,
                               double *out_energy);

/**
 * a_{2m}(q) or b_{2m}(q).
 */
enum QrStatus qr_char_value(uint32_t m, enum QrParity parity, double q, double *out_value);

/**
 * Floquet characteristic value λ_ν(q).
 */
enum QrStatus qr_char_value_fractional(double nu, double q, double *out_value);

/**
 * Dipole correction in units of ħω₀ for a built-in material.
 */
enum QrStatus qr_correction(const char *material,
                            uint32_t m,
                            enum QrParity parity,
                            double dipole,
                            double *out_value);

/**
 * Transition (n_r, m_hi) → (n_r, m_lo) in units of ħω₀; the relative shift
 * is a fraction, not a percentage. An m_lo = 0 partner is always ce.
 */
enum QrStatus qr_transition(const char *material,
                            uint32_t n_r,
                            uint32_t m_hi,
                            uint32_t m_lo,
                            enum QrParity parity,
                            double dipole,
                            double *out_with_dipole,
                            double *out_without_dipole,
                            double *out_relative_shift);

/**
 * λ_eff(δ) − λ_eff(0) in units of ħω₀.
 */
enum QrStatus qr_ab_correction(const char *material,
                               uint32_t m,
                               enum QrParity parity,
                               double delta,
                               double dipole,
                               double *out_value);

/**
 * Normalised eigenfunction of a system.
 *
 * # Safety
 * `system` must be a live handle or null.
 */
enum QrStatus qr_wave_new(const struct QrSystem *system,
                          uint32_t n_r,
                          uint32_t m,
                          enum QrParity parity,
                          struct QrWave **out_wave);

/**
 * ψ(r, θ) split into real and imaginary parts.
 *
 * # Safety
 * `wave` must be a live handle or null.
 */
enum QrStatus qr_wave_psi(const struct QrWave *wave,
                          double r,
                          double theta,
                          double *out_re,
                          double *out_im);

/**
 * Releases a wavefunction. Null is ignored.
 *
 * # Safety
 * `wave` must come from `qr_wave_new` and not be used again.
 */
void qr_wave_free(struct QrWave *wave);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* QRING_H */
