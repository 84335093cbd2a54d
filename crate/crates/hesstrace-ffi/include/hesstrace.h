#ifndef HESSTRACE_H
#define HESSTRACE_H

#pragma once

/* Generated by cbindgen from the hesstrace-ffi crate; do not edit by hand. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Status codes for every exported call.
 */
enum HtStatus
#if defined(__cplusplus) || __STDC_VERSION__ >= 202311L
  : int32_t
#endif // defined(__cplusplus) || __STDC_VERSION__ >= 202311L
 {
  HtStatus_Ok = 0,
  /**
   * Invalid field parameters (non-prime p, p < 5, bad degree, cap).
   */
  HtStatus_BadField = 1,
  /**
   * The field has no cubic character (q ≢ 1 mod 3).
   */
  HtStatus_NoCubicCharacter = 2,
  /**
   * An integer lift fell outside the Hasse window.
   */
  HtStatus_LiftOutOfRange = 3,
  /**
   * The requested fiber is singular (λ³ = 27).
   */
  HtStatus_SingularCurve = 4,
  /**
   * An argument is out of range for the operation.
   */
  HtStatus_BadArgument = 5,
  /**
   * A result does not fit the 64-bit out-parameters.
   */
  HtStatus_Overflow = 6,
  /**
   * A null pointer was passed where a value is required.
   */
  HtStatus_NullPointer = 7,
  /**
   * Unexpected internal failure.
   */
  HtStatus_Internal = 8,
};
#ifndef __cplusplus
#if __STDC_VERSION__ >= 202311L
typedef enum HtStatus HtStatus;
#else
typedef int32_t HtStatus;
#endif // __STDC_VERSION__ >= 202311L
#endif // __cplusplus

/**
 * Opaque finite-field context. Create with ht_field_new, release with
 * ht_field_free.
 */
typedef struct HtField HtField;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Build a field context for q = p^r. On success writes a handle the
 * caller must release with ht_field_free.
 */
HtStatus ht_field_new(uint64_t p, uint32_t r, struct HtField **out);

void ht_field_free(struct HtField *field);

/**
 * Field order q (0 for a null handle).
 */
uint32_t ht_field_order(const struct HtField *field);

/**
 * The integer lift n(λ) = q·₂F₁(λ). Requires 3 | q−1.
 */
HtStatus ht_hess_2f1(const struct HtField *field, uint32_t lam, int64_t *out);

/**
 * Fill buf with all q lifts n(0), …, n(q−1). len must be at least q.
 */
HtStatus ht_hess_2f1_all(const struct HtField *field, int64_t *buf, size_t len);

/**
 * Frobenius trace of the Hessian fiber x³+y³+1 = λxy.
 */
HtStatus ht_trace(const struct HtField *field, uint32_t lam, int64_t *out);

/**
 * Hurwitz class number H(d) as a (num, den) pair; 0/1 off the admissible
 * discriminants, −1/12 at d = 0.
 */
HtStatus ht_hurwitz_h(int64_t d, int64_t *num, int64_t *den);

/**
 * Unit-weighted Hurwitz class number H*(d) as a (num, den) pair.
 */
HtStatus ht_hurwitz_h_star(int64_t d, int64_t *num, int64_t *den);

/**
 * CDF of the semicircle law, defined on [−2, 2].
 */
HtStatus ht_semicircle_cdf(double t, double *out);

/**
 * Library version as a static NUL-terminated string.
 */
const char *ht_version(void);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* HESSTRACE_H */
