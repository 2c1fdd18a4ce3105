#ifndef ORIENTED_ZCL_H
#define ORIENTED_ZCL_H

/* Generated by cbindgen from src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Result code of every call.
 */
typedef enum OzclStatus {
  OZCL_STATUS_OK = 0,
  OZCL_STATUS_NULL_POINTER = 1,
  OZCL_STATUS_UNSUPPORTED = 2,
  OZCL_STATUS_OUT_OF_RANGE = 3,
  OZCL_STATUS_BUFFER_TOO_SMALL = 4,
  OZCL_STATUS_INCONSISTENT = 5,
  OZCL_STATUS_CAPACITY_EXCEEDED = 6,
  OZCL_STATUS_INTERNAL = 7,
} OzclStatus;

/**
 * Opaque handle to a built ring `W_n`.
 */
typedef struct OzclRing OzclRing;

/**
 * The monomial `w2^b w3^c`.
 */
typedef struct OzclMonomial {
  uint32_t b;
  uint32_t c;
} OzclMonomial;

/**
 * Zero-divisor cup-length with one witness: `z(w2)^beta z(w3)^gamma` is nonzero
 * and its piece of left degree `r` contains `left (x) right`.
 */
typedef struct OzclZcl {
  uint32_t zcl;
  uint32_t beta;
  uint32_t gamma;
  uint64_t r;
  struct OzclMonomial left;
  struct OzclMonomial right;
} OzclZcl;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Static description of a status code; never null, never freed. Takes the raw
 * integer so that unknown codes are safe to pass.
 */
const char *ozcl_status_message(int32_t status);

/**
 * Builds `W_n` (`n >= 6`) and stores a new handle in `*out`.
 *
 * # Safety
 * `out` must be null or valid for writes.
 */
enum OzclStatus ozcl_ring_new(uint32_t n, struct OzclRing **out);

/**
 * Releases a handle; null is ignored.
 *
 * # Safety
 * `ring` must be null or a handle from [`ozcl_ring_new`] not yet freed.
 */
void ozcl_ring_free(struct OzclRing *ring);

/**
 * # Safety
 * `ring` must be a live handle or null; `out` must be null or valid for writes.
 */
enum OzclStatus ozcl_ring_n(const struct OzclRing *ring, uint32_t *out);

/**
 * Heights of `w2` and `w3`.
 *
 * # Safety
 * `ring` must be a live handle or null; out pointers must be null or valid for writes.
 */
enum OzclStatus ozcl_heights(const struct OzclRing *ring, uint32_t *h2, uint32_t *h3);

/**
 * Dimension of `W_n` over `Z2`.
 *
 * # Safety
 * `ring` must be a live handle or null; `out` must be null or valid for writes.
 */
enum OzclStatus ozcl_basis_dim(const struct OzclRing *ring, size_t *out);

/**
 * Whether `w2^b w3^c` is nonzero in `W_n`.
 *
 * # Safety
 * `ring` must be a live handle or null; `out` must be null or valid for writes.
 */
enum OzclStatus ozcl_class_nonzero(const struct OzclRing *ring, uint32_t b, uint32_t c, bool *out);

/**
 * Normal form of `w2^b w3^c`, written as basis monomials in decreasing lex order.
 *
 * `*len` always receives the number of terms. If it exceeds `capacity`, nothing
 * is written to `terms` and `BUFFER_TOO_SMALL` is returned; `terms` may be null
 * when `capacity` is zero.
 *
 * # Safety
 * `ring` must be a live handle or null; `terms` must be valid for `capacity`
 * writes; `len` must be null or valid for writes.
 */
enum OzclStatus ozcl_nf_monomial(const struct OzclRing *ring,
                                 uint32_t b,
                                 uint32_t c,
                                 struct OzclMonomial *terms,
                                 size_t capacity,
                                 size_t *len);

/**
 * Zero-divisor cup-length of the ring, by search.
 *
 * # Safety
 * `ring` must be a live handle or null; `out` must be null or valid for writes.
 */
enum OzclStatus ozcl_zcl(const struct OzclRing *ring, struct OzclZcl *out);

/**
 * Tabulated (`6 <= n <= 14`) or closed-form (`n >= 15`) zero-divisor cup-length.
 *
 * # Safety
 * `out` must be null or valid for writes.
 */
enum OzclStatus ozcl_zcl_closed_form(uint32_t n, uint32_t *out);

/**
 * Canonical rendering of `g_r`, e.g. `"w2^3 + w3^2"`. Free with [`ozcl_string_free`].
 *
 * # Safety
 * `out` must be null or valid for writes.
 */
enum OzclStatus ozcl_g_render(uint32_t r, char **out);

/**
 * Releases a string returned by this library; null is ignored.
 *
 * # Safety
 * `s` must be null or a pointer returned by this library and not yet freed.
 */
void ozcl_string_free(char *s);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* ORIENTED_ZCL_H */
