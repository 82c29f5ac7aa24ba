#ifndef TORUS_ECH_H
#define TORUS_ECH_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum {
  ECH_STATUS_OK = 0,
  ECH_STATUS_NULL_POINTER = 1,
  ECH_STATUS_INVALID_PARAMETER = 2,
  ECH_STATUS_REJECTED_INPUT = 3,
  ECH_STATUS_OUT_OF_RANGE = 4,
  /**
   * The exact result does not fit the fixed-width output type.
   */
  ECH_STATUS_OVERFLOW = 5,
  ECH_STATUS_VERIFICATION_FAILED = 6,
  ECH_STATUS_INTERNAL = 7,
} EchStatus;

typedef enum {
  ECH_ROT_MODE_EXACT = 0,
  ECH_ROT_MODE_PERTURBED = 1,
} EchRotMode;

/**
 * Opaque graded complex in gradings `0, 2, …, 2·max_k`.
 */
typedef struct EchComplex EchComplex;

/**
 * Opaque fibration `T(2,q)` with its index engine.
 */
typedef struct EchFibration EchFibration;

/**
 * Opaque list of generators in degree order.
 */
typedef struct EchGeneratorList EchGeneratorList;

/**
 * `b^b h^h e^e`.
 */
typedef struct {
  uint64_t b;
  uint64_t h;
  uint64_t e;
} EchCurrent;

typedef struct {
  EchCurrent current;
  uint64_t degree;
  int64_t index;
} EchGenerator;

/**
 * `num/den + delta·δ` with `den > 0` and the fraction in lowest terms.
 */
typedef struct {
  int64_t num;
  int64_t den;
  int64_t delta;
} EchPerturbed;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Static description of a status code. Never NULL, never freed.
 */
const char *ech_status_message(EchStatus status);

/**
 * # Safety
 * `out` must be valid for writes.
 */
EchStatus ech_fibration_new(int64_t q, EchFibration **out);

/**
 * # Safety
 * `fib` must be NULL or a handle from [`ech_fibration_new`] not yet freed.
 */
void ech_fibration_free(EchFibration *fib);

/**
 * # Safety
 * `fib` must be a live handle and `out` valid for writes.
 */
EchStatus ech_fibration_q(const EchFibration *fib, uint32_t *out);

/**
 * ECH index of `b^b h^h e^e`. `Overflow` when it does not fit in `int64_t`.
 *
 * # Safety
 * `fib` must be a live handle and `out` valid for writes.
 */
EchStatus ech_index(const EchFibration *fib, EchCurrent current, int64_t *out);

/**
 * All admissible currents of degree `≤ max_degree`, ordered by degree and
 * then by binding multiplicity.
 *
 * # Safety
 * `fib` must be a live handle and `out` valid for writes.
 */
EchStatus ech_generators_new(const EchFibration *fib, uint64_t max_degree, EchGeneratorList **out);

/**
 * # Safety
 * `list` must be a live handle and `out` valid for writes.
 */
EchStatus ech_generators_len(const EchGeneratorList *list, size_t *out);

/**
 * # Safety
 * `list` must be a live handle and `out` valid for writes.
 */
EchStatus ech_generators_get(const EchGeneratorList *list, size_t i, EchGenerator *out);

/**
 * # Safety
 * `list` must be NULL or a handle from [`ech_generators_new`] not yet freed.
 */
void ech_generators_free(EchGeneratorList *list);

/**
 * Builds the complex through grading `2·max_k`, certifying the index
 * bijection on the way.
 *
 * # Safety
 * `fib` must be a live handle and `out` valid for writes.
 */
EchStatus ech_complex_new(const EchFibration *fib, size_t max_k, EchComplex **out);

/**
 * # Safety
 * `cx` must be NULL or a handle from [`ech_complex_new`] not yet freed.
 */
void ech_complex_free(EchComplex *cx);

/**
 * The generator of grading `2k`.
 *
 * # Safety
 * `cx` must be a live handle and `out` valid for writes.
 */
EchStatus ech_complex_generator(const EchComplex *cx, size_t k, EchGenerator *out);

/**
 * ECH capacity `c_k` as a reduced fraction.
 *
 * # Safety
 * `cx` must be a live handle; `num` and `den` valid for writes.
 */
EchStatus ech_complex_capacity(const EchComplex *cx, size_t k, int64_t *num, int64_t *den);

/**
 * Smallest knot filtration level at which grading `2k` is nonzero.
 *
 * # Safety
 * `cx` must be a live handle and `out` valid for writes.
 */
EchStatus ech_complex_knot_threshold(const EchComplex *cx,
                                     size_t k,
                                     EchRotMode mode,
                                     EchPerturbed *out);

/**
 * Rank (0 or 1) of knot-filtered ECH in `grading` at `level`.
 *
 * # Safety
 * `cx` must be a live handle and `out` valid for writes.
 */
EchStatus ech_complex_knot_rank(const EchComplex *cx,
                                uint64_t grading,
                                EchPerturbed level,
                                EchRotMode mode,
                                uint8_t *out);

/**
 * Runs the adjacent-degree identity checks for `1 ≤ m ≤ max_m`. Writes the
 * number of failed checks; returns `VerificationFailed` when it is nonzero.
 *
 * # Safety
 * `fib` must be a live handle; `failures` must be NULL or valid for writes.
 */
EchStatus ech_verify_identities(const EchFibration *fib, uint64_t max_m, uint64_t *failures);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* TORUS_ECH_H */
