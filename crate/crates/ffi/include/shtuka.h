#ifndef SHTUKA_H
#define SHTUKA_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum ShtukaFormat {
  SHTUKA_FORMAT_HUMAN = 0,
  SHTUKA_FORMAT_JSON = 1,
} ShtukaFormat;

typedef enum ShtukaStatus {
  SHTUKA_STATUS_OK = 0,
  /*
   A document ran, but at least one of its commands failed.
   */
  SHTUKA_STATUS_COMMAND_FAILED = 1,
  /*
   A document could not be parsed or validated.
   */
  SHTUKA_STATUS_INVALID_DOCUMENT = 2,
  SHTUKA_STATUS_NULL_POINTER = 3,
  SHTUKA_STATUS_INVALID_UTF8 = 4,
  SHTUKA_STATUS_INVALID_ARGUMENT = 5,
  /*
   The computation itself failed (not a unit, not divisible, ...).
   */
  SHTUKA_STATUS_MATH = 6,
  /*
   A result does not fit the output type.
   */
  SHTUKA_STATUS_OVERFLOW = 7,
  SHTUKA_STATUS_PANIC = 8,
} ShtukaStatus;

typedef struct ShtukaFinite ShtukaFinite;

typedef struct ShtukaLocal ShtukaLocal;

/*
 A finite local F_q-algebra R together with its nilpotent element zeta.
 */
typedef struct ShtukaRing ShtukaRing;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/*
 Message of the last failed call on this thread, or null. The pointer
 stays valid until the next call into the library on this thread.
 */
const char *shtuka_last_error(void);

/*
 Static, nul-terminated version string.
 */
const char *shtuka_version(void);

/*
 # Safety
 `s` must be null or a string returned by this library, freed once.
 */
void shtuka_string_free(char *s);

/*
 F_q itself, zeta = 0.

 # Safety
 `out` must be valid for writes.
 */
enum ShtukaStatus shtuka_ring_fq(uint32_t q, struct ShtukaRing **out);

/*
 F_{q^m}, zeta = 0.

 # Safety
 `out` must be valid for writes.
 */
enum ShtukaStatus shtuka_ring_extension(uint32_t q, size_t m, struct ShtukaRing **out);

/*
 F_q[var]/(var^n), zeta = 0.

 # Safety
 `var` must be a nul-terminated string; `out` must be valid for writes.
 */
enum ShtukaStatus shtuka_ring_truncated(uint32_t q,
                                        size_t n,
                                        const char *var,
                                        struct ShtukaRing **out);

/*
 A copy of `ring` with zeta set to the element `zeta`, e.g. "eps".

 # Safety
 `ring` must be a live handle, `zeta` a nul-terminated string and `out`
 valid for writes.
 */
enum ShtukaStatus shtuka_ring_with_zeta(const struct ShtukaRing *ring,
                                        const char *zeta,
                                        struct ShtukaRing **out);

/*
 Dimension of R over F_q, or 0 for a null handle.

 # Safety
 `ring` must be null or a live handle.
 */
size_t shtuka_ring_dim(const struct ShtukaRing *ring);

/*
 # Safety
 `ring` must be null or a handle from this library, freed once.
 */
void shtuka_ring_free(struct ShtukaRing *ring);

/*
 A finite shtuka of the given rank. `entries` holds rank*rank row-major
 elements of R as strings.

 # Safety
 `ring` must be a live handle, `entries` must point to rank*rank
 nul-terminated strings and `out` must be valid for writes.
 */
enum ShtukaStatus shtuka_finite_new(const struct ShtukaRing *ring,
                                    size_t rank,
                                    const char *const *entries,
                                    struct ShtukaFinite **out);

/*
 Order q^rank of the associated Drinfeld group scheme, certified by a
 monomial basis of its coordinate ring.

 # Safety
 `sh` must be a live handle and `out` valid for writes.
 */
enum ShtukaStatus shtuka_finite_order(const struct ShtukaFinite *sh, uint64_t *out);

/*
 # Safety
 `sh` must be null or a handle from this library, freed once.
 */
void shtuka_finite_free(struct ShtukaFinite *sh);

/*
 A local shtuka (z - zeta)^twist * M over R[[z]], M given by rank*rank
 row-major entries such as "z - eps", known to `precision` terms.

 # Safety
 `ring` must be a live handle, `entries` must point to rank*rank
 nul-terminated strings and `out` must be valid for writes.
 */
enum ShtukaStatus shtuka_local_new(const struct ShtukaRing *ring,
                                   size_t rank,
                                   const char *const *entries,
                                   int64_t twist,
                                   size_t precision,
                                   struct ShtukaLocal **out);

/*
 Whether the shtuka is bounded by (z - zeta)^d.

 # Safety
 `sh` must be a live handle and `out` valid for writes.
 */
enum ShtukaStatus shtuka_local_is_bounded(const struct ShtukaLocal *sh, size_t d, bool *out);

/*
 Least d <= d_max for which the Verschiebung exists.

 # Safety
 `sh` must be a live handle and `out` valid for writes.
 */
enum ShtukaStatus shtuka_local_nilpotence_order(const struct ShtukaLocal *sh,
                                                size_t d_max,
                                                size_t *out);

/*
 Orders of the truncation levels 1..=n_max of the associated local
 Anderson module, written to `orders[0..n_max]`.

 # Safety
 `sh` must be a live handle and `orders` valid for `n_max` writes.
 */
enum ShtukaStatus shtuka_local_tower_orders(const struct ShtukaLocal *sh,
                                            size_t n_max,
                                            size_t d_max,
                                            uint64_t *orders);

/*
 # Safety
 `sh` must be null or a handle from this library, freed once.
 */
void shtuka_local_free(struct ShtukaLocal *sh);

/*
 Runs a JSON problem document and writes the report to `*report`.

 Returns `Ok`, `CommandFailed` (the report is still written) or
 `InvalidDocument` (no report; see [`shtuka_last_error`]).

 # Safety
 `document` must be a nul-terminated string and `report` valid for writes.
 */
enum ShtukaStatus shtuka_run_document(const char *document,
                                      enum ShtukaFormat format,
                                      char **report);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* SHTUKA_H */
