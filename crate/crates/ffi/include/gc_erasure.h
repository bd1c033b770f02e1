/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#ifndef GC_ERASURE_H
#define GC_ERASURE_H

#include <stdarg.h>
#include <stdbool.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Result codes. Values 0-3 match the command-line exit codes.
 */
typedef enum GcStatus {
  GC_STATUS_OK = 0,
  GC_STATUS_INVALID_ARGUMENT = 1,
  GC_STATUS_UNCORRECTABLE = 2,
  GC_STATUS_BUDGET_EXCEEDED = 3,
  GC_STATUS_INVALID_CODE = 4,
  GC_STATUS_INVALID_PLACEMENT = 5,
  GC_STATUS_NULL_POINTER = 6,
  GC_STATUS_INTERNAL = 7,
} GcStatus;

/**
 * Opaque code handle.
 */
typedef struct GcCode GcCode;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Builds a code over GF(2^b) with rows of length `n` and per-row budgets
 * `u[0..u_len]` (non-decreasing). `poly = 0` selects the default primitive
 * polynomial for `b`. On success `*out` owns a new handle.
 *
 * # Safety
 * `u` must point to `u_len` readable values and `out` to a writable
 * pointer.
 */
enum GcStatus gc_code_new(uintptr_t n,
                          uint32_t b,
                          uint32_t poly,
                          const uintptr_t *u,
                          uintptr_t u_len,
                          struct GcCode **out);

/**
 * Releases a handle. Null is ignored.
 *
 * # Safety
 * `code` must come from `gc_code_new` and not be used afterwards.
 */
void gc_code_free(struct GcCode *code);

/**
 * Number of array rows `m`; 0 for a null handle.
 *
 * # Safety
 * `code` must be null or a live handle.
 */
uintptr_t gc_code_rows(const struct GcCode *code);

/**
 * Row length `n`; 0 for a null handle.
 *
 * # Safety
 * `code` must be null or a live handle.
 */
uintptr_t gc_code_cols(const struct GcCode *code);

/**
 * Number of parity symbols `r`.
 *
 * # Safety
 * `code` must be null or a live handle.
 */
uintptr_t gc_code_parity_count(const struct GcCode *code);

/**
 * Number of data symbols `k = mn - r`.
 *
 * # Safety
 * `code` must be null or a live handle.
 */
uintptr_t gc_code_data_count(const struct GcCode *code);

/**
 * Minimum distance of the code.
 *
 * # Safety
 * `code` must be null or a live handle.
 */
uintptr_t gc_code_min_distance(const struct GcCode *code);

/**
 * Encodes `k` data symbols into the `m*n` array `out`. `placement` is an
 * `m*n` parity mask, or null for the default (trailing cells, largest
 * budgets on top).
 *
 * # Safety
 * Pointers must be valid for the stated lengths; `placement` may be null.
 */
enum GcStatus gc_encode(const struct GcCode *code,
                        const uint16_t *data,
                        uintptr_t data_len,
                        const uint8_t *placement,
                        uint16_t *out,
                        uintptr_t out_len);

/**
 * Decodes the `m*n` array `symbols_io` in place; cells with a nonzero byte in
 * `erasures` are recovered. With `verify`, the result is checked against
 * the full parity-check matrix. On failure `symbols_io` is left untouched.
 *
 * # Safety
 * `symbols_io` and `erasures` must each hold `len` elements.
 */
enum GcStatus gc_decode(const struct GcCode *code,
                        uint16_t *symbols_io,
                        const uint8_t *erasures,
                        uintptr_t len,
                        bool verify);

/**
 * Writes whether the `m*n` erasure mask fits the row budgets.
 *
 * # Safety
 * `erasures` must hold `len` bytes and `out` must be writable.
 */
enum GcStatus gc_is_correctable(const struct GcCode *code,
                                const uint8_t *erasures,
                                uintptr_t len,
                                bool *out);

/**
 * Static description of a status code.
 */
const char *gc_status_message(enum GcStatus status);

/**
 * Message for the last failure on this thread, or null. Valid until the
 * next failing call on the same thread.
 */
const char *gc_last_error(void);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* GC_ERASURE_H */
