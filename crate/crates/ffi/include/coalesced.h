#ifndef COALESCED_H
#define COALESCED_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

#define COALESCED_POLICY_UNSUCCESSFUL 0

#define COALESCED_POLICY_LATE 1

#define COALESCED_POLICY_EARLY 2

typedef enum CoalescedStatus {
  COALESCED_STATUS_OK = 0,
  COALESCED_STATUS_NULL_POINTER = 1,
  COALESCED_STATUS_INVALID_SIZE = 2,
  COALESCED_STATUS_INVALID_POLICY = 3,
  COALESCED_STATUS_INVALID_ADDRESS = 4,
  COALESCED_STATUS_TABLE_FULL = 5,
  COALESCED_STATUS_INVALID_ITEM = 6,
  COALESCED_STATUS_EMPTY_TABLE = 7,
  COALESCED_STATUS_BUFFER_TOO_SMALL = 8,
  COALESCED_STATUS_INVALID_ARGUMENT = 9,
  COALESCED_STATUS_NUMERIC_FAILURE = 10,
  COALESCED_STATUS_PANIC = 11,
} CoalescedStatus;

/**
 * Opaque table handle.
 */
typedef struct CoalescedTable CoalescedTable;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Creates an empty table with `m` cells.
 *
 * # Safety
 * `out` must be a valid pointer to writable storage for one handle.
 */
enum CoalescedStatus coalesced_table_new(size_t m, uint32_t policy, struct CoalescedTable **out);

/**
 * Releases a table. Null is ignored.
 *
 * # Safety
 * `table` must be null or a handle from [`coalesced_table_new`] that has not
 * been freed.
 */
void coalesced_table_free(struct CoalescedTable *table);

/**
 * Inserts an item with hash address `h` (1-based) and reports its
 * displacement at insertion time. `out_displacement` may be null.
 *
 * # Safety
 * `table` must be a live handle; `out_displacement` null or writable.
 */
enum CoalescedStatus coalesced_table_insert(struct CoalescedTable *table,
                                            size_t h,
                                            uint32_t *out_displacement);

/**
 * # Safety
 * `table` must be a live handle and `out` writable.
 */
enum CoalescedStatus coalesced_table_len(const struct CoalescedTable *table, size_t *out);

/**
 * # Safety
 * `table` must be a live handle and `out` writable.
 */
enum CoalescedStatus coalesced_table_capacity(const struct CoalescedTable *table, size_t *out);

/**
 * Current displacement of item `item` (1-based, in insertion order).
 *
 * # Safety
 * `table` must be a live handle and `out` writable.
 */
enum CoalescedStatus coalesced_table_displacement(const struct CoalescedTable *table,
                                                  size_t item,
                                                  uint32_t *out);

/**
 * Occupied cells met by an unsuccessful search starting at cell `j`.
 *
 * # Safety
 * `table` must be a live handle and `out` writable.
 */
enum CoalescedStatus coalesced_table_unsuccessful_cost(const struct CoalescedTable *table,
                                                       size_t j,
                                                       uint32_t *out);

/**
 * Copies the histogram `n_0, n_1, ...` of successful displacements (the
 * table's own policy) or unsuccessful-search costs (`which` =
 * `COALESCED_POLICY_UNSUCCESSFUL`) into `buf`.
 *
 * `out_len` always receives the number of entries needed; when `buf_len` is
 * smaller, nothing is copied and `BufferTooSmall` is returned. `buf` may be
 * null when `buf_len` is zero.
 *
 * # Safety
 * `table` must be a live handle, `out_len` writable and `buf` valid for
 * `buf_len` writes.
 */
enum CoalescedStatus coalesced_table_histogram(const struct CoalescedTable *table,
                                               uint32_t which,
                                               uint64_t *buf,
                                               size_t buf_len,
                                               size_t *out_len);

/**
 * Limit probability `p(k)` at load factor `alpha`.
 *
 * # Safety
 * `out` must be writable.
 */
enum CoalescedStatus coalesced_p_limit(double alpha, uint32_t policy, size_t k, double *out);

/**
 * # Safety
 * `out` must be writable.
 */
enum CoalescedStatus coalesced_mean_limit(double alpha, uint32_t policy, double *out);

/**
 * # Safety
 * `out` must be writable.
 */
enum CoalescedStatus coalesced_var_limit(double alpha, uint32_t policy, double *out);

/**
 * Mean and variance of the probe count `max(d, 1)` of an unsuccessful
 * search in the limit.
 *
 * # Safety
 * Both out-pointers must be writable.
 */
enum CoalescedStatus coalesced_probe_stats(double alpha, double *out_mean, double *out_variance);

/**
 * Static, NUL-terminated description of a status code. Never free it.
 */
const char *coalesced_status_message(enum CoalescedStatus status);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* COALESCED_H */
