#ifndef LOGISTIC_RING_H
#define LOGISTIC_RING_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum LrBranch {
  LR_BRANCH_MU_BAR_ZERO = 0,
  LR_BRANCH_FORMULA = 1,
  LR_BRANCH_SMALL_N = 2,
} LrBranch;

typedef enum LrStatus {
  LR_STATUS_OK = 0,
  LR_STATUS_NULL_POINTER = 1,
  LR_STATUS_NOT_PRIME = 2,
  LR_STATUS_INVALID_EXPONENT = 3,
  LR_STATUS_MODULUS_TOO_LARGE = 4,
  LR_STATUS_STATE_SPACE_TOO_LARGE = 5,
  LR_STATUS_MU_DIVISIBLE_BY3 = 6,
  LR_STATUS_NOT_BASE3 = 7,
  LR_STATUS_PRECONDITION_UNMET = 8,
  LR_STATUS_OUT_OF_RANGE = 9,
} LrStatus;

/**
 * Opaque state-mapping network with its decomposition.
 */
typedef struct LrGraph LrGraph;

typedef struct LrOrbit {
  uint64_t pre_period;
  uint64_t period;
  uint64_t cycle_entry;
} LrOrbit;

typedef struct LrPeriodLaw {
  uint8_t mu_bar;
  uint8_t entry_index;
  uint64_t entry_value;
  /**
   * False when the valuation is infinite; `v` is then 0.
   */
  bool v_finite;
  uint32_t v;
  enum LrBranch branch;
  uint64_t period;
} LrPeriodLaw;

typedef struct LrMaxPeriod {
  uint64_t class_modulus;
  uint64_t class_residue;
  uint64_t max_period;
  bool has_witness;
  uint64_t witness;
  /**
   * True when the value came from an exhaustive sweep.
   */
  bool brute_force;
} LrMaxPeriod;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * `mu * x * (x + 1) mod p^n`; inputs are reduced first.
 *
 * # Safety
 * `out` must be null or valid for writing a `u64`.
 */
enum LrStatus lr_step(uint64_t p, uint32_t n, uint64_t mu, uint64_t x, uint64_t *out);

/**
 * # Safety
 * `out` must be null or valid for writing a `u64`.
 */
enum LrStatus lr_iterate(uint64_t p,
                         uint32_t n,
                         uint64_t mu,
                         uint64_t x,
                         uint64_t k,
                         uint64_t *out);

/**
 * Brute-force pre-period, period and cycle entry.
 *
 * # Safety
 * `out` must be null or valid for writing an `LrOrbit`.
 */
enum LrStatus lr_detect_orbit(uint64_t p,
                              uint32_t n,
                              uint64_t mu,
                              uint64_t x0,
                              struct LrOrbit *out);

/**
 * Closed-form period over `Z/3^n`.
 *
 * # Safety
 * `out` must be null or valid for writing an `LrPeriodLaw`.
 */
enum LrStatus lr_closed_form_period(uint32_t n, uint64_t mu, uint64_t x0, struct LrPeriodLaw *out);

/**
 * # Safety
 * `out` must be null or valid for writing an `LrMaxPeriod`.
 */
enum LrStatus lr_max_period_formula(uint32_t n, uint64_t mu, struct LrMaxPeriod *out);

/**
 * # Safety
 * `out` must be null or valid for writing an `LrMaxPeriod`.
 */
enum LrStatus lr_max_period_bruteforce(uint64_t p,
                                       uint32_t n,
                                       uint64_t mu,
                                       struct LrMaxPeriod *out);

/**
 * # Safety
 * `out` must be null or valid for writing a `bool`.
 */
enum LrStatus lr_achieves_max_period(uint32_t n, uint64_t mu, uint64_t x0, bool *out);

/**
 * Builds and decomposes the state-mapping network. Release with [`lr_graph_free`].
 *
 * # Safety
 * `out` must be null or valid for writing a pointer.
 */
enum LrStatus lr_graph_new(uint64_t p, uint32_t n, uint64_t mu, struct LrGraph **out);

/**
 * # Safety
 * `graph` must be null or a handle from [`lr_graph_new`] not yet freed.
 */
void lr_graph_free(struct LrGraph *graph);

/**
 * Number of nodes, `p^n`; 0 for a null handle.
 *
 * # Safety
 * `graph` must be null or a live handle.
 */
size_t lr_graph_len(const struct LrGraph *graph);

/**
 * Borrowed pointer to the successor array of length [`lr_graph_len`], valid
 * until the handle is freed.
 *
 * # Safety
 * `graph` must be null or a live handle.
 */
const uint64_t *lr_graph_successors(const struct LrGraph *graph);

/**
 * # Safety
 * `graph` must be null or a live handle.
 */
size_t lr_graph_cycle_count(const struct LrGraph *graph);

/**
 * Copies cycle `index` (rotated to its minimum) into `buf` and stores its
 * full length in `len`. At most `cap` values are written.
 *
 * # Safety
 * `graph` must be a live handle, `buf` valid for `cap` writes (or null with
 * `cap == 0`), and `len` valid for writing.
 */
enum LrStatus lr_graph_cycle(const struct LrGraph *graph,
                             size_t index,
                             uint64_t *buf,
                             size_t cap,
                             size_t *len);

/**
 * Tail depth of node `x` (0 for cycle nodes).
 *
 * # Safety
 * `graph` must be a live handle and `out` valid for writing.
 */
enum LrStatus lr_graph_tail_depth(const struct LrGraph *graph, uint64_t x, uint64_t *out);

/**
 * JSON decomposition document; release with [`lr_string_free`].
 *
 * # Safety
 * `graph` must be null or a live handle.
 */
char *lr_graph_to_json(const struct LrGraph *graph);

/**
 * DOT digraph; release with [`lr_string_free`].
 *
 * # Safety
 * `graph` must be null or a live handle.
 */
char *lr_graph_to_dot(const struct LrGraph *graph);

/**
 * # Safety
 * `s` must be null or a string returned by this library and not yet freed.
 */
void lr_string_free(char *s);

/**
 * Static description of a status code.
 */
const char *lr_status_message(enum LrStatus status);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* LOGISTIC_RING_H */
