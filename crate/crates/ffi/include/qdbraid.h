#ifndef QDBRAID_H
#define QDBRAID_H

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stdint.h>
#include <stdlib.h>

// Result code of every fallible call.
typedef enum QdStatus {
  QD_STATUS_OK = 0,
  QD_STATUS_NULL_POINTER = 1,
  QD_STATUS_INVALID_UTF8 = 2,
  QD_STATUS_INVALID_ARGUMENT = 3,
  QD_STATUS_BUFFER_TOO_SMALL = 4,
  QD_STATUS_PANIC = 5,
} QdStatus;

// A twisted double `D^ω(G)`.
typedef struct QdDouble QdDouble;

// A monomial operator: `e_i ↦ ζ_r^{scal[i]} e_{perm[i]}`.
typedef struct QdOp QdOp;

// The braid action on the `n`-th tensor power of the regular module.
typedef struct QdRep QdRep;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Message for the last failed call on this thread; empty after a success.
// The pointer stays valid until the next call on this thread.
const char *qd_last_error(void);

// Build `D^ω(G)` from a group spec (`cyclic:4`, `quaternion`, ...), a
// cocycle spec (`trivial`, `cyclic:q`, `file:<path>`) and a variant
// (`theta:standard`, `theta:printed`; null means standard).
//
// # Safety
// String arguments must be null or NUL-terminated; `out` must be writable.
enum QdStatus qd_double_new(const char *group,
                            const char *cocycle,
                            const char *variant,
                            struct QdDouble **out);

// # Safety
// `d` must be null or a handle from [`qd_double_new`] not yet freed.
void qd_double_free(struct QdDouble *d);

// Order of `G`, or 0 for a null handle.
//
// # Safety
// `d` must be null or a live handle.
uintptr_t qd_double_group_order(const struct QdDouble *d);

// Root-of-unity order `r` of the cocycle, or 0 for a null handle.
//
// # Safety
// `d` must be null or a live handle.
uint32_t qd_double_root_order(const struct QdDouble *d);

// Run every structure check; `*passed` is 1 when all hold. A failing
// check is described by [`qd_last_error`] while the status stays `Ok`.
//
// # Safety
// `d` must be a live handle and `passed` writable.
enum QdStatus qd_double_verify(const struct QdDouble *d, int32_t *passed);

// Tensor power representation on `n ≥ 1` strands.
//
// # Safety
// `d` must be a live handle and `out` writable. The double is copied.
enum QdStatus qd_rep_new(const struct QdDouble *d, uintptr_t n, struct QdRep **out);

// # Safety
// `rep` must be null or a handle from [`qd_rep_new`] not yet freed.
void qd_rep_free(struct QdRep *rep);

// Dimension `|G|^{2n}`, or 0 for a null handle.
//
// # Safety
// `rep` must be null or a live handle.
uintptr_t qd_rep_dim(const struct QdRep *rep);

// Operator of `β_i`, `1 ≤ i < n`.
//
// # Safety
// `rep` must be a live handle and `out` writable.
enum QdStatus qd_rep_braid_generator(const struct QdRep *rep, uintptr_t i, struct QdOp **out);

// Operator of the band generator `A_ij`, `1 ≤ i < j ≤ n`.
//
// # Safety
// `rep` must be a live handle and `out` writable.
enum QdStatus qd_rep_pure_generator(const struct QdRep *rep,
                                    uintptr_t i,
                                    uintptr_t j,
                                    struct QdOp **out);

// # Safety
// `op` must be null or an operator handle not yet freed.
void qd_op_free(struct QdOp *op);

// # Safety
// `op` must be null or a live handle.
uintptr_t qd_op_dim(const struct QdOp *op);

// # Safety
// `op` must be null or a live handle.
uint32_t qd_op_root_order(const struct QdOp *op);

// Copy the permutation (`dim` entries) into `buf`.
//
// # Safety
// `op` must be a live handle and `buf` valid for `len` writes.
enum QdStatus qd_op_perm(const struct QdOp *op, uint32_t *buf, uintptr_t len);

// Copy the scalar exponents (`dim` entries, each in `[0, r)`) into `buf`.
//
// # Safety
// `op` must be a live handle and `buf` valid for `len` writes.
enum QdStatus qd_op_scal(const struct QdOp *op, uint32_t *buf, uintptr_t len);

// Analyze the braid and pure braid images on `n` strands and return the
// report as JSON. `max_elements = 0` selects the default budget. Release
// the string with [`qd_string_free`].
//
// # Safety
// `d` must be a live handle and `out` writable.
enum QdStatus qd_analyze_json(const struct QdDouble *d,
                              uintptr_t n,
                              uintptr_t max_elements,
                              char **out);

// # Safety
// `s` must be null or a string returned by this library not yet freed.
void qd_string_free(char *s);

// Coxeter's criterion: `*finite = 1` iff `1/n + 1/k > 1/2`.
//
// # Safety
// `finite` must be writable.
enum QdStatus qd_coxeter_finite(uint64_t n, uint64_t k, int32_t *finite);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* QDBRAID_H */
