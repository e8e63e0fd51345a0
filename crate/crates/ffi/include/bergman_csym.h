#ifndef BERGMAN_CSYM_H
#define BERGMAN_CSYM_H

/* Generated by cbindgen from src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum BcStatus {
  BC_STATUS_OK = 0,
  BC_STATUS_NULL_POINTER = 1,
  BC_STATUS_INVALID_ARGUMENT = 2,
  BC_STATUS_NOT_SELF_MAP = 3,
  BC_STATUS_DEGENERATE = 4,
  BC_STATUS_OUTSIDE_DISK = 5,
  BC_STATUS_DIM_MISMATCH = 6,
  BC_STATUS_NUMERICAL = 7,
  BC_STATUS_BUFFER_TOO_SMALL = 8,
  BC_STATUS_PANIC = 9,
} BcStatus;

/**
 * Classification codes returned by [`bc_lft_classify`].
 */
typedef enum BcLftKind {
  BC_LFT_KIND_IDENTITY = 0,
  BC_LFT_KIND_ROTATION_LIKE_ELLIPTIC = 1,
  BC_LFT_KIND_ELLIPTIC = 2,
  BC_LFT_KIND_PARABOLIC = 3,
  BC_LFT_KIND_HYPERBOLIC_AUTOMORPHISM = 4,
  BC_LFT_KIND_HYPERBOLIC_NONAUTOMORPHISM = 5,
  BC_LFT_KIND_LOXODROMIC = 6,
} BcLftKind;

/**
 * Opaque Gram table.
 */
typedef struct BcGram BcGram;

/**
 * Opaque linear fractional self-map.
 */
typedef struct BcLft BcLft;

/**
 * Opaque truncated operator matrix.
 */
typedef struct BcOperator BcOperator;

typedef struct BcComplex {
  double re;
  double im;
} BcComplex;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Copies the last error message of this thread into `buf` (NUL-terminated,
 * truncated to `len - 1` bytes). Returns the full message length.
 *
 * # Safety
 * `buf` must be null or point to `len` writable bytes.
 */
size_t bc_last_error_message(char *buf, size_t len);

/**
 * `z ↦ (az + b)/(cz + d)`, validated as a self-map of the disk.
 *
 * # Safety
 * `out` must be a valid pointer to storage for one handle.
 */
enum BcStatus bc_lft_new(struct BcComplex a,
                         struct BcComplex b,
                         struct BcComplex c,
                         struct BcComplex d,
                         struct BcLft **out);

/**
 * `φ_α(z) = (α - z)/(1 - ᾱz)`.
 *
 * # Safety
 * `out` must be a valid pointer to storage for one handle.
 */
enum BcStatus bc_lft_involution(struct BcComplex alpha, struct BcLft **out);

/**
 * `φ_α∘(λφ_α)`.
 *
 * # Safety
 * `out` must be a valid pointer to storage for one handle.
 */
enum BcStatus bc_lft_conjugate_rotation(struct BcComplex alpha,
                                        struct BcComplex lambda,
                                        struct BcLft **out);

/**
 * # Safety
 * `lft` must be null or a handle from this library not yet freed.
 */
void bc_lft_free(struct BcLft *lft);

/**
 * # Safety
 * `lft` must be a live handle; `out` must be valid.
 */
enum BcStatus bc_lft_apply(const struct BcLft *lft, struct BcComplex z, struct BcComplex *out);

/**
 * # Safety
 * `lft` must be a live handle; output pointers must be valid.
 */
enum BcStatus bc_lft_classify(const struct BcLft *lft, enum BcLftKind *kind, bool *is_automorphism);

/**
 * Denjoy–Wolff point, or the interior fixed point for elliptic maps
 * (`*elliptic` is then set).
 *
 * # Safety
 * `lft` must be a live handle; output pointers must be valid.
 */
enum BcStatus bc_lft_denjoy_wolff(const struct BcLft *lft, struct BcComplex *omega, bool *elliptic);

/**
 * `‖zⁿ‖²` in `A²_β`.
 *
 * # Safety
 * `out` must be valid.
 */
enum BcStatus bc_weight(double beta, size_t n, double *out);

/**
 * Truncated `C_φ` of size `(degree+1)²` in the orthonormal basis.
 *
 * # Safety
 * `lft` must be a live handle; `out` must be valid.
 */
enum BcStatus bc_composition_matrix(const struct BcLft *lft,
                                    double beta,
                                    size_t degree,
                                    struct BcOperator **out);

/**
 * Conjugate transpose as a new handle.
 *
 * # Safety
 * `op` must be a live handle; `out` must be valid.
 */
enum BcStatus bc_operator_adjoint(const struct BcOperator *op, struct BcOperator **out);

/**
 * # Safety
 * `op` must be null or a handle from this library not yet freed.
 */
void bc_operator_free(struct BcOperator *op);

/**
 * Number of rows (= columns); 0 for a null handle.
 *
 * # Safety
 * `op` must be null or a live handle.
 */
size_t bc_operator_dim(const struct BcOperator *op);

/**
 * Copies the entries row-major into `buf` of length `len ≥ dim²`.
 *
 * # Safety
 * `op` must be a live handle; `buf` must point to `len` writable elements.
 */
enum BcStatus bc_operator_entries(const struct BcOperator *op, struct BcComplex *buf, size_t len);

/**
 * `‖U·conj(T)·U^H - T^H‖_F` for the plain conjugation `U = I`.
 *
 * # Safety
 * `op` must be a live handle; `out` must be valid.
 */
enum BcStatus bc_csym_residual_plain(const struct BcOperator *op, double *out);

/**
 * Runs the seeded conjugation search and reports the best residual.
 *
 * # Safety
 * `op` must be a live handle; `best` must be valid.
 */
enum BcStatus bc_conjugation_search(const struct BcOperator *op,
                                    size_t iters,
                                    uint64_t seed,
                                    double *best);

/**
 * Exact Gram table `⟨v_n, v_m⟩`, `0 ≤ n, m ≤ n_max`, for integer `β`.
 *
 * # Safety
 * `out` must be valid.
 */
enum BcStatus bc_gram_exact(double beta, struct BcComplex alpha, size_t n_max, struct BcGram **out);

/**
 * Gram table from `v_n` truncated at `degree` (any `β`).
 *
 * # Safety
 * `out` must be valid.
 */
enum BcStatus bc_gram_truncated(double beta,
                                struct BcComplex alpha,
                                size_t n_max,
                                size_t degree,
                                struct BcGram **out);

/**
 * # Safety
 * `gram` must be null or a handle from this library not yet freed.
 */
void bc_gram_free(struct BcGram *gram);

/**
 * Number of rows (`n_max + 1`); 0 for a null handle.
 *
 * # Safety
 * `gram` must be null or a live handle.
 */
size_t bc_gram_size(const struct BcGram *gram);

/**
 * # Safety
 * `gram` must be a live handle; `out` must be valid.
 */
enum BcStatus bc_gram_get(const struct BcGram *gram, size_t n, size_t m, struct BcComplex *out);

/**
 * Largest `|G[n][m]|` with `|n - m| ≥ width`.
 *
 * # Safety
 * `gram` must be a live handle; `out` must be valid.
 */
enum BcStatus bc_gram_max_out_of_band(const struct BcGram *gram, size_t width, double *out);

/**
 * Block residual of `C_φ^* = M_g C_σ M_h^*` at truncation `degree`.
 *
 * # Safety
 * `lft` must be a live handle; `out` must be valid.
 */
enum BcStatus bc_verify_hurst(const struct BcLft *lft,
                              double beta,
                              size_t degree,
                              size_t block,
                              double *out);

/**
 * Relative residual of `C_σ(1-z)^λ = s^λ(1-z)^λ` on degrees `≤ block`.
 *
 * # Safety
 * `out` must be valid.
 */
enum BcStatus bc_hurst_eigencheck(struct BcComplex s,
                                  double lambda,
                                  double beta,
                                  size_t degree,
                                  size_t block,
                                  double *out);

/**
 * Both routes to `⟨φ_α^{3+β}, K_0⟩` and their difference.
 *
 * # Safety
 * Output pointers must be valid.
 */
enum BcStatus bc_obstruction_witness(double beta,
                                     struct BcComplex alpha,
                                     struct BcComplex *direct,
                                     struct BcComplex *inner_product);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* BERGMAN_CSYM_H */
