/* isotoda — spectral invariants, Toda flow, monodromy and the combinatorial
 * topology of isospectral periodic tridiagonal matrices.
 *
 * C89-compatible shared-library interface. All objects are opaque handles
 * created and destroyed here; every fallible call returns an isotoda_status
 * and writes results through out-pointers. isotoda_last_error() returns a
 * thread-local message for the most recent failure on the calling thread.
 */
#ifndef ISOTODA_H
#define ISOTODA_H

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum isotoda_status {
    ISOTODA_OK = 0,
    ISOTODA_ERR_ARGUMENT = 2,   /* malformed or out-of-contract input */
    ISOTODA_ERR_NUMERIC = 3,    /* non-convergence, drift, conditioning */
    ISOTODA_ERR_DEGENERATE = 5, /* operation needs all b_i != 0 */
    ISOTODA_ERR_CAP = 6,        /* combinatorial size cap exceeded */
    ISOTODA_ERR_OVERFLOW = 7,   /* exact value exceeds 64-bit range */
    ISOTODA_ERR_NULL = 8        /* required pointer was NULL */
} isotoda_status;

const char* isotoda_last_error(void);
const char* isotoda_version(void);

/* ---------------- spectra and image-set invariants ---------------- */

typedef struct isotoda_spectrum isotoda_spectrum;

typedef struct isotoda_invariants {
    int n;
    double big_m;  /* M: smallest local-maximum value of F */
    double small_m;/* m: smallest |local-minimum| value of F */
    int n_plus;
    int n_minus;
} isotoda_invariants;

typedef enum isotoda_bset_location {
    ISOTODA_BSET_INTERIOR = 0,
    ISOTODA_BSET_BOUNDARY_PLUS = 1,
    ISOTODA_BSET_BOUNDARY_MINUS = 2,
    ISOTODA_BSET_CORNER = 3,
    ISOTODA_BSET_OUTSIDE = 4
} isotoda_bset_location;

isotoda_status isotoda_spectrum_create(const double* lambda, int n,
                                       isotoda_spectrum** out);
/* Parses {"lambda": [number, ...]}; rejects non-increasing input. */
isotoda_status isotoda_spectrum_from_json(const char* text,
                                          isotoda_spectrum** out);
void isotoda_spectrum_free(isotoda_spectrum* s);

isotoda_status isotoda_spectrum_analyze(const isotoda_spectrum* s,
                                        double grouping_tol,
                                        isotoda_invariants* out);

isotoda_status isotoda_bset_radius(const isotoda_invariants* inv, double theta,
                                   double* out_radius);

isotoda_status isotoda_bset_classify(const isotoda_invariants* inv, double re,
                                     double im, double boundary_tol,
                                     int* out_location, int* out_fiber_dim);

/* 0 = no obstruction (generic smooth), 1 = not a homology manifold */
isotoda_status isotoda_manifold_status(const isotoda_invariants* inv,
                                       int* out_verdict);

isotoda_status isotoda_orbit_descriptor(const isotoda_invariants* inv,
                                        int* out_n_minus, int* out_n_plus,
                                        int* out_torus_rank);

isotoda_status isotoda_chebyshev_degenerate(const isotoda_spectrum* s,
                                            double tol, int* out_flag);

/* ---------------- periodic Jacobi matrices ---------------- */

typedef struct isotoda_matrix isotoda_matrix;

/* b is interleaved re,im of length 2n; b[2(n-1)] is the corner entry. */
isotoda_status isotoda_matrix_create(const double* a, const double* b, int n,
                                     isotoda_matrix** out);
/* Parses {"a": [number, ...], "b": [[re, im], ...]} with equal lengths. */
isotoda_status isotoda_matrix_from_json(const char* text, isotoda_matrix** out);
void isotoda_matrix_free(isotoda_matrix* m);

isotoda_status isotoda_matrix_size(const isotoda_matrix* m, int* out_n);
isotoda_status isotoda_matrix_entries(const isotoda_matrix* m, double* out_a,
                                      double* out_b /* interleaved, 2n */);

isotoda_status isotoda_matrix_random(uint64_t seed, int n, int gauged,
                                     isotoda_matrix** out);

isotoda_status isotoda_matrix_eigenvalues(const isotoda_matrix* m,
                                          double* out /* n, ascending */);

isotoda_status isotoda_matrix_product_b(const isotoda_matrix* m,
                                        double* out_re, double* out_im);

/* t is interleaved re,im of length 2n, unit modulus entries. */
isotoda_status isotoda_matrix_act(const isotoda_matrix* m, const double* t,
                                  isotoda_matrix** out);

isotoda_status isotoda_matrix_gauge_normalize(const isotoda_matrix* m,
                                              double tol,
                                              isotoda_matrix** out_base,
                                              double* out_w_re,
                                              double* out_w_im,
                                              double* out_gauge /* 2n or NULL */);

isotoda_status isotoda_matrix_assemble_lw(const isotoda_matrix* base,
                                          double w_re, double w_im,
                                          isotoda_matrix** out);

/* ---------------- Toda flow ---------------- */

typedef struct isotoda_trajectory isotoda_trajectory;

isotoda_status isotoda_toda_integrate(const isotoda_matrix* m, double t_end,
                                      double dt, double tol, int store_stride,
                                      isotoda_trajectory** out);
void isotoda_trajectory_free(isotoda_trajectory* t);

isotoda_status isotoda_trajectory_steps(const isotoda_trajectory* t,
                                        int* out_count);
isotoda_status isotoda_trajectory_time(const isotoda_trajectory* t, int i,
                                       double* out_time);
isotoda_status isotoda_trajectory_state(const isotoda_trajectory* t, int i,
                                        double* out_a, double* out_b /* 2n */);
isotoda_status isotoda_trajectory_drift(const isotoda_trajectory* t, int i,
                                        double* out_spectrum, double* out_abs_b,
                                        double* out_arg_b);
isotoda_status isotoda_trajectory_status(const isotoda_trajectory* t,
                                         int* out_failed, int* out_failed_step);
isotoda_status isotoda_trajectory_max_drift(const isotoda_trajectory* t,
                                            double* out_spectrum,
                                            double* out_abs_b,
                                            double* out_arg_b);

/* ---------------- Schroedinger monodromy and forbidden zones ----------- */

/* out_m: 2x2 row-major, interleaved re,im (8 doubles). */
isotoda_status isotoda_monodromy(const isotoda_matrix* gauged, double x,
                                 double* out_m, double* out_det,
                                 double* out_trace);

/* out_coeffs: n+1 ascending coefficients of the monic P(x). */
isotoda_status isotoda_spectral_polynomial(const isotoda_matrix* gauged,
                                           double* out_coeffs);

typedef struct isotoda_zones isotoda_zones;

isotoda_status isotoda_forbidden_zones(const isotoda_matrix* gauged,
                                       double tol, isotoda_zones** out);
void isotoda_zones_free(isotoda_zones* z);

isotoda_status isotoda_zones_count(const isotoda_zones* z, int* out_count);
isotoda_status isotoda_zones_get(const isotoda_zones* z, int i, double* out_lo,
                                 double* out_hi, int* out_collapsed,
                                 int* out_upper);
isotoda_status isotoda_zones_roots(const isotoda_zones* z,
                                   double* out /* 2n */);

/* ---------------- wonderful subdivision ---------------- */

isotoda_status isotoda_stirling2(int n, int k, int64_t* out);

/* Counts of faces per dimension 0..n-1 of the wonderful subdivision,
 * from the explicit enumeration (cap n <= 8). */
isotoda_status isotoda_complex_face_counts(int n, int64_t* out /* n */);

/* JSON report: f/h/h'/h'' vectors (decimal strings beyond 64-bit),
 * crystallization checks, and optionally the full face poset. */
isotoda_status isotoda_tiling_json(int n, int include_poset, char** out);
void isotoda_string_free(char* s);

/* ---------------- Betti numbers and series ---------------- */

/* out: 2n+1 coefficients. */
isotoda_status isotoda_betti_table(int n, int n_plus, int n_minus,
                                   int64_t* out);

isotoda_status isotoda_most_degenerate_split(int n, int* out_n_plus,
                                             int* out_n_minus);

typedef struct isotoda_diagnostics {
    int64_t euler;
    int pi1_rank;
    int64_t odd_betti_total;
    int equivariantly_formal;
} isotoda_diagnostics;

isotoda_status isotoda_homology_diagnostics(int n, int n_plus, int n_minus,
                                            isotoda_diagnostics* out);

/* out: 2n+1 coefficients (trailing zeros included). */
isotoda_status isotoda_orbit_poincare(int n, int n_plus, int n_minus,
                                      int64_t* out);

/* Expansion coefficients t^0..t^{terms-1}. kind: 0 = collar series,
 * 1 = rational principal part, 2 = full-space series (n = 3 only). */
isotoda_status isotoda_equivariant_series(int n, int terms, int kind,
                                          int64_t* out);

#ifdef __cplusplus
}
#endif

#endif /* ISOTODA_H */
