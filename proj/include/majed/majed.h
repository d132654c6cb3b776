/*
 * majed: exact diagonalization of the four-species interacting fermion chain
 * (tunneling, on-site, spin-orbit and spin-exchange terms) with observables for
 * Majorana edge-mode diagnostics.
 *
 * Conventions
 *   - Sites are 1-based in every function taking a site or region.
 *   - Species indices: 0 = (up,+), 1 = (down,+), 2 = (up,-), 3 = (down,-).
 *   - Mode index m = 4 * (site - 1) + species; Fock states are 64-bit occupation words.
 *   - Energies are in units of |T|; W/T grids use W = (W/T) * T.
 *   - Every function returning majed_status leaves a message in majed_last_error() on failure.
 *   - Handles are created by *_create / *_build / *_run and released by the matching *_destroy.
 */
#ifndef MAJED_MAJED_H
#define MAJED_MAJED_H

#include <stddef.h>
#include <stdint.h>

#if defined(MAJED_BUILDING_LIBRARY)
#define MAJED_API __attribute__((visibility("default")))
#else
#define MAJED_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum majed_status {
    MAJED_OK = 0,
    MAJED_ERR_DOMAIN = 1,
    MAJED_ERR_RESOURCE = 2,
    MAJED_ERR_CONVERGENCE = 3,
    MAJED_ERR_NUMERICAL = 4,
    MAJED_ERR_NOT_FOUND = 5,
    MAJED_ERR_DEGENERATE = 6,
    MAJED_ERR_INVALID_ARGUMENT = 7,
    MAJED_ERR_INTERNAL = 8
} majed_status;

enum { MAJED_PARITY_EVEN = 0, MAJED_PARITY_ODD = 1, MAJED_PARITY_ALL = 2 };
enum { MAJED_CREATE = 0, MAJED_ANNIHILATE = 1 };
enum { MAJED_LOG_E = 0, MAJED_LOG_2 = 1 };
enum {
    MAJED_TRANSFORM_CHIRAL = 0,
    MAJED_TRANSFORM_SPIN_ORBITAL_FLIP = 1,
    MAJED_TRANSFORM_ORBITAL_FLIP = 2,
    MAJED_TRANSFORM_REFLECTED_SPIN_ORBITAL_FLIP = 3
};

typedef struct majed_basis majed_basis;
typedef struct majed_hamiltonian majed_hamiltonian;
typedef struct majed_eigen majed_eigen;
typedef struct majed_sweep majed_sweep;
typedef struct majed_selfcheck majed_selfcheck;

/* Couplings in units of |T|; so_fwd = b + alpha_R, so_bwd = b - alpha_R. */
typedef struct majed_params {
    double T;
    double U_plus;
    double U_minus;
    double U;
    double W;
    double so_fwd;
    double so_bwd;
} majed_params;

MAJED_API const char* majed_version(void);
MAJED_API const char* majed_last_error(void);
MAJED_API const char* majed_status_name(majed_status status);
/* Worker threads for matrix assembly and matvecs; 0 keeps the runtime default. */
MAJED_API void majed_set_threads(int threads);

/* T = -1, (U+-, U, b+aR, b-aR) = (0, 0, 8, 0), W = w_over_t * T. */
MAJED_API void majed_params_preset(majed_params* out, double w_over_t);

/* ---- Fock basis ---------------------------------------------------------------------- */

MAJED_API majed_status majed_basis_create(int num_sites, int num_particles, int parity, majed_basis** out);
MAJED_API void majed_basis_destroy(majed_basis* basis);
MAJED_API uint64_t majed_basis_size(const majed_basis* basis);
MAJED_API int majed_basis_num_sites(const majed_basis* basis);
MAJED_API int majed_basis_num_particles(const majed_basis* basis);
MAJED_API majed_status majed_basis_state(const majed_basis* basis, uint64_t index, uint64_t* state);
/* Index of `state`, or -1 when it is not in the sector. */
MAJED_API int64_t majed_basis_find(const majed_basis* basis, uint64_t state);
/* Sector size without enumerating: C(4L, N) for MAJED_PARITY_ALL. */
MAJED_API majed_status majed_sector_dimension(int num_sites, int num_particles, int parity, uint64_t* out);

MAJED_API int majed_parity_plus(uint64_t state);
MAJED_API int majed_parity_minus(uint64_t state);
/* Operator string applied right to left. *valid = 0 when an operator meets a forbidden occupancy. */
MAJED_API majed_status majed_apply_string(const int* kinds, const int* modes, size_t count, uint64_t state,
                                          int* valid, int* sign, uint64_t* out_state);
MAJED_API majed_status majed_transform_state(int transform, int num_sites, uint64_t state, int* sign,
                                             uint64_t* out_state);

/* ---- Hamiltonian ---------------------------------------------------------------------- */

MAJED_API majed_status majed_hamiltonian_build(const majed_params* params, const majed_basis* basis,
                                               majed_hamiltonian** out);
MAJED_API void majed_hamiltonian_destroy(majed_hamiltonian* h);
MAJED_API uint64_t majed_hamiltonian_dim(const majed_hamiltonian* h);
MAJED_API uint64_t majed_hamiltonian_nnz(const majed_hamiltonian* h);
MAJED_API majed_status majed_hamiltonian_apply(const majed_hamiltonian* h, const double* x, double* y);
MAJED_API double majed_hamiltonian_entry(const majed_hamiltonian* h, uint64_t row, uint64_t col);
/* Matrix Market coordinate format, lower triangle, 17 significant digits. */
MAJED_API majed_status majed_hamiltonian_write_matrix_market(const majed_hamiltonian* h, const char* path);

/* Commutator residual of a signed-permutation symmetry on the sector; *swapped = 1 if it maps
 * the sector onto the opposite parity sector. Checks every column when max_columns = 0. */
MAJED_API majed_status majed_check_symmetry(const majed_params* params, const majed_basis* basis, int transform,
                                            uint64_t max_columns, double* max_violation, int* swapped);

/* ---- Eigensolvers --------------------------------------------------------------------- */

/* On MAJED_ERR_CONVERGENCE *out still receives the best-so-far result. */
MAJED_API majed_status majed_lowest_k(const majed_hamiltonian* h, int k, double tol, uint64_t seed,
                                      majed_eigen** out);
MAJED_API majed_status majed_dense_all(const majed_hamiltonian* h, uint64_t dim_cap, majed_eigen** out);
MAJED_API void majed_eigen_destroy(majed_eigen* eig);
MAJED_API int majed_eigen_count(const majed_eigen* eig);
MAJED_API uint64_t majed_eigen_dim(const majed_eigen* eig);
MAJED_API double majed_eigen_value(const majed_eigen* eig, int i);
MAJED_API double majed_eigen_residual(const majed_eigen* eig, int i);
MAJED_API const double* majed_eigen_vector(const majed_eigen* eig, int i);
MAJED_API int64_t majed_eigen_iterations(const majed_eigen* eig);

/* ---- Observables of a normalized sector vector ---------------------------------------- */

MAJED_API majed_status majed_density(const majed_basis* basis, const double* vec, int species, int site,
                                     double* out);
/* <a^dag_{left,1} a_{right,site}> */
MAJED_API majed_status majed_green_function(const majed_basis* basis, const double* vec, int left_species,
                                            int right_species, int site, double* out);
MAJED_API majed_status majed_region_entropy(const majed_basis* basis, const double* vec, int site_lo, int site_hi,
                                            int log_base, double* out);
/* S_A + S_C - S_B, A = sites 1..left_width, C = the last right_width sites. */
MAJED_API majed_status majed_mutual_information(const majed_basis* basis, const double* vec, int left_width,
                                                int right_width, int log_base, double* out);
MAJED_API majed_status majed_local_parity(const majed_basis* basis, const double* vec, int site_lo, int site_hi,
                                          double* out);
/* Region density-matrix spectrum; *count receives its length, values are copied when `out` is non-null
 * and *count on entry is large enough. */
MAJED_API majed_status majed_region_spectrum(const majed_basis* basis, const double* vec, int site_lo, int site_hi,
                                             double* out, size_t* count);

/* ---- Sweeps, crossing and Landau-Zener ------------------------------------------------ */

typedef struct majed_sweep_config {
    majed_params base; /* W is overwritten per point */
    int num_sites;
    int num_particles;
    int parity;
    int k;
    double tol;
    uint64_t seed;
    int warm_start;
} majed_sweep_config;

typedef struct majed_observable_selection {
    int densities;
    int green;
    int green_cross_orbital;
    const int* mi_pairs; /* (L_A, L_C) pairs, flattened */
    size_t mi_count;
    const int* parity_cuts; /* L_A values */
    size_t parity_count;
    int invariants;
    int log_base;
} majed_observable_selection;

typedef struct majed_invariants {
    double number_sum_error;
    double entropy_complement_error;
    double min_mutual_information;
    double parity_cut_error;
} majed_invariants;

typedef void (*majed_progress_fn)(size_t index, size_t total, double w_over_t, void* user);

MAJED_API void majed_sweep_config_default(majed_sweep_config* out);
/* Per-point solver failures do not fail the run; see majed_sweep_point_error. */
MAJED_API majed_status majed_sweep_run(const majed_sweep_config* config, const double* w_over_t, size_t count,
                                       const majed_observable_selection* observables, majed_progress_fn progress,
                                       void* user, majed_sweep** out);
MAJED_API void majed_sweep_destroy(majed_sweep* sweep);
MAJED_API size_t majed_sweep_num_points(const majed_sweep* sweep);
MAJED_API double majed_sweep_w_over_t(const majed_sweep* sweep, size_t point);
MAJED_API int majed_sweep_num_levels(const majed_sweep* sweep, size_t point);
MAJED_API double majed_sweep_energy(const majed_sweep* sweep, size_t point, int level);
MAJED_API double majed_sweep_residual(const majed_sweep* sweep, size_t point, int level);
MAJED_API int majed_sweep_symmetry(const majed_sweep* sweep, size_t point, int level);
MAJED_API int majed_sweep_branch(const majed_sweep* sweep, size_t point, int level);
MAJED_API double majed_sweep_match_overlap(const majed_sweep* sweep, size_t point, int level);
MAJED_API int64_t majed_sweep_matvecs(const majed_sweep* sweep, size_t point);
/* NULL when the point converged. */
MAJED_API const char* majed_sweep_point_error(const majed_sweep* sweep, size_t point);
MAJED_API majed_status majed_sweep_density(const majed_sweep* sweep, size_t point, int level, int species, int site,
                                           double* out);
MAJED_API majed_status majed_sweep_green(const majed_sweep* sweep, size_t point, int level, int site, double* out);
MAJED_API majed_status majed_sweep_mutual_information(const majed_sweep* sweep, size_t point, int level,
                                                      size_t pair_index, double* out);
MAJED_API majed_status majed_sweep_local_parity(const majed_sweep* sweep, size_t point, int level, size_t cut_index,
                                                double* out);
MAJED_API majed_status majed_sweep_invariants(const majed_sweep* sweep, size_t point, int level,
                                              majed_invariants* out);

/* Coefficients ordered c3, c2, c1, c0. */
MAJED_API majed_status majed_fit_cubic(const double* x, const double* y, size_t count, double coefficients[4],
                                       double* residual_rms);
MAJED_API majed_status majed_cubic_shift_fit(const majed_sweep* sweep, double coefficients[4], double* residual_rms);

typedef struct majed_crossing {
    double w_star;
    double gap;
    double slope_lo;
    double slope_hi;
    int branch_lo_symmetry;
    int branch_lo_rank;
    int branch_hi_symmetry;
    int branch_hi_rank;
} majed_crossing;

/* Pools the points of several sweeps (e.g. a coarse grid plus a refinement). Branches are
 * adiabatic levels: the rank-th level among those with the given symmetry label (0 = any). */
MAJED_API majed_status majed_find_avoided_crossing(const majed_sweep* const* sweeps, size_t sweep_count,
                                                   int lo_symmetry, int lo_rank, int hi_symmetry, int hi_rank,
                                                   double T, double window_inner, double window_outer,
                                                   majed_crossing* out);

typedef struct majed_lz_summary {
    double tunneling_hz;
    double gap_hz;
    double slope_difference;
    double gamma_times_rate;
    double critical_rate;
} majed_lz_summary;

/* gamma and probability arrays (may be NULL) receive one entry per rate. */
MAJED_API majed_status majed_landau_zener(const majed_crossing* crossing, double tunneling_hz, const double* rates,
                                          size_t rate_count, majed_lz_summary* summary, double* gamma,
                                          double* probability);

/* ---- Self-check ----------------------------------------------------------------------- */

MAJED_API majed_status majed_selfcheck_run(majed_selfcheck** out);
MAJED_API void majed_selfcheck_destroy(majed_selfcheck* check);
MAJED_API size_t majed_selfcheck_count(const majed_selfcheck* check);
MAJED_API const char* majed_selfcheck_name(const majed_selfcheck* check, size_t i);
MAJED_API int majed_selfcheck_passed(const majed_selfcheck* check, size_t i);
MAJED_API double majed_selfcheck_measured(const majed_selfcheck* check, size_t i);
MAJED_API double majed_selfcheck_tolerance(const majed_selfcheck* check, size_t i);
/* Negative-control hook: nonzero drops every fermionic sign. */
MAJED_API void majed_debug_corrupt_signs(int enabled);

#ifdef __cplusplus
}
#endif

#endif /* MAJED_MAJED_H */
