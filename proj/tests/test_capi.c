/* Exercises the C API from plain C: handle lifecycle, status codes, and a small end-to-end run. */
#include <math.h>
#include <stdio.h>
#include <stdlib.h>
#include <string.h>

#include "majed/majed.h"

static int failures = 0;

#define EXPECT(cond)                                                     \
    do {                                                                 \
        if (!(cond)) {                                                   \
            fprintf(stderr, "%s:%d: expectation failed: %s\n", __FILE__, \
                    __LINE__, #cond);                                    \
            ++failures;                                                  \
        }                                                                \
    } while (0)

static void test_basis(void) {
    uint64_t dim = 0;
    EXPECT(majed_sector_dimension(7, 7, MAJED_PARITY_ALL, &dim) == MAJED_OK && dim == 1184040u);
    EXPECT(majed_sector_dimension(7, 7, MAJED_PARITY_EVEN, &dim) == MAJED_OK && dim == 592020u);
    EXPECT(majed_sector_dimension(2, 9, MAJED_PARITY_EVEN, &dim) == MAJED_ERR_DOMAIN);
    EXPECT(strlen(majed_last_error()) > 0);

    majed_basis* b = NULL;
    EXPECT(majed_basis_create(1, 2, MAJED_PARITY_EVEN, &b) == MAJED_OK);
    EXPECT(majed_basis_size(b) == 2);
    uint64_t s = 0;
    EXPECT(majed_basis_state(b, 1, &s) == MAJED_OK && s == 9u);
    EXPECT(majed_basis_find(b, 9u) == 1);
    EXPECT(majed_basis_find(b, 1u) == -1);
    EXPECT(majed_basis_state(b, 2, &s) == MAJED_ERR_DOMAIN);
    majed_basis_destroy(b);

    EXPECT(majed_basis_create(0, 0, MAJED_PARITY_EVEN, &b) == MAJED_ERR_DOMAIN && b == NULL);
    EXPECT(majed_basis_create(2, 2, 7, &b) == MAJED_ERR_DOMAIN);
    EXPECT(majed_basis_create(2, 2, MAJED_PARITY_EVEN, NULL) == MAJED_ERR_INVALID_ARGUMENT);
}

static void test_operators(void) {
    /* a^dag_3 a^dag_0 |0> = -|1001> ... applied right to left: a^dag_0 first, then a^dag_3 */
    const int kinds[] = {MAJED_CREATE, MAJED_CREATE};
    const int modes[] = {3, 0};
    int valid = 0, sign = 0;
    uint64_t out = 0;
    EXPECT(majed_apply_string(kinds, modes, 2, 0, &valid, &sign, &out) == MAJED_OK);
    EXPECT(valid == 1 && out == 9u && sign == -1);
    EXPECT(majed_apply_string(kinds, modes, 2, 1, &valid, &sign, &out) == MAJED_OK && valid == 0);
    EXPECT(majed_parity_plus(9u) == 0 && majed_parity_minus(6u) == 0 && majed_parity_plus(1u) == 1);
    EXPECT(majed_transform_state(MAJED_TRANSFORM_CHIRAL, 2, 1u, &sign, &out) == MAJED_OK);
    EXPECT(majed_transform_state(MAJED_TRANSFORM_CHIRAL, 2, 1u << 9, &sign, &out) == MAJED_ERR_DOMAIN);
}

static void test_solve(void) {
    majed_params p;
    majed_params_preset(&p, 14.0);
    EXPECT(p.T == -1.0 && p.W == -14.0 && p.so_fwd == 8.0);

    majed_basis* b = NULL;
    majed_hamiltonian* h = NULL;
    majed_eigen* lz = NULL;
    majed_eigen* dense = NULL;
    EXPECT(majed_basis_create(3, 3, MAJED_PARITY_EVEN, &b) == MAJED_OK);
    EXPECT(majed_hamiltonian_build(&p, b, &h) == MAJED_OK);
    EXPECT(majed_hamiltonian_dim(h) == majed_basis_size(b));
    EXPECT(majed_hamiltonian_nnz(h) > 0);
    EXPECT(majed_lowest_k(h, 4, 1e-10, 1, &lz) == MAJED_OK);
    EXPECT(majed_dense_all(h, 0, &dense) == MAJED_OK);
    for (int i = 0; i < 4; ++i) EXPECT(fabs(majed_eigen_value(lz, i) - majed_eigen_value(dense, i)) < 1e-9);
    EXPECT(majed_eigen_count(lz) == 4 && majed_eigen_dim(lz) == majed_basis_size(b));
    EXPECT(majed_eigen_residual(lz, 0) < 1e-8);

    const double* v = majed_eigen_vector(lz, 0);
    double n = 0, total = 0, mi = 0, s1 = 0, s3 = 0, pl = 0;
    for (int sp = 0; sp < 4; ++sp)
        for (int j = 1; j <= 3; ++j) {
            EXPECT(majed_density(b, v, sp, j, &n) == MAJED_OK);
            total += n;
        }
    EXPECT(fabs(total - 3.0) < 1e-12);
    EXPECT(majed_mutual_information(b, v, 1, 1, MAJED_LOG_E, &mi) == MAJED_OK && mi > -1e-12);
    EXPECT(majed_mutual_information(b, v, 2, 1, MAJED_LOG_E, &mi) == MAJED_ERR_DOMAIN);
    EXPECT(majed_region_entropy(b, v, 1, 1, MAJED_LOG_E, &s1) == MAJED_OK);
    EXPECT(majed_region_entropy(b, v, 2, 3, MAJED_LOG_E, &s3) == MAJED_OK);
    EXPECT(fabs(s1 - s3) < 1e-10);
    EXPECT(majed_local_parity(b, v, 1, 2, &pl) == MAJED_OK && pl >= 0 && pl <= 1);

    size_t count = 0;
    EXPECT(majed_region_spectrum(b, v, 1, 1, NULL, &count) == MAJED_OK && count > 0);
    double* spec = malloc(count * sizeof *spec);
    EXPECT(majed_region_spectrum(b, v, 1, 1, spec, &count) == MAJED_OK);
    double tr = 0;
    for (size_t i = 0; i < count; ++i) tr += spec[i];
    EXPECT(fabs(tr - 1.0) < 1e-12);
    free(spec);

    double violation = 1;
    int swapped = 0;
    EXPECT(majed_check_symmetry(&p, b, MAJED_TRANSFORM_CHIRAL, 0, &violation, &swapped) == MAJED_OK);
    EXPECT(violation < 1e-12 && swapped == 1);

    majed_eigen_destroy(dense);
    EXPECT(majed_dense_all(h, 2, &dense) == MAJED_ERR_RESOURCE && dense == NULL);
    majed_eigen_destroy(lz);
    majed_hamiltonian_destroy(h);
    majed_basis_destroy(b);
}

static void count_progress(size_t index, size_t total, double w, void* user) {
    (void)index;
    (void)total;
    (void)w;
    ++*(int*)user;
}

static void test_sweep(void) {
    majed_sweep_config cfg;
    majed_sweep_config_default(&cfg);
    EXPECT(cfg.num_sites == 7 && cfg.num_particles == 7 && cfg.parity == MAJED_PARITY_EVEN);
    cfg.num_sites = 3;
    cfg.num_particles = 4;
    cfg.k = 4;
    double grid[12];
    for (int i = 0; i < 12; ++i) grid[i] = 8.0 + i;
    const int pairs[] = {1, 1};
    const int cuts[] = {1};
    majed_observable_selection sel = {1, 1, 0, pairs, 1, cuts, 1, 1, MAJED_LOG_2};
    int calls = 0;
    majed_sweep* s = NULL;
    EXPECT(majed_sweep_run(&cfg, grid, 12, &sel, count_progress, &calls, &s) == MAJED_OK);
    EXPECT(calls == 12);
    EXPECT(majed_sweep_num_points(s) == 12 && majed_sweep_num_levels(s, 0) == 4);
    EXPECT(majed_sweep_point_error(s, 0) == NULL);
    double x = 0;
    majed_invariants inv;
    EXPECT(majed_sweep_density(s, 3, 1, 0, 2, &x) == MAJED_OK);
    EXPECT(majed_sweep_green(s, 3, 0, 1, &x) == MAJED_OK);
    EXPECT(majed_sweep_mutual_information(s, 3, 0, 0, &x) == MAJED_OK);
    EXPECT(majed_sweep_mutual_information(s, 3, 0, 1, &x) == MAJED_ERR_DOMAIN);
    EXPECT(majed_sweep_local_parity(s, 3, 0, 0, &x) == MAJED_OK);
    EXPECT(majed_sweep_invariants(s, 5, 2, &inv) == MAJED_OK);
    EXPECT(inv.number_sum_error < 1e-12 && inv.entropy_complement_error < 1e-10);
    EXPECT(abs(majed_sweep_symmetry(s, 0, 0)) == 1);

    double c[4], rms = 0;
    EXPECT(majed_cubic_shift_fit(s, c, &rms) == MAJED_OK);
    majed_sweep_destroy(s);

    cfg.k = 0;
    EXPECT(majed_sweep_run(&cfg, grid, 12, NULL, NULL, NULL, &s) == MAJED_ERR_DOMAIN);
}

static void test_lz(void) {
    majed_crossing c = {13.9, 0.0, -1.0, -2.0, 1, 0, 1, 1};
    const double rates[] = {136.0, 1360.0};
    double gamma[2], prob[2];
    majed_lz_summary sum;
    EXPECT(majed_landau_zener(&c, 100.0, rates, 2, &sum, gamma, prob) == MAJED_ERR_DEGENERATE);
    c.gap = 0.1;
    EXPECT(majed_landau_zener(&c, 100.0, rates, 2, &sum, gamma, prob) == MAJED_OK);
    EXPECT(fabs(gamma[0] * 136.0 - sum.gamma_times_rate) < 1e-9 * sum.gamma_times_rate);
    EXPECT(prob[0] > prob[1]);

    double x[] = {0, 1, 2, 3, 4}, y[5], coeff[4];
    for (int i = 0; i < 5; ++i) y[i] = 2 * x[i] * x[i] * x[i] - x[i] + 5;
    EXPECT(majed_fit_cubic(x, y, 5, coeff, NULL) == MAJED_OK);
    EXPECT(fabs(coeff[0] - 2) < 1e-10 && fabs(coeff[2] + 1) < 1e-10 && fabs(coeff[3] - 5) < 1e-10);
    EXPECT(majed_fit_cubic(x, y, 3, coeff, NULL) == MAJED_ERR_DOMAIN);
}

static void test_selfcheck(void) {
    majed_selfcheck* sc = NULL;
    EXPECT(majed_selfcheck_run(&sc) == MAJED_OK);
    for (size_t i = 0; i < majed_selfcheck_count(sc); ++i) EXPECT(majed_selfcheck_passed(sc, i));
    majed_selfcheck_destroy(sc);

    majed_debug_corrupt_signs(1);
    EXPECT(majed_selfcheck_run(&sc) == MAJED_OK);
    majed_debug_corrupt_signs(0);
    EXPECT(!majed_selfcheck_passed(sc, 0));
    EXPECT(strstr(majed_selfcheck_name(sc, 0), "anticommutation") != NULL);
    majed_selfcheck_destroy(sc);
}

int main(void) {
    EXPECT(strlen(majed_version()) > 0);
    EXPECT(strcmp(majed_status_name(MAJED_ERR_CONVERGENCE), "convergence error") == 0);
    test_basis();
    test_operators();
    test_solve();
    test_sweep();
    test_lz();
    test_selfcheck();
    if (failures) {
        fprintf(stderr, "%d C API expectations failed\n", failures);
        return 1;
    }
    puts("C API: all expectations passed");
    return 0;
}
