#include "majed/majed.h"

#include <cstring>
#include <fstream>
#include <memory>
#include <string>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "eig.hpp"
#include "errors.hpp"
#include "fock.hpp"
#include "model.hpp"
#include "obs.hpp"
#include "selfcheck.hpp"
#include "sweep.hpp"

struct majed_basis {
    majed::SectorBasis basis;
};

struct majed_hamiltonian {
    majed::SparseHamiltonian matrix;
};

struct majed_eigen {
    majed::EigenResult result;
};

struct majed_sweep {
    majed::SweepResult result;
};

struct majed_selfcheck {
    std::vector<majed::CheckOutcome> outcomes;
};

namespace {

thread_local std::string g_last_error;

majed_status fail(majed_status status, const std::string& message) {
    g_last_error = message;
    return status;
}

// Runs `body` and maps the core's exception hierarchy onto status codes.
template <class F>
majed_status guarded(F&& body) {
    try {
        body();
        g_last_error.clear();
        return MAJED_OK;
    } catch (const majed::DomainError& e) {
        return fail(MAJED_ERR_DOMAIN, e.what());
    } catch (const majed::ResourceError& e) {
        return fail(MAJED_ERR_RESOURCE, e.what());
    } catch (const majed::ConvergenceError& e) {
        return fail(MAJED_ERR_CONVERGENCE, e.what());
    } catch (const majed::NumericalIntegrityError& e) {
        return fail(MAJED_ERR_NUMERICAL, e.what());
    } catch (const majed::NotFoundError& e) {
        return fail(MAJED_ERR_NOT_FOUND, e.what());
    } catch (const majed::DegenerateCrossingError& e) {
        return fail(MAJED_ERR_DEGENERATE, e.what());
    } catch (const std::bad_alloc&) {
        return fail(MAJED_ERR_RESOURCE, "out of memory");
    } catch (const std::exception& e) {
        return fail(MAJED_ERR_INTERNAL, e.what());
    }
}

#define MAJED_REQUIRE(cond)                                                               \
    do {                                                                                  \
        if (!(cond)) return fail(MAJED_ERR_INVALID_ARGUMENT, "invalid argument: " #cond); \
    } while (0)

majed::ModelParams to_core(const majed_params& p) {
    majed::ModelParams out;
    out.T = p.T;
    out.U_plus = p.U_plus;
    out.U_minus = p.U_minus;
    out.U = p.U;
    out.W = p.W;
    out.so_fwd = p.so_fwd;
    out.so_bwd = p.so_bwd;
    return out;
}

majed::Parity to_parity(int parity) {
    switch (parity) {
        case MAJED_PARITY_EVEN: return majed::Parity::Even;
        case MAJED_PARITY_ODD: return majed::Parity::Odd;
        case MAJED_PARITY_ALL: return majed::Parity::Unrestricted;
    }
    throw majed::DomainError("parity selector must be 0 (even), 1 (odd) or 2 (all)");
}

majed::Species to_species(int species) {
    if (species < 0 || species > 3) throw majed::DomainError("species index must be 0..3");
    return static_cast<majed::Species>(species);
}

majed::LogBase to_log_base(int base) { return base == MAJED_LOG_2 ? majed::LogBase::Two : majed::LogBase::Natural; }

majed::StateTransform transform_for(int transform, int num_sites) {
    switch (transform) {
        case MAJED_TRANSFORM_CHIRAL:
            return [num_sites](majed::FockState s) { return majed::chiral_transform(s, num_sites); };
        case MAJED_TRANSFORM_SPIN_ORBITAL_FLIP:
            return [num_sites](majed::FockState s) { return majed::spin_orbital_flip(s, num_sites); };
        case MAJED_TRANSFORM_ORBITAL_FLIP:
            return [num_sites](majed::FockState s) { return majed::orbital_flip(s, num_sites); };
        case MAJED_TRANSFORM_REFLECTED_SPIN_ORBITAL_FLIP:
            return [num_sites](majed::FockState s) { return majed::reflected_spin_orbital_flip(s, num_sites); };
    }
    throw majed::DomainError("unknown transform id " + std::to_string(transform));
}

const char* transform_name(int transform) {
    switch (transform) {
        case MAJED_TRANSFORM_CHIRAL: return "chiral";
        case MAJED_TRANSFORM_SPIN_ORBITAL_FLIP: return "spin-orbital flip";
        case MAJED_TRANSFORM_ORBITAL_FLIP: return "orbital flip";
        default: return "reflected spin-orbital flip";
    }
}

std::span<const double> vector_of(const majed_basis* basis, const double* vec) {
    return {vec, basis->basis.size()};
}

const majed::LevelObservables* level_observables(const majed_sweep* sweep, size_t point, int level) {
    if (!sweep || point >= sweep->result.points.size()) throw majed::DomainError("sweep point out of range");
    const auto& obs = sweep->result.points[point].observables;
    if (level < 0 || static_cast<size_t>(level) >= obs.size())
        throw majed::DomainError("no observables recorded for this level");
    return &obs[static_cast<size_t>(level)];
}

double pick(const std::vector<double>& values, size_t index, const char* what) {
    if (index >= values.size()) throw majed::DomainError(std::string(what) + " was not requested for this sweep");
    return values[index];
}

}  // namespace

extern "C" {

const char* majed_version(void) { return "1.0.0"; }

const char* majed_last_error(void) { return g_last_error.c_str(); }

const char* majed_status_name(majed_status status) {
    switch (status) {
        case MAJED_OK: return "ok";
        case MAJED_ERR_DOMAIN: return "domain error";
        case MAJED_ERR_RESOURCE: return "resource error";
        case MAJED_ERR_CONVERGENCE: return "convergence error";
        case MAJED_ERR_NUMERICAL: return "numerical-integrity error";
        case MAJED_ERR_NOT_FOUND: return "not found";
        case MAJED_ERR_DEGENERATE: return "degenerate crossing";
        case MAJED_ERR_INVALID_ARGUMENT: return "invalid argument";
        case MAJED_ERR_INTERNAL: return "internal error";
    }
    return "unknown status";
}

void majed_set_threads(int threads) {
#ifdef _OPENMP
    if (threads > 0) omp_set_num_threads(threads);
#else
    (void)threads;
#endif
}

void majed_params_preset(majed_params* out, double w_over_t) {
    if (!out) return;
    const auto p = majed::ModelParams::preset(w_over_t);
    *out = {p.T, p.U_plus, p.U_minus, p.U, p.W, p.so_fwd, p.so_bwd};
}

majed_status majed_basis_create(int num_sites, int num_particles, int parity, majed_basis** out) {
    MAJED_REQUIRE(out);
    *out = nullptr;
    return guarded([&] {
        *out = new majed_basis{majed::SectorBasis(num_sites, num_particles, to_parity(parity))};
    });
}

void majed_basis_destroy(majed_basis* basis) { delete basis; }
uint64_t majed_basis_size(const majed_basis* basis) { return basis ? basis->basis.size() : 0; }
int majed_basis_num_sites(const majed_basis* basis) { return basis ? basis->basis.num_sites() : 0; }
int majed_basis_num_particles(const majed_basis* basis) { return basis ? basis->basis.num_particles() : 0; }

majed_status majed_basis_state(const majed_basis* basis, uint64_t index, uint64_t* state) {
    MAJED_REQUIRE(basis && state);
    if (index >= basis->basis.size()) return fail(MAJED_ERR_DOMAIN, "basis index out of range");
    *state = basis->basis[index];
    return MAJED_OK;
}

int64_t majed_basis_find(const majed_basis* basis, uint64_t state) { return basis ? basis->basis.find(state) : -1; }

majed_status majed_sector_dimension(int num_sites, int num_particles, int parity, uint64_t* out) {
    MAJED_REQUIRE(out);
    return guarded([&] {
        const auto p = to_parity(parity);
        if (num_sites < 1 || num_sites > majed::kMaxSites) throw majed::DomainError("site count out of range");
        if (num_particles < 0 || num_particles > 4 * num_sites) throw majed::DomainError("particle number out of range");
        if (p == majed::Parity::Unrestricted) {
            *out = majed::binomial(4 * num_sites, num_particles);
        } else {
            *out = majed::SectorBasis(num_sites, num_particles, p).size();
        }
    });
}

int majed_parity_plus(uint64_t state) { return majed::parity_plus(state); }
int majed_parity_minus(uint64_t state) { return majed::parity_minus(state); }

majed_status majed_apply_string(const int* kinds, const int* modes, size_t count, uint64_t state, int* valid,
                                int* sign, uint64_t* out_state) {
    MAJED_REQUIRE((count == 0 || (kinds && modes)) && valid && sign && out_state);
    std::vector<majed::ModeOp> ops;
    for (size_t i = 0; i < count; ++i) {
        if (modes[i] < 0 || modes[i] >= 64) return fail(MAJED_ERR_DOMAIN, "mode index out of range");
        ops.push_back({kinds[i] == MAJED_CREATE ? majed::OpKind::Create : majed::OpKind::Annihilate, modes[i]});
    }
    const auto hit = majed::apply_string(ops, state);
    *valid = hit.has_value() ? 1 : 0;
    *sign = hit ? hit->sign : 0;
    *out_state = hit ? hit->state : 0;
    return MAJED_OK;
}

majed_status majed_transform_state(int transform, int num_sites, uint64_t state, int* sign, uint64_t* out_state) {
    MAJED_REQUIRE(sign && out_state);
    return guarded([&] {
        if (num_sites < 1 || num_sites > majed::kMaxSites) throw majed::DomainError("site count out of range");
        if (num_sites < majed::kMaxSites && (state >> (4 * num_sites)) != 0)
            throw majed::DomainError("state has modes beyond the lattice");
        const auto t = transform_for(transform, num_sites)(state);
        *sign = t.sign;
        *out_state = t.state;
    });
}

majed_status majed_hamiltonian_build(const majed_params* params, const majed_basis* basis, majed_hamiltonian** out) {
    MAJED_REQUIRE(params && basis && out);
    *out = nullptr;
    return guarded([&] { *out = new majed_hamiltonian{majed::build_hamiltonian(to_core(*params), basis->basis)}; });
}

void majed_hamiltonian_destroy(majed_hamiltonian* h) { delete h; }
uint64_t majed_hamiltonian_dim(const majed_hamiltonian* h) { return h ? h->matrix.dim() : 0; }
uint64_t majed_hamiltonian_nnz(const majed_hamiltonian* h) { return h ? h->matrix.nnz() : 0; }

majed_status majed_hamiltonian_apply(const majed_hamiltonian* h, const double* x, double* y) {
    MAJED_REQUIRE(h && x && y);
    const auto n = h->matrix.dim();
    return guarded([&] { h->matrix.apply({x, n}, {y, n}); });
}

double majed_hamiltonian_entry(const majed_hamiltonian* h, uint64_t row, uint64_t col) {
    if (!h || row >= h->matrix.dim() || col >= h->matrix.dim()) return 0.0;
    return h->matrix.at(row, col);
}

majed_status majed_hamiltonian_write_matrix_market(const majed_hamiltonian* h, const char* path) {
    MAJED_REQUIRE(h && path);
    return guarded([&] {
        std::ofstream out(path);
        if (!out) throw majed::ResourceError(std::string("cannot open ") + path);
        h->matrix.write_matrix_market(out);
    });
}

majed_status majed_check_symmetry(const majed_params* params, const majed_basis* basis, int transform,
                                  uint64_t max_columns, double* max_violation, int* swapped) {
    MAJED_REQUIRE(params && basis && max_violation && swapped);
    return guarded([&] {
        const auto report = majed::check_symmetry(transform_name(transform),
                                                  transform_for(transform, basis->basis.num_sites()),
                                                  to_core(*params), basis->basis, max_columns);
        *max_violation = report.max_violation;
        *swapped = report.sector_map == majed::SectorMap::Swapped ? 1 : 0;
    });
}

majed_status majed_lowest_k(const majed_hamiltonian* h, int k, double tol, uint64_t seed, majed_eigen** out) {
    MAJED_REQUIRE(h && out);
    *out = nullptr;
    try {
        majed::LanczosOptions options;
        options.k = k;
        options.tol = tol;
        options.seed = seed;
        *out = new majed_eigen{majed::lowest_k(h->matrix, options)};
        g_last_error.clear();
        return MAJED_OK;
    } catch (const majed::LanczosConvergenceError& e) {
        *out = new majed_eigen{e.best()};
        return fail(MAJED_ERR_CONVERGENCE, e.what());
    } catch (...) {
        return guarded([] { throw; });
    }
}

majed_status majed_dense_all(const majed_hamiltonian* h, uint64_t dim_cap, majed_eigen** out) {
    MAJED_REQUIRE(h && out);
    *out = nullptr;
    return guarded([&] {
        *out = new majed_eigen{majed::dense_all(h->matrix, dim_cap ? dim_cap : majed::kDefaultDenseCap)};
    });
}

void majed_eigen_destroy(majed_eigen* eig) { delete eig; }
int majed_eigen_count(const majed_eigen* eig) { return eig ? static_cast<int>(eig->result.eigenvalues.size()) : 0; }
uint64_t majed_eigen_dim(const majed_eigen* eig) {
    return eig && !eig->result.eigenvectors.empty() ? eig->result.eigenvectors[0].size() : 0;
}

double majed_eigen_value(const majed_eigen* eig, int i) {
    return eig && i >= 0 && i < majed_eigen_count(eig) ? eig->result.eigenvalues[static_cast<size_t>(i)] : 0.0;
}

double majed_eigen_residual(const majed_eigen* eig, int i) {
    return eig && i >= 0 && i < majed_eigen_count(eig) ? eig->result.residuals[static_cast<size_t>(i)] : 0.0;
}

const double* majed_eigen_vector(const majed_eigen* eig, int i) {
    return eig && i >= 0 && i < majed_eigen_count(eig) ? eig->result.eigenvectors[static_cast<size_t>(i)].data()
                                                       : nullptr;
}

int64_t majed_eigen_iterations(const majed_eigen* eig) { return eig ? eig->result.iterations : 0; }

majed_status majed_density(const majed_basis* basis, const double* vec, int species, int site, double* out) {
    MAJED_REQUIRE(basis && vec && out);
    return guarded([&] { *out = majed::density(vector_of(basis, vec), basis->basis, to_species(species), site); });
}

majed_status majed_green_function(const majed_basis* basis, const double* vec, int left_species, int right_species,
                                  int site, double* out) {
    MAJED_REQUIRE(basis && vec && out);
    return guarded([&] {
        *out = majed::green_function(vector_of(basis, vec), basis->basis, to_species(left_species),
                                     to_species(right_species), site);
    });
}

majed_status majed_region_entropy(const majed_basis* basis, const double* vec, int site_lo, int site_hi,
                                  int log_base, double* out) {
    MAJED_REQUIRE(basis && vec && out);
    return guarded([&] {
        *out = majed::region_entropy(vector_of(basis, vec), basis->basis, {site_lo, site_hi}, to_log_base(log_base));
    });
}

majed_status majed_mutual_information(const majed_basis* basis, const double* vec, int left_width, int right_width,
                                      int log_base, double* out) {
    MAJED_REQUIRE(basis && vec && out);
    return guarded([&] {
        *out = majed::mutual_information(vector_of(basis, vec), basis->basis, left_width, right_width,
                                         to_log_base(log_base));
    });
}

majed_status majed_local_parity(const majed_basis* basis, const double* vec, int site_lo, int site_hi, double* out) {
    MAJED_REQUIRE(basis && vec && out);
    return guarded([&] {
        *out = majed::local_parity_expectation(vector_of(basis, vec), basis->basis, majed::RegionSpec{site_lo, site_hi});
    });
}

majed_status majed_region_spectrum(const majed_basis* basis, const double* vec, int site_lo, int site_hi, double* out,
                                   size_t* count) {
    MAJED_REQUIRE(basis && vec && count);
    return guarded([&] {
        const auto spectrum = majed::region_spectrum(vector_of(basis, vec), basis->basis, {site_lo, site_hi});
        const size_t capacity = *count;
        *count = spectrum.size();
        if (out && capacity >= spectrum.size()) std::copy(spectrum.begin(), spectrum.end(), out);
    });
}

void majed_sweep_config_default(majed_sweep_config* out) {
    if (!out) return;
    const majed::SweepGrid grid;
    majed_params_preset(&out->base, 0.0);
    out->num_sites = grid.num_sites;
    out->num_particles = grid.num_particles;
    out->parity = MAJED_PARITY_EVEN;
    out->k = grid.k;
    out->tol = grid.tol;
    out->seed = grid.seed;
    out->warm_start = grid.warm_start ? 1 : 0;
}

majed_status majed_sweep_run(const majed_sweep_config* config, const double* w_over_t, size_t count,
                             const majed_observable_selection* observables, majed_progress_fn progress, void* user,
                             majed_sweep** out) {
    MAJED_REQUIRE(config && (w_over_t || count == 0) && out);
    *out = nullptr;
    return guarded([&] {
        majed::SweepGrid grid;
        grid.base = to_core(config->base);
        grid.num_sites = config->num_sites;
        grid.num_particles = config->num_particles;
        grid.sector = to_parity(config->parity);
        grid.k = config->k;
        grid.tol = config->tol;
        grid.seed = config->seed;
        grid.warm_start = config->warm_start != 0;
        grid.w_over_t.assign(w_over_t, w_over_t + count);
        if (observables) {
            auto& sel = grid.observables;
            sel.densities = observables->densities != 0;
            sel.green = observables->green != 0;
            sel.green_cross_orbital = observables->green_cross_orbital != 0;
            for (size_t i = 0; i < observables->mi_count; ++i)
                sel.mutual_information.emplace_back(observables->mi_pairs[2 * i], observables->mi_pairs[2 * i + 1]);
            for (size_t i = 0; i < observables->parity_count; ++i) sel.local_parity.push_back(observables->parity_cuts[i]);
            sel.invariants = observables->invariants != 0;
            sel.log_base = to_log_base(observables->log_base);
        }
        size_t index = 0;
        majed::PointObserver observer;
        if (progress)
            observer = [&](const majed::SweepPoint& p, const majed::EigenResult&, const majed::SectorBasis&) {
                progress(index++, count, p.w_over_t, user);
            };
        *out = new majed_sweep{majed::run_sweep(grid, observer)};
    });
}

void majed_sweep_destroy(majed_sweep* sweep) { delete sweep; }
size_t majed_sweep_num_points(const majed_sweep* sweep) { return sweep ? sweep->result.points.size() : 0; }

double majed_sweep_w_over_t(const majed_sweep* sweep, size_t point) {
    return sweep && point < sweep->result.points.size() ? sweep->result.points[point].w_over_t : 0.0;
}

int majed_sweep_num_levels(const majed_sweep* sweep, size_t point) {
    return sweep && point < sweep->result.points.size()
               ? static_cast<int>(sweep->result.points[point].energies.size())
               : 0;
}

#define MAJED_LEVEL_FIELD(fn, type, field, fallback)                                     \
    type fn(const majed_sweep* sweep, size_t point, int level) {                         \
        if (level < 0 || level >= majed_sweep_num_levels(sweep, point)) return fallback; \
        const auto& values = sweep->result.points[point].field;                          \
        return static_cast<size_t>(level) < values.size() ? values[static_cast<size_t>(level)] : fallback; \
    }

MAJED_LEVEL_FIELD(majed_sweep_energy, double, energies, 0.0)
MAJED_LEVEL_FIELD(majed_sweep_residual, double, residuals, 0.0)
MAJED_LEVEL_FIELD(majed_sweep_symmetry, int, symmetry, 0)
MAJED_LEVEL_FIELD(majed_sweep_branch, int, branch, -1)
MAJED_LEVEL_FIELD(majed_sweep_match_overlap, double, match_overlap, 0.0)

#undef MAJED_LEVEL_FIELD

int64_t majed_sweep_matvecs(const majed_sweep* sweep, size_t point) {
    return sweep && point < sweep->result.points.size() ? sweep->result.points[point].matvecs : 0;
}

const char* majed_sweep_point_error(const majed_sweep* sweep, size_t point) {
    if (!sweep || point >= sweep->result.points.size()) return "no such point";
    const auto& err = sweep->result.points[point].error;
    return err.empty() ? nullptr : err.c_str();
}

majed_status majed_sweep_density(const majed_sweep* sweep, size_t point, int level, int species, int site, double* out) {
    MAJED_REQUIRE(sweep && out);
    return guarded([&] {
        const int L = sweep->result.grid.num_sites;
        if (site < 1 || site > L) throw majed::DomainError("site out of range");
        const auto* obs = level_observables(sweep, point, level);
        *out = pick(obs->density, static_cast<size_t>(static_cast<int>(to_species(species)) * L + site - 1), "density");
    });
}

majed_status majed_sweep_green(const majed_sweep* sweep, size_t point, int level, int site, double* out) {
    MAJED_REQUIRE(sweep && out);
    return guarded([&] {
        if (site < 1) throw majed::DomainError("site out of range");
        *out = pick(level_observables(sweep, point, level)->green, static_cast<size_t>(site - 1), "green function");
    });
}

majed_status majed_sweep_mutual_information(const majed_sweep* sweep, size_t point, int level, size_t pair_index,
                                            double* out) {
    MAJED_REQUIRE(sweep && out);
    return guarded(
        [&] { *out = pick(level_observables(sweep, point, level)->mutual_information, pair_index, "mutual information"); });
}

majed_status majed_sweep_local_parity(const majed_sweep* sweep, size_t point, int level, size_t cut_index, double* out) {
    MAJED_REQUIRE(sweep && out);
    return guarded([&] { *out = pick(level_observables(sweep, point, level)->local_parity, cut_index, "local parity"); });
}

majed_status majed_sweep_invariants(const majed_sweep* sweep, size_t point, int level, majed_invariants* out) {
    MAJED_REQUIRE(sweep && out);
    return guarded([&] {
        const auto& inv = level_observables(sweep, point, level)->invariants;
        if (!inv) throw majed::DomainError("invariants were not requested for this sweep");
        *out = {inv->number_sum_error, inv->entropy_complement_error, inv->min_mutual_information, inv->parity_cut_error};
    });
}

majed_status majed_fit_cubic(const double* x, const double* y, size_t count, double coefficients[4],
                             double* residual_rms) {
    MAJED_REQUIRE(x && y && coefficients);
    return guarded([&] {
        const auto fit = majed::fit_cubic({x, count}, {y, count});
        std::copy(fit.coefficients.begin(), fit.coefficients.end(), coefficients);
        if (residual_rms) *residual_rms = fit.residual_rms;
    });
}

majed_status majed_cubic_shift_fit(const majed_sweep* sweep, double coefficients[4], double* residual_rms) {
    MAJED_REQUIRE(sweep && coefficients);
    return guarded([&] {
        const auto fit = majed::cubic_shift_fit(sweep->result);
        std::copy(fit.coefficients.begin(), fit.coefficients.end(), coefficients);
        if (residual_rms) *residual_rms = fit.residual_rms;
    });
}

majed_status majed_find_avoided_crossing(const majed_sweep* const* sweeps, size_t sweep_count, int lo_symmetry,
                                         int lo_rank, int hi_symmetry, int hi_rank, double T, double window_inner,
                                         double window_outer, majed_crossing* out) {
    MAJED_REQUIRE(sweeps && sweep_count > 0 && out);
    return guarded([&] {
        std::vector<majed::SweepPoint> points;
        for (size_t i = 0; i < sweep_count; ++i) {
            if (!sweeps[i]) throw majed::DomainError("null sweep handle");
            points.insert(points.end(), sweeps[i]->result.points.begin(), sweeps[i]->result.points.end());
        }
        majed::CrossingOptions options;
        if (window_inner > 0) options.window_inner = window_inner;
        if (window_outer > 0) options.window_outer = window_outer;
        const auto r = majed::find_avoided_crossing(points, {lo_symmetry, lo_rank}, {hi_symmetry, hi_rank}, T, options);
        *out = {r.w_star, r.gap, r.slope_lo, r.slope_hi, lo_symmetry, lo_rank, hi_symmetry, hi_rank};
    });
}

majed_status majed_landau_zener(const majed_crossing* crossing, double tunneling_hz, const double* rates,
                                size_t rate_count, majed_lz_summary* summary, double* gamma, double* probability) {
    MAJED_REQUIRE(crossing && (rates || rate_count == 0));
    return guarded([&] {
        majed::CrossingReport c;
        c.w_star = crossing->w_star;
        c.gap = crossing->gap;
        c.slope_lo = crossing->slope_lo;
        c.slope_hi = crossing->slope_hi;
        const auto r = majed::landau_zener(c, tunneling_hz, std::vector<double>(rates, rates + rate_count));
        if (summary) *summary = {r.tunneling_hz, r.gap_hz, r.slope_difference, r.gamma_times_rate, r.critical_rate};
        for (size_t i = 0; i < rate_count; ++i) {
            if (gamma) gamma[i] = r.gamma[i];
            if (probability) probability[i] = r.probability[i];
        }
    });
}

majed_status majed_selfcheck_run(majed_selfcheck** out) {
    MAJED_REQUIRE(out);
    *out = nullptr;
    return guarded([&] { *out = new majed_selfcheck{majed::run_selfcheck()}; });
}

void majed_selfcheck_destroy(majed_selfcheck* check) { delete check; }
size_t majed_selfcheck_count(const majed_selfcheck* check) { return check ? check->outcomes.size() : 0; }

const char* majed_selfcheck_name(const majed_selfcheck* check, size_t i) {
    return check && i < check->outcomes.size() ? check->outcomes[i].name.c_str() : "";
}

int majed_selfcheck_passed(const majed_selfcheck* check, size_t i) {
    return check && i < check->outcomes.size() && check->outcomes[i].passed ? 1 : 0;
}

double majed_selfcheck_measured(const majed_selfcheck* check, size_t i) {
    return check && i < check->outcomes.size() ? check->outcomes[i].measured : 0.0;
}

double majed_selfcheck_tolerance(const majed_selfcheck* check, size_t i) {
    return check && i < check->outcomes.size() ? check->outcomes[i].tolerance : 0.0;
}

void majed_debug_corrupt_signs(int enabled) { majed::testing::set_sign_corruption(enabled != 0); }

}  // extern "C"
