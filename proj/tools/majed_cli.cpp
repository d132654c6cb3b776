// Command-line front end over the majed C API.

#include <cmath>
#include <cstdio>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "config.hpp"
#include "json.hpp"
#include "majed/majed.h"
#include "output.hpp"

namespace {

using nlohmann::json;
using cli::ConfigError;
using cli::CsvWriter;
using cli::OutputManifest;
using cli::RunConfig;

constexpr int kExitOk = 0;
constexpr int kExitFailure = 1;
constexpr int kExitConfig = 2;
constexpr int kExitConvergence = 3;
constexpr int kExitNumerical = 4;

struct ApiError : std::runtime_error {
    ApiError(majed_status s, const std::string& what) : std::runtime_error(what), status(s) {}
    majed_status status;
};

void check(majed_status status) {
    if (status != MAJED_OK)
        throw ApiError(status, std::string(majed_status_name(status)) + ": " + majed_last_error());
}

int exit_code_for(majed_status status) {
    switch (status) {
        case MAJED_OK: return kExitOk;
        case MAJED_ERR_DOMAIN:
        case MAJED_ERR_INVALID_ARGUMENT:
        case MAJED_ERR_RESOURCE: return kExitConfig;
        case MAJED_ERR_CONVERGENCE: return kExitConvergence;
        case MAJED_ERR_NUMERICAL:
        case MAJED_ERR_NOT_FOUND:
        case MAJED_ERR_DEGENERATE: return kExitNumerical;
        default: return kExitFailure;
    }
}

struct SweepDeleter {
    void operator()(majed_sweep* s) const { majed_sweep_destroy(s); }
};
using SweepPtr = std::unique_ptr<majed_sweep, SweepDeleter>;

json config_json(const RunConfig& c) {
    json mi = json::array(), rates = json::array();
    for (const auto& [a, b] : c.mi) mi.push_back({a, b});
    for (double r : c.rates) rates.push_back(r);
    return {{"model",
             {{"T", c.params.T},
              {"U_plus", c.params.U_plus},
              {"U_minus", c.params.U_minus},
              {"U", c.params.U},
              {"so_fwd", c.params.so_fwd},
              {"so_bwd", c.params.so_bwd}}},
            {"system", {{"L", c.num_sites}, {"N", c.num_particles}, {"sector", c.sector}}},
            {"sweep", {{"grid", c.grid.text()}, {"w_over_t", c.w_over_t}, {"warm_start", c.warm_start}}},
            {"solver", {{"k", c.k}, {"tol", c.tol}, {"seed", c.seed}, {"threads", c.threads}}},
            {"observables",
             {{"densities", c.densities},
              {"green", c.green},
              {"green_cross_orbital", c.green_cross_orbital},
              {"mi", mi},
              {"parity", c.parity},
              {"invariants", c.invariants},
              {"states", c.states},
              {"log_base", c.log_base}}},
            {"lz",
             {{"T_hz", c.tunneling_hz},
              {"rates", rates},
              {"window_inner", c.window_inner},
              {"window_outer", c.window_outer},
              {"branch_lo", {c.branch_lo.first, c.branch_lo.second}},
              {"branch_hi", {c.branch_hi.first, c.branch_hi.second}},
              {"refine_step", c.refine_step},
              {"refine_halfwidth", c.refine_halfwidth}}}};
}

/// Owns the flattened arrays a majed_observable_selection points into.
struct Selection {
    std::vector<int> mi_flat;
    std::vector<int> parity;
    majed_observable_selection c{};

    Selection(const RunConfig& cfg, bool densities, bool green, bool mi, bool local_parity) {
        for (const auto& [a, b] : cfg.mi) {
            mi_flat.push_back(a);
            mi_flat.push_back(b);
        }
        parity = cfg.parity;
        c.densities = densities ? 1 : 0;
        c.green = green ? 1 : 0;
        c.green_cross_orbital = cfg.green_cross_orbital ? 1 : 0;
        c.mi_pairs = mi ? mi_flat.data() : nullptr;
        c.mi_count = mi ? cfg.mi.size() : 0;
        c.parity_cuts = local_parity ? parity.data() : nullptr;
        c.parity_count = local_parity ? parity.size() : 0;
        c.invariants = cfg.invariants ? 1 : 0;
        c.log_base = cfg.log_base_code();
    }
};

void report_progress(size_t index, size_t total, double w_over_t, void*) {
    std::fprintf(stderr, "  [%zu/%zu] W/T = %.6g\n", index + 1, total, w_over_t);
}

SweepPtr run_sweep(const RunConfig& cfg, const std::vector<double>& points, const majed_observable_selection* sel) {
    majed_sweep_config sc;
    majed_sweep_config_default(&sc);
    sc.base = cfg.params;
    sc.num_sites = cfg.num_sites;
    sc.num_particles = cfg.num_particles;
    sc.parity = cfg.parity_code();
    sc.k = cfg.k;
    sc.tol = cfg.tol;
    sc.seed = cfg.seed;
    sc.warm_start = cfg.warm_start ? 1 : 0;
    majed_sweep* raw = nullptr;
    check(majed_sweep_run(&sc, points.data(), points.size(), sel, report_progress, nullptr, &raw));
    return SweepPtr(raw);
}

/// Number of points whose solve did not converge; each is reported on stderr.
int count_point_errors(const majed_sweep* sweep) {
    int failures = 0;
    for (size_t p = 0; p < majed_sweep_num_points(sweep); ++p)
        if (const char* err = majed_sweep_point_error(sweep, p)) {
            std::cerr << "warning: W/T = " << majed_sweep_w_over_t(sweep, p) << ": " << err << '\n';
            ++failures;
        }
    return failures;
}

int finish(OutputManifest& manifest, int point_errors) {
    const auto path = manifest.finish();
    std::cout << "manifest: " << path.string() << '\n';
    return point_errors > 0 ? kExitConvergence : kExitOk;
}

// ---- basis ------------------------------------------------------------------------------

int cmd_basis(const RunConfig& cfg, const std::optional<std::string>& out) {
    const int L = cfg.num_sites, N = cfg.num_particles;
    uint64_t total = 0, even = 0, odd = 0;
    check(majed_sector_dimension(L, N, MAJED_PARITY_ALL, &total));
    check(majed_sector_dimension(L, N, MAJED_PARITY_EVEN, &even));
    check(majed_sector_dimension(L, N, MAJED_PARITY_ODD, &odd));
    std::cout << "L = " << L << ", N = " << N << '\n'
              << "  all   " << total << '\n'
              << "  even  " << even << '\n'
              << "  odd   " << odd << '\n';
    if (out) {
        OutputManifest manifest(*out, "basis", config_json(cfg));
        CsvWriter csv(manifest.path("basis.csv"), {"L", "N", "sector", "dimension"});
        for (const auto& [name, dim] : {std::pair{"all", total}, {"even", even}, {"odd", odd}})
            csv.cell(L).cell(N).cell(std::string(name)).cell(static_cast<long long>(dim)).end_row();
        return finish(manifest, 0);
    }
    return kExitOk;
}

// ---- spectrum ---------------------------------------------------------------------------

int cmd_spectrum(const RunConfig& cfg) {
    OutputManifest manifest(cfg.out, "spectrum", config_json(cfg));
    const auto points = cfg.grid.points();
    auto sweep = run_sweep(cfg, points, nullptr);
    const int errors = count_point_errors(sweep.get());

    std::optional<std::array<double, 4>> fit;
    double rms = 0.0;
    json fit_report = {{"grid", cfg.grid.text()}, {"num_points", points.size()}};
    if (cfg.fit && points.size() >= 8 && errors == 0) {
        std::array<double, 4> c{};
        check(majed_cubic_shift_fit(sweep.get(), c.data(), &rms));
        fit = c;
        fit_report["coefficients"] = {{"c3", c[0]}, {"c2", c[1]}, {"c1", c[2]}, {"c0", c[3]}};
        fit_report["residual_rms"] = rms;
        fit_report["shift"] = "cubic fit of the mean of the four lowest levels";
    } else {
        fit_report["coefficients"] = nullptr;
        fit_report["shift"] = "per-point mean of the lowest min(4, k) levels";
        if (cfg.fit) std::cerr << "note: cubic fit skipped (needs >= 8 converged points)\n";
    }

    CsvWriter csv(manifest.path("spectrum.csv"),
                  {"W_over_T", "level_index", "energy", "energy_shifted", "residual", "symmetry", "branch"});
    for (size_t p = 0; p < majed_sweep_num_points(sweep.get()); ++p) {
        const double w = majed_sweep_w_over_t(sweep.get(), p);
        const int levels = majed_sweep_num_levels(sweep.get(), p);
        double shift = 0.0;
        if (fit) {
            const auto& c = *fit;
            shift = ((c[0] * w + c[1]) * w + c[2]) * w + c[3];
        } else {
            const int n = std::min(4, levels);
            for (int i = 0; i < n; ++i) shift += majed_sweep_energy(sweep.get(), p, i) / n;
        }
        for (int i = 0; i < levels; ++i) {
            const double e = majed_sweep_energy(sweep.get(), p, i);
            csv.cell(w).cell(i).cell(e).cell(e - shift).cell(majed_sweep_residual(sweep.get(), p, i));
            csv.cell(majed_sweep_symmetry(sweep.get(), p, i)).cell(majed_sweep_branch(sweep.get(), p, i)).end_row();
        }
    }
    manifest.write_json("fit.json", fit_report);
    if (cfg.gnuplot) {
        std::ostringstream gp;
        gp << "set datafile separator ','\nset key autotitle columnhead\nset xlabel 'W/T'\n"
           << "set ylabel 'E - Q(W/T)'\nset terminal pngcairo size 900,600\nset output 'spectrum.png'\n"
           << "plot for [i=0:" << cfg.k - 1 << "] 'spectrum.csv' using 1:($2==i ? $4 : NaN) with linespoints "
           << "title sprintf('level %d', i)\n";
        manifest.write_text("spectrum.gp", gp.str());
    }
    return finish(manifest, errors);
}

// ---- observables at a single W ----------------------------------------------------------

int cmd_observables(const RunConfig& cfg) {
    OutputManifest manifest(cfg.out, "observables", config_json(cfg));
    Selection sel(cfg, cfg.densities, cfg.green, !cfg.mi.empty(), !cfg.parity.empty());
    const std::vector<double> point{cfg.w_over_t};
    auto sweep = run_sweep(cfg, point, &sel.c);
    const int errors = count_point_errors(sweep.get());
    const majed_sweep* s = sweep.get();
    const int L = cfg.num_sites;
    const char* species[] = {"up+", "down+", "up-", "down-"};

    CsvWriter energies(manifest.path("energies.csv"), {"W_over_T", "level_index", "energy", "residual", "symmetry"});
    for (int i = 0; i < majed_sweep_num_levels(s, 0); ++i)
        energies.cell(cfg.w_over_t).cell(i).cell(majed_sweep_energy(s, 0, i)).cell(majed_sweep_residual(s, 0, i))
            .cell(majed_sweep_symmetry(s, 0, i)).end_row();

    const int states = std::min(cfg.states, majed_sweep_num_levels(s, 0));
    for (int level = 0; level < states; ++level) {
        const std::string tag = "state" + std::to_string(level) + "_";
        if (cfg.densities) {
            CsvWriter csv(manifest.path(tag + "densities.csv"), {"site", species[0], species[1], species[2], species[3], "total"});
            std::array<double, 4> column{};
            for (int j = 1; j <= L; ++j) {
                double row = 0.0;
                csv.cell(j);
                for (int sp = 0; sp < 4; ++sp) {
                    double n = 0.0;
                    check(majed_sweep_density(s, 0, level, sp, j, &n));
                    csv.cell(n);
                    row += n;
                    column[static_cast<size_t>(sp)] += n;
                }
                csv.cell(row).end_row();
            }
            // Footer: per-species totals, last column is the sum rule (equals N).
            csv.cell(std::string("sum"));
            for (double t : column) csv.cell(t);
            csv.cell(column[0] + column[1] + column[2] + column[3]).end_row();
        }
        if (cfg.green) {
            CsvWriter csv(manifest.path(tag + "green.csv"), {"j", cfg.green_cross_orbital ? "G_up+_up-" : "G_up+_up+"});
            for (int j = 1; j <= L; ++j) {
                double g = 0.0;
                check(majed_sweep_green(s, 0, level, j, &g));
                csv.cell(j).cell(g).end_row();
            }
        }
        if (!cfg.parity.empty()) {
            CsvWriter csv(manifest.path(tag + "parity.csv"), {"L_A", "local_parity"});
            for (size_t c = 0; c < cfg.parity.size(); ++c) {
                double v = 0.0;
                check(majed_sweep_local_parity(s, 0, level, c, &v));
                csv.cell(cfg.parity[c]).cell(v).end_row();
            }
        }
        if (!cfg.mi.empty()) {
            CsvWriter csv(manifest.path(tag + "mi.csv"), {"L_A", "L_C", "mutual_information"});
            for (size_t c = 0; c < cfg.mi.size(); ++c) {
                double v = 0.0;
                check(majed_sweep_mutual_information(s, 0, level, c, &v));
                csv.cell(cfg.mi[c].first).cell(cfg.mi[c].second).cell(v).end_row();
            }
        }
    }
    if (cfg.invariants) {
        CsvWriter csv(manifest.path("invariants.csv"), {"level_index", "number_sum_error", "entropy_complement_error",
                                                        "min_mutual_information", "parity_cut_error"});
        for (int level = 0; level < majed_sweep_num_levels(s, 0); ++level) {
            majed_invariants inv{};
            check(majed_sweep_invariants(s, 0, level, &inv));
            csv.cell(level).cell(inv.number_sum_error).cell(inv.entropy_complement_error)
                .cell(inv.min_mutual_information).cell(inv.parity_cut_error).end_row();
        }
    }
    if (cfg.gnuplot) {
        std::ostringstream gp;
        gp << "set datafile separator ','\nset key autotitle columnhead\nset terminal pngcairo size 900,600\n";
        if (cfg.densities)
            gp << "set output 'densities.png'\nset xlabel 'site j'\nset ylabel '<n_{up,+,j}>'\n"
               << "plot for [i=0:" << states - 1 << "] sprintf('state%d_densities.csv', i) every ::0::" << L - 1
               << " using 1:2 with linespoints title sprintf('state %d', i)\n";
        if (cfg.green)
            gp << "set output 'green.png'\nset xlabel 'site j'\nset ylabel '|G(1,j)|'\nset logscale y\n"
               << "plot for [i=0:" << states - 1 << "] sprintf('state%d_green.csv', i) using 1:(abs($2)) "
               << "with linespoints title sprintf('state %d', i)\nunset logscale y\n";
        manifest.write_text("observables.gp", gp.str());
    }
    return finish(manifest, errors);
}

// ---- mi / parity along a grid -----------------------------------------------------------

int cmd_grid_observable(const RunConfig& cfg, bool mi) {
    const std::string name = mi ? "mi" : "parity";
    OutputManifest manifest(cfg.out, name, config_json(cfg));
    Selection sel(cfg, false, false, mi, !mi);
    auto sweep = run_sweep(cfg, cfg.grid.points(), &sel.c);
    const int errors = count_point_errors(sweep.get());
    const majed_sweep* s = sweep.get();

    std::vector<std::string> header{"W_over_T", "level_index", "symmetry", "L_A"};
    if (mi) header.push_back("L_C");
    header.push_back(mi ? "mutual_information" : "local_parity");
    CsvWriter csv(manifest.path(name + ".csv"), header);
    const size_t count = mi ? cfg.mi.size() : cfg.parity.size();
    for (size_t p = 0; p < majed_sweep_num_points(s); ++p) {
        if (majed_sweep_point_error(s, p)) continue;
        const int levels = std::min(cfg.states, majed_sweep_num_levels(s, p));
        for (int level = 0; level < levels; ++level)
            for (size_t c = 0; c < count; ++c) {
                double v = 0.0;
                check(mi ? majed_sweep_mutual_information(s, p, level, c, &v)
                         : majed_sweep_local_parity(s, p, level, c, &v));
                csv.cell(majed_sweep_w_over_t(s, p)).cell(level).cell(majed_sweep_symmetry(s, p, level));
                if (mi) csv.cell(cfg.mi[c].first).cell(cfg.mi[c].second);
                else csv.cell(cfg.parity[c]);
                csv.cell(v).end_row();
            }
    }
    if (cfg.gnuplot) {
        std::ostringstream gp;
        gp << "set datafile separator ','\nset key autotitle columnhead\nset xlabel 'W/T'\n"
           << "set terminal pngcairo size 900,600\nset output '" << name << ".png'\n";
        if (mi)
            gp << "set ylabel 'I(A:C)'\nplot for [i=0:" << cfg.states - 1 << "] 'mi.csv' using 1:(($2==i && $4=="
               << cfg.mi[0].first << " && $5==" << cfg.mi[0].second
               << ") ? $6 : NaN) with linespoints title sprintf('state %d', i)\n";
        else
            gp << "set ylabel '<P_{+,L_A}>'\nplot for [a in '";
        if (!mi) {
            for (size_t c = 0; c < cfg.parity.size(); ++c) gp << (c ? " " : "") << cfg.parity[c];
            gp << "'] 'parity.csv' using 1:(($2==0 && $4==a+0) ? $5 : NaN) with linespoints "
               << "title sprintf('L_A = %s', a)\n";
        }
        manifest.write_text(name + ".gp", gp.str());
    }
    return finish(manifest, errors);
}

// ---- Landau-Zener -----------------------------------------------------------------------

std::vector<double> refinement_points(double center, const RunConfig& cfg, const std::vector<double>& coarse) {
    std::vector<double> out;
    const auto n = static_cast<long>(std::floor(cfg.refine_halfwidth / cfg.refine_step + 1e-9));
    for (long i = -n; i <= n; ++i) {
        // Snap to the refinement lattice so reruns hit identical points.
        const double w = std::round(center / cfg.refine_step) * cfg.refine_step + static_cast<double>(i) * cfg.refine_step;
        bool seen = false;
        for (double c : coarse) seen = seen || std::abs(c - w) < 1e-9;
        if (!seen) out.push_back(w);
    }
    return out;
}

json crossing_json(const majed_crossing& c) {
    return {{"w_star_over_T", c.w_star},
            {"gap", c.gap},
            {"slope_lo", c.slope_lo},
            {"slope_hi", c.slope_hi},
            {"branch_lo", {{"symmetry", c.branch_lo_symmetry}, {"rank", c.branch_lo_rank}}},
            {"branch_hi", {{"symmetry", c.branch_hi_symmetry}, {"rank", c.branch_hi_rank}}}};
}

int cmd_lz(const RunConfig& cfg) {
    OutputManifest manifest(cfg.out, "lz", config_json(cfg));
    majed_crossing crossing{};
    int errors = 0;
    json report;
    if (cfg.manual_crossing) {
        crossing = {cfg.crossing[0], cfg.crossing[1], cfg.crossing[2], cfg.crossing[3], 0, 0, 0, 0};
        report["source"] = "config";
    } else {
        const auto coarse_points = cfg.grid.points();
        std::cerr << "coarse sweep over " << cfg.grid.text() << '\n';
        auto coarse = run_sweep(cfg, coarse_points, nullptr);
        errors += count_point_errors(coarse.get());
        const majed_sweep* pool[2] = {coarse.get(), nullptr};
        check(majed_find_avoided_crossing(pool, 1, cfg.branch_lo.first, cfg.branch_lo.second, cfg.branch_hi.first,
                                          cfg.branch_hi.second, cfg.params.T, cfg.window_inner, cfg.window_outer,
                                          &crossing));
        report["coarse"] = crossing_json(crossing);
        const auto fine_points = refinement_points(crossing.w_star, cfg, coarse_points);
        SweepPtr fine;
        if (!fine_points.empty()) {
            std::cerr << "refining " << fine_points.size() << " points around W/T = " << crossing.w_star << '\n';
            fine = run_sweep(cfg, fine_points, nullptr);
            errors += count_point_errors(fine.get());
            pool[1] = fine.get();
            check(majed_find_avoided_crossing(pool, 2, cfg.branch_lo.first, cfg.branch_lo.second, cfg.branch_hi.first,
                                              cfg.branch_hi.second, cfg.params.T, cfg.window_inner, cfg.window_outer,
                                              &crossing));
        }
        CsvWriter csv(manifest.path("lz_sweep.csv"), {"W_over_T", "level_index", "energy", "residual", "symmetry"});
        for (const majed_sweep* s : pool) {
            if (!s) continue;
            for (size_t p = 0; p < majed_sweep_num_points(s); ++p)
                for (int i = 0; i < majed_sweep_num_levels(s, p); ++i)
                    csv.cell(majed_sweep_w_over_t(s, p)).cell(i).cell(majed_sweep_energy(s, p, i))
                        .cell(majed_sweep_residual(s, p, i)).cell(majed_sweep_symmetry(s, p, i)).end_row();
        }
        report["source"] = "sweep";
        report["refined_points"] = fine_points.size();
    }
    report["crossing"] = crossing_json(crossing);

    majed_lz_summary summary{};
    std::vector<double> gamma(cfg.rates.size()), probability(cfg.rates.size());
    check(majed_landau_zener(&crossing, cfg.tunneling_hz, cfg.rates.data(), cfg.rates.size(), &summary, gamma.data(),
                             probability.data()));
    json rates = json::array();
    for (size_t i = 0; i < cfg.rates.size(); ++i)
        rates.push_back({{"rate_hz_per_s", cfg.rates[i]}, {"gamma", gamma[i]}, {"probability", probability[i]}});
    report["landau_zener"] = {{"tunneling_hz", summary.tunneling_hz},
                              {"gap_hz", summary.gap_hz},
                              {"slope_difference", summary.slope_difference},
                              {"gamma_times_rate", summary.gamma_times_rate},
                              {"critical_rate_hz_per_s", summary.critical_rate},
                              {"rates", rates}};
    manifest.write_json("lz.json", report);

    std::cout << "avoided crossing at W/T = " << cli::fmt(crossing.w_star) << ", gap = " << cli::fmt(crossing.gap)
              << " |T|\n"
              << "diabatic slopes dE/dW: " << cli::fmt(crossing.slope_lo) << ", " << cli::fmt(crossing.slope_hi) << '\n'
              << "T = " << cfg.tunneling_hz << " h Hz: Gamma * rate = " << cli::fmt(summary.gamma_times_rate)
              << " h Hz/s, critical rate = " << cli::fmt(summary.critical_rate) << " h Hz/s\n";
    for (size_t i = 0; i < cfg.rates.size(); ++i)
        std::cout << "  rate " << cfg.rates[i] << " h Hz/s: Gamma = " << cli::fmt(gamma[i])
                  << ", P = " << cli::fmt(probability[i]) << '\n';
    return finish(manifest, errors);
}

// ---- selfcheck --------------------------------------------------------------------------

int cmd_selfcheck(bool corrupt_signs) {
    if (corrupt_signs) majed_debug_corrupt_signs(1);
    majed_selfcheck* raw = nullptr;
    const auto status = majed_selfcheck_run(&raw);
    majed_debug_corrupt_signs(0);
    check(status);
    std::unique_ptr<majed_selfcheck, void (*)(majed_selfcheck*)> checks(raw, majed_selfcheck_destroy);
    int failed = 0;
    for (size_t i = 0; i < majed_selfcheck_count(raw); ++i) {
        const bool ok = majed_selfcheck_passed(raw, i) != 0;
        failed += ok ? 0 : 1;
        std::printf("%s  %-55s measured %.3g (tol %.1g)\n", ok ? "PASS" : "FAIL", majed_selfcheck_name(raw, i),
                    majed_selfcheck_measured(raw, i), majed_selfcheck_tolerance(raw, i));
    }
    std::printf("%d of %zu checks failed\n", failed, majed_selfcheck_count(raw));
    return failed ? kExitNumerical : kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact diagonalization of the four-species fermion chain"};
    app.require_subcommand(1);
    app.fallthrough();

    std::optional<std::string> config_path, out_dir, grid_text, sector, log_base;
    std::optional<std::uint64_t> seed;
    std::optional<int> threads, k;
    std::optional<double> w_over_t;
    bool corrupt_signs = false;
    app.add_option("--config", config_path, "TOML config file")->check(CLI::ExistingFile);
    app.add_option("--out", out_dir, "output directory");
    app.add_option("--seed", seed, "Lanczos start-vector seed");
    app.add_option("--threads", threads, "worker threads (0 = runtime default)");
    app.add_option("--w-over-t", w_over_t, "W/T for single-point commands");
    app.add_option("--grid", grid_text, "sweep grid LO:HI:STEP in W/T");
    app.add_option("--k", k, "number of lowest levels");
    app.add_option("--sector", sector, "parity sector")->check(CLI::IsMember({"even", "odd", "all"}));
    app.add_option("--log-base", log_base, "entropy logarithm")->check(CLI::IsMember({"e", "2"}));

    app.add_subcommand("basis", "sector dimensions for (L, N)");
    app.add_subcommand("spectrum", "lowest levels along the grid, cubic shift fit");
    app.add_subcommand("observables", "densities, Green function, parity and MI at one W/T");
    app.add_subcommand("mi", "edge-edge mutual information along the grid");
    app.add_subcommand("parity", "left-block local parity along the grid");
    app.add_subcommand("lz", "avoided crossing and Landau-Zener analysis");
    auto* selfcheck = app.add_subcommand("selfcheck", "small-lattice oracle and symmetry checks");
    selfcheck->add_flag("--corrupt-signs", corrupt_signs, "negative control: drop fermionic signs")->group("");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitConfig;
    }
    const std::string command = app.get_subcommands().front()->get_name();

    try {
        RunConfig cfg;
        majed_params_preset(&cfg.params, 0.0);
        if (config_path) cli::apply_table(cli::load_toml(*config_path), cfg);
        if (out_dir) cfg.out = *out_dir;
        if (seed) cfg.seed = *seed;
        if (threads) cfg.threads = *threads;
        if (w_over_t) cfg.w_over_t = *w_over_t;
        if (grid_text) cfg.grid = cli::parse_grid(*grid_text);
        if (k) cfg.k = *k;
        if (sector) cfg.sector = *sector;
        if (log_base) cfg.log_base = *log_base;
        cli::validate(cfg, command);
        majed_set_threads(cfg.threads);

        if (command == "basis") return cmd_basis(cfg, out_dir);
        if (command == "spectrum") return cmd_spectrum(cfg);
        if (command == "observables") return cmd_observables(cfg);
        if (command == "mi") return cmd_grid_observable(cfg, true);
        if (command == "parity") return cmd_grid_observable(cfg, false);
        if (command == "lz") return cmd_lz(cfg);
        return cmd_selfcheck(corrupt_signs);
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return kExitConfig;
    } catch (const ApiError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return exit_code_for(e.status);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitFailure;
    }
}
