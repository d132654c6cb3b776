#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <numbers>

#include "errors.hpp"
#include "sweep.hpp"

using namespace majed;

namespace {

/// Two symmetric-class levels E = c -/+ sqrt((a (W - W0))^2 + delta^2) on a grid.
std::vector<SweepPoint> hyperbola(double w0, double a, double delta, double lo, double hi, double step) {
    std::vector<SweepPoint> points;
    for (double w : SweepGrid::range(lo, hi, step)) {
        const double r = std::hypot(a * (w - w0), delta);
        SweepPoint p;
        p.w_over_t = w;
        p.energies = {-3.0 - r, -3.0 + r};
        p.symmetry = {1, 1};
        points.push_back(p);
    }
    return points;
}

}  // namespace

TEST_CASE("synthetic avoided crossing") {
    const double w0 = 13.9, a = 0.7, delta = 1e-3;
    const auto points = hyperbola(w0, a, delta, 8.0, 20.0, 0.025);
    const auto r = find_avoided_crossing(points, {1, 0}, {1, 1}, 1.0);
    CHECK(std::abs(r.w_star - w0) < 1e-6);
    CHECK(std::abs(r.gap - 2 * delta) < 1e-6);
    // The lower level rises (slope +a) left of W0 and continues as the upper level.
    CHECK(std::abs(r.slope_lo - a) < 1e-6);
    CHECK(std::abs(r.slope_hi + a) < 1e-6);
    // Negative T flips dE/dW relative to the grid slope.
    const auto flipped = find_avoided_crossing(points, {1, 0}, {1, 1}, -1.0);
    CHECK(flipped.slope_lo == doctest::Approx(-r.slope_lo));
}

TEST_CASE("crossing between grid points is refined parabolically") {
    const auto points = hyperbola(12.31, 1.0, 0.2, 6.0, 18.0, 0.25);
    const auto r = find_avoided_crossing(points, {1, 0}, {1, 1}, 1.0);
    CHECK(std::abs(r.w_star - 12.31) < 0.05);
    CHECK(r.gap == doctest::Approx(0.4).epsilon(0.05));
}

TEST_CASE("branches are picked by symmetry class and rank") {
    auto points = hyperbola(10.0, 1.0, 0.05, 5.0, 15.0, 0.1);
    for (auto& p : points) {
        // Interleave a spectator level of the other class below both.
        p.energies.insert(p.energies.begin(), -100.0);
        p.symmetry.insert(p.symmetry.begin(), -1);
    }
    const auto r = find_avoided_crossing(points, {1, 0}, {1, 1}, 1.0);
    CHECK(r.w_star == doctest::Approx(10.0));
    CHECK_THROWS_AS(find_avoided_crossing(points, {-1, 0}, {1, 0}, 1.0), NotFoundError);
}

TEST_CASE("monotone branches have no crossing") {
    std::vector<SweepPoint> points;
    for (double w : SweepGrid::range(0, 10, 0.5)) {
        SweepPoint p;
        p.w_over_t = w;
        p.energies = {-w, -w + 1.0 + w};
        p.symmetry = {0, 0};
        points.push_back(p);
    }
    CHECK_THROWS_AS(find_avoided_crossing(points, {0, 0}, {0, 1}, -1.0), NotFoundError);
}

TEST_CASE("cubic fit recovers exact cubics and constants") {
    std::vector<double> x, y, flat;
    for (double w : SweepGrid::range(0, 20, 0.5)) {
        x.push_back(w);
        y.push_back(((0.0016 * w - 0.1303) * w + 0.8999) * w - 64.131);
        flat.push_back(-3.25);
    }
    const auto fit = fit_cubic(x, y);
    const double expected[] = {0.0016, -0.1303, 0.8999, -64.131};
    for (int i = 0; i < 4; ++i) CHECK(std::abs(fit.coefficients[static_cast<std::size_t>(i)] - expected[i]) < 1e-10);
    CHECK(fit.residual_rms < 1e-10);
    const auto constant = fit_cubic(x, flat);
    for (int i = 0; i < 3; ++i) CHECK(std::abs(constant.coefficients[static_cast<std::size_t>(i)]) < 1e-12);
    CHECK(constant.coefficients[3] == doctest::Approx(-3.25));
    const std::vector<double> three{1, 2, 3};
    CHECK_THROWS_AS(fit_cubic(three, three), DomainError);
    const std::vector<double> repeated{1, 1, 1, 1, 2, 2};
    CHECK_THROWS_AS(fit_cubic(repeated, std::vector<double>(6, 1.0)), DomainError);
}

TEST_CASE("cubic shift fit uses the mean of the four lowest levels") {
    SweepResult sweep;
    for (double w : SweepGrid::range(0, 9, 1)) {
        SweepPoint p;
        p.w_over_t = w;
        const double m = w * w * w - 2 * w;
        p.energies = {m - 3, m - 1, m + 1, m + 3, 100.0};
        sweep.points.push_back(p);
    }
    const auto fit = cubic_shift_fit(sweep);
    CHECK(fit.coefficients[0] == doctest::Approx(1.0));
    CHECK(std::abs(fit.coefficients[1]) < 1e-9);
    CHECK(fit.coefficients[2] == doctest::Approx(-2.0));
    sweep.points.resize(7);
    CHECK_THROWS_AS(cubic_shift_fit(sweep), DomainError);
}

TEST_CASE("Landau-Zener constants") {
    CrossingReport c;
    c.gap = 0.08;
    c.slope_lo = -1.2;
    c.slope_hi = -1.9;
    const auto r = landau_zener(c, 100.0, {1.0, 10.0, 136.0, 1e12});
    // Gamma * rate = 2 pi Delta^2 / (4 |ds|) with Delta in h Hz.
    const double expected = 2 * std::numbers::pi * 8.0 * 8.0 / (4 * 0.7);
    CHECK(r.gamma_times_rate == doctest::Approx(expected).epsilon(1e-14));
    for (std::size_t i = 0; i < r.rates.size(); ++i)
        CHECK(std::abs(r.gamma[i] * r.rates[i] - r.gamma_times_rate) <= 1e-12 * r.gamma_times_rate);
    const double critical_gamma = std::log(2.0) / (2 * std::numbers::pi);
    CHECK(critical_gamma == doctest::Approx(0.11032).epsilon(1e-4));
    CHECK(std::abs(landau_zener_probability(r.gamma_at(r.critical_rate)) - 0.5) < 1e-9);
    CHECK(r.probability.back() < 1e-6);  // sudden limit
    // A crossing whose critical rate is 1360 h Hz/s gives P(136) = 1 - 2^-10.
    c.gap = std::sqrt(1360.0 * critical_gamma * 4 * 0.7 / (2 * std::numbers::pi)) / 100.0;
    const auto reference_case = landau_zener(c, 100.0, {136.0});
    CHECK(reference_case.critical_rate == doctest::Approx(1360.0).epsilon(1e-12));
    CHECK(reference_case.probability[0] == doctest::Approx(1.0 - std::pow(2.0, -10.0)).epsilon(1e-12));
    CHECK(reference_case.probability[0] >= 0.999);
}

TEST_CASE("Landau-Zener rejects a closed gap") {
    CrossingReport c;
    c.gap = 0.0;
    c.slope_lo = 1.0;
    c.slope_hi = -1.0;
    CHECK_THROWS_AS(landau_zener(c, 100.0, {1.0}), DegenerateCrossingError);
    c.gap = 0.1;
    CHECK_THROWS_AS(landau_zener(c, 100.0, {-1.0}), DomainError);
}

TEST_CASE("branch matching follows overlaps across a level crossing") {
    const std::vector<std::vector<double>> prev{{1, 0, 0}, {0, 1, 0}};
    const std::vector<std::vector<double>> cur{{0, 0.98, 0.2}, {0.99, 0, 0.1}};
    int next = 2;
    std::vector<double> overlaps;
    const auto labels = match_branches(prev, {0, 1}, cur, next, overlaps);
    CHECK(labels == std::vector<int>{1, 0});
    CHECK(overlaps[0] == doctest::Approx(0.98));
    // Weak overlap opens a new label.
    const auto fresh = match_branches(prev, {0, 1}, {{0, 0, 1}}, next, overlaps);
    CHECK(fresh == std::vector<int>{2});
    CHECK(next == 3);
}

TEST_CASE("single-point sweep equals a direct solve") {
    SweepGrid grid;
    grid.num_sites = 3;
    grid.num_particles = 3;
    grid.k = 4;
    grid.w_over_t = {0.0};
    grid.observables.densities = true;
    grid.observables.invariants = true;
    grid.observables.mutual_information = {{1, 1}};
    grid.observables.local_parity = {1, 2};
    const auto sweep = run_sweep(grid);
    REQUIRE(sweep.ok());
    const SectorBasis basis(3, 3, Parity::Even);
    LanczosOptions opt;
    opt.k = 4;
    opt.tol = grid.tol;
    const auto direct = lowest_k(build_hamiltonian(ModelParams::preset(0.0), basis), opt);
    for (int i = 0; i < 4; ++i)
        CHECK(std::abs(sweep.points[0].energies[static_cast<std::size_t>(i)] - direct.eigenvalues[static_cast<std::size_t>(i)]) < 1e-10);
    for (const auto& obs : sweep.points[0].observables) {
        REQUIRE(obs.invariants.has_value());
        CHECK(obs.invariants->number_sum_error < 1e-12);
        CHECK(obs.invariants->entropy_complement_error < 1e-10);
        CHECK(obs.invariants->parity_cut_error < 1e-12);
        CHECK(obs.invariants->min_mutual_information > -1e-10);
    }
}

TEST_CASE("sweeps are deterministic and label symmetry classes") {
    SweepGrid grid;
    grid.num_sites = 3;
    grid.num_particles = 4;
    grid.k = 5;
    grid.w_over_t = SweepGrid::range(10, 16, 1);
    const auto a = run_sweep(grid), b = run_sweep(grid);
    REQUIRE(a.points.size() == 7);
    for (std::size_t i = 0; i < a.points.size(); ++i) {
        CHECK(a.points[i].energies == b.points[i].energies);
        CHECK(a.points[i].branch == b.points[i].branch);
        for (int s : a.points[i].symmetry) CHECK((s == 1 || s == -1));
    }
    grid.base.U_plus = 0.5;
    for (const auto& p : run_sweep(grid).points)
        for (int s : p.symmetry) CHECK(s == 0);
}

TEST_CASE("grid validation") {
    SweepGrid grid;
    grid.num_sites = 3;
    grid.num_particles = 3;
    grid.w_over_t = {1.0, 1.0};
    CHECK_THROWS_AS(run_sweep(grid), DomainError);
    grid.w_over_t = {1.0};
    grid.observables.mutual_information = {{2, 1}};
    CHECK_THROWS_AS(run_sweep(grid), DomainError);
    CHECK_THROWS_AS(SweepGrid::range(1, 0, 0.1), DomainError);
    CHECK(SweepGrid::range(0, 20, 0.25).size() == 81);
}
