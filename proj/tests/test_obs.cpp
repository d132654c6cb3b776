#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include "eig.hpp"
#include "errors.hpp"
#include "model.hpp"
#include "obs.hpp"
#include "oracle.hpp"

using namespace majed;

namespace {

std::vector<double> ground_state(const ModelParams& p, const SectorBasis& basis, int level = 0) {
    return dense_all(build_hamiltonian(p, basis)).eigenvectors[static_cast<std::size_t>(level)];
}

}  // namespace

TEST_CASE("rdm equals the brute-force fermionic partial trace") {
    std::mt19937_64 rng(21);
    for (int trial = 0; trial < 3; ++trial) {
        const auto c = oracle::random_couplings(rng);
        ModelParams p{c.T, c.U_plus, c.U_minus, c.U, c.W, c.so_fwd, c.so_bwd};
        for (const auto& [n, parity] : {std::pair{3, Parity::Even}, {4, Parity::Odd}, {6, Parity::Even}}) {
            const SectorBasis basis(3, n, parity);
            const auto vec = ground_state(p, basis, trial);
            const auto full = oracle::embed(basis.states(), vec, 3);
            for (int lo = 1; lo <= 3; ++lo)
                for (int hi = lo; hi <= 3; ++hi) {
                    const double s_expected = oracle::region_entropy(full, 3, lo, hi);
                    CHECK(std::abs(region_entropy(vec, basis, {lo, hi}) - s_expected) < 1e-10);
                    if (hi - lo == 2) continue;  // whole lattice: 4096-dimensional dense rho, entropy suffices
                    const Eigen::MatrixXd expected = oracle::partial_trace(full, 3, lo, hi);
                    const auto rho = rdm(vec, basis, {lo, hi});
                    CHECK((rho.to_dense() - expected).cwiseAbs().maxCoeff() < 1e-12);
                    CHECK(rho.trace() == doctest::Approx(1.0).epsilon(1e-12));
                    CHECK(std::abs(entropy(rho) - s_expected) < 1e-10);
                }
        }
    }
}

TEST_CASE("mutual information matches the edge-region oracle") {
    const SectorBasis basis(3, 4, Parity::Even);
    for (double wt : {4.0, 15.0}) {
        const auto vec = ground_state(ModelParams::preset(wt), basis);
        const auto full = oracle::embed(basis.states(), vec, 3);
        const double s_a = oracle::entropy(oracle::partial_trace(full, 3, 1, 1));
        const double s_c = oracle::entropy(oracle::partial_trace(full, 3, 3, 3));
        const double s_ac = oracle::entropy(oracle::partial_trace_edges(full, 3, 1, 1));
        const double mi = mutual_information(vec, basis, 1, 1);
        CHECK(std::abs(mi - (s_a + s_c - s_ac)) < 1e-10);
        CHECK(mi >= -1e-12);
        CHECK(mutual_information(vec, basis, 1, 1, LogBase::Two) == doctest::Approx(mi / std::log(2.0)).epsilon(1e-12));
    }
}

TEST_CASE("entropy complement and parity cut identities") {
    const SectorBasis basis(4, 4, Parity::Even);
    const auto h = build_hamiltonian(ModelParams::preset(14.0), basis);
    LanczosOptions opt;
    opt.k = 3;
    const auto r = lowest_k(h, opt);
    for (const auto& v : r.eigenvectors)
        for (int cut = 1; cut < 4; ++cut) {
            CHECK(std::abs(region_entropy(v, basis, {1, cut}) - region_entropy(v, basis, {cut + 1, 4})) < 1e-10);
            CHECK(std::abs(local_parity_expectation(v, basis, RegionSpec{1, cut}) -
                           local_parity_expectation(v, basis, RegionSpec{cut + 1, 4})) < 1e-12);
        }
}

TEST_CASE("random vectors give unit-trace positive density matrices") {
    const SectorBasis basis(3, 5, Parity::Odd);
    for (std::uint64_t seed = 0; seed < 200; ++seed) {
        const auto v = seeded_start_vector(basis.size(), seed);
        const auto rho = rdm(v, basis, {2 + static_cast<int>(seed % 2), 3});
        CHECK(rho.trace() == doctest::Approx(1.0).epsilon(1e-12));
        for (double l : rho.eigenvalues()) CHECK(l > -1e-12);
        const Eigen::MatrixXd d = rho.to_dense();
        CHECK((d - d.transpose()).cwiseAbs().maxCoeff() == 0.0);
    }
    // Whole lattice: rank-one projector.
    const auto v = seeded_start_vector(basis.size(), 1);
    CHECK(std::abs(entropy(rdm(v, basis, {1, 3}))) < 1e-10);
}

TEST_CASE("single particle on two sites") {
    // (|site 1> + |site 2>)/sqrt 2 for species up+: region spectrum {1/2, 1/2}.
    const SectorBasis basis(2, 1, Parity::Unrestricted);
    std::vector<double> v(basis.size(), 0.0);
    v[static_cast<std::size_t>(basis.find(FockState{1} << mode_index(0, Species::UpPlus)))] = std::sqrt(0.5);
    v[static_cast<std::size_t>(basis.find(FockState{1} << mode_index(1, Species::UpPlus)))] = std::sqrt(0.5);
    auto spec = rdm(v, basis, {1, 1}).eigenvalues();
    std::sort(spec.begin(), spec.end());
    CHECK(spec[spec.size() - 1] == doctest::Approx(0.5));
    CHECK(spec[spec.size() - 2] == doctest::Approx(0.5));
    CHECK(region_entropy(v, basis, {1, 1}, LogBase::Two) == doctest::Approx(1.0));
}

TEST_CASE("densities and Green function of a tight-binding orbital") {
    const int L = 6;
    const SectorBasis basis(L, 1, Parity::Unrestricted);
    std::vector<double> v(basis.size(), 0.0), phi(L + 1);
    for (int j = 1; j <= L; ++j) {
        phi[j] = std::sqrt(2.0 / (L + 1)) * std::sin(std::numbers::pi * j / (L + 1));
        v[static_cast<std::size_t>(basis.find(FockState{1} << mode_index(j - 1, Species::UpPlus)))] = phi[j];
    }
    double total = 0.0;
    for (int j = 1; j <= L; ++j) {
        CHECK(density(v, basis, Species::UpPlus, j) == doctest::Approx(phi[j] * phi[j]).epsilon(1e-14));
        CHECK(density(v, basis, Species::DownMinus, j) == 0.0);
        CHECK(green_function(v, basis, Species::UpPlus, j) == doctest::Approx(phi[1] * phi[j]).epsilon(1e-14));
        for (Species s : kAllSpecies) total += density(v, basis, s, j);
    }
    CHECK(total == doctest::Approx(1.0));
}

TEST_CASE("Green function sign for a particle behind occupied modes") {
    // Two particles: down+ on site 1 (spectator) and up+ delocalized over sites 1 and 3.
    const SectorBasis basis(3, 2, Parity::Unrestricted);
    const FockState spectator = FockState{1} << mode_index(0, Species::DownPlus);
    std::vector<double> v(basis.size(), 0.0);
    const FockState s1 = spectator | (FockState{1} << mode_index(0, Species::UpPlus));
    const FockState s3 = spectator | (FockState{1} << mode_index(2, Species::UpPlus));
    v[static_cast<std::size_t>(basis.find(s1))] = 0.6;
    v[static_cast<std::size_t>(basis.find(s3))] = 0.8;
    // Oracle: <v| a^dag_{up+,1} a_{up+,3} |v> from the Kronecker construction.
    const auto full = oracle::embed(basis.states(), v, 3);
    const oracle::Sparse op = oracle::Sparse(oracle::annihilator(0, 12).transpose()) * oracle::annihilator(8, 12);
    const double expected = full.dot(op * full);
    CHECK(green_function(v, basis, Species::UpPlus, 3) == doctest::Approx(expected).epsilon(1e-14));
    CHECK(std::abs(expected) == doctest::Approx(0.48));
}

TEST_CASE("cross-orbital Green function vanishes inside a parity sector") {
    const SectorBasis basis(3, 3, Parity::Even);
    const auto v = ground_state(ModelParams::preset(12.0), basis);
    for (int j = 1; j <= 3; ++j) CHECK(green_function(v, basis, Species::UpPlus, Species::UpMinus, j) == 0.0);
}

TEST_CASE("domain and integrity errors") {
    const SectorBasis basis(3, 2, Parity::Even);
    const auto v = ground_state(ModelParams::preset(5.0), basis);
    CHECK_THROWS_AS(mutual_information(v, basis, 2, 1), DomainError);
    CHECK_THROWS_AS(mutual_information(v, basis, 0, 1), DomainError);
    CHECK_THROWS_AS(region_entropy(v, basis, {2, 1}), DomainError);
    CHECK_THROWS_AS(density(v, basis, Species::UpPlus, 4), DomainError);
    CHECK_THROWS_AS(rdm(v, basis, {1, 3}, 64), ResourceError);
    CHECK_THROWS_AS(local_parity_expectation(v, basis, 3), DomainError);
    CHECK_THROWS_AS(local_parity_expectation(v, basis, 0), DomainError);
    const std::vector<double> bad{0.5, 0.6, -0.1};
    CHECK_THROWS_AS(entropy_from_spectrum(bad), NumericalIntegrityError);
    std::vector<double> shorter(v.begin(), v.end() - 1);
    CHECK_THROWS_AS(density(shorter, basis, Species::UpPlus, 1), DomainError);
}
