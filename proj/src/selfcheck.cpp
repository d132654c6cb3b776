#include "selfcheck.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <functional>
#include <utility>

#include "eig.hpp"
#include "fock.hpp"
#include "model.hpp"
#include "obs.hpp"

namespace majed {

namespace {

CheckOutcome make(std::string name, double measured, double tolerance, std::string detail = {}) {
    return {std::move(name), measured <= tolerance, measured, tolerance, std::move(detail)};
}

CheckOutcome anticommutation() {
    // {a^dag_m, a^dag_n} = 0 on every state of 3 sites (12 modes).
    double worst = 0.0;
    for (FockState s = 0; s < (FockState{1} << 12); ++s)
        for (int m = 0; m < 12; ++m)
            for (int n = 0; n < 12; ++n) {
                if (m == n) continue;
                const ModeOp mn[] = {{OpKind::Create, m}, {OpKind::Create, n}};
                const ModeOp nm[] = {{OpKind::Create, n}, {OpKind::Create, m}};
                const auto a = apply_string(mn, s);
                const auto b = apply_string(nm, s);
                if (a.has_value() != b.has_value()) worst = 2.0;
                else if (a && (a->state != b->state || a->sign != -b->sign)) worst = 2.0;
            }
    return make("anticommutation of creation operators (4L = 12)", worst, 0.0);
}

CheckOutcome odd_n_degeneracy() {
    const ModelParams params = ModelParams::preset(7.0);
    const SectorBasis even(3, 3, Parity::Even), odd(3, 3, Parity::Odd);
    const auto a = dense_all(build_hamiltonian(params, even));
    const auto b = dense_all(build_hamiltonian(params, odd));
    double worst = a.eigenvalues.size() == b.eigenvalues.size() ? 0.0 : 1.0;
    for (std::size_t i = 0; i < std::min(a.eigenvalues.size(), b.eigenvalues.size()); ++i)
        worst = std::max(worst, std::abs(a.eigenvalues[i] - b.eigenvalues[i]));
    return make("odd-N even/odd sector spectra coincide (L = N = 3)", worst, 1e-10);
}

CheckOutcome block_structure() {
    ModelParams params;
    params.U_plus = 0.7;
    params.U_minus = -0.3;
    params.U = 0.4;
    params.W = 1.9;
    params.so_bwd = 2.5;
    double violations = 0.0;
    for (int n = 0; n <= 8; ++n) {
        const SectorBasis all(2, n, Parity::Unrestricted);
        const auto h = build_hamiltonian(params, all);
        for (std::size_t r = 0; r < h.dim(); ++r)
            for (auto e = h.row_ptr()[r]; e < h.row_ptr()[r + 1]; ++e) {
                const FockState a = all[r], b = all[h.cols()[e]];
                if (std::popcount(a) != std::popcount(b) || parity_plus(a) != parity_plus(b)) violations += 1.0;
            }
        violations += h.asymmetry();
    }
    return make("number/parity block structure and symmetry (L = 2)", violations, 0.0);
}

CheckOutcome chiral_involution() {
    double worst = 0.0;
    for (int L = 1; L <= 3; ++L)
        for (FockState s = 0; s < (FockState{1} << (4 * L)); ++s) {
            const auto once = chiral_transform(s, L);
            const auto twice = chiral_transform(once.state, L);
            if (twice.state != s || once.sign * twice.sign != 1) worst = 1.0;
        }
    return make("chiral transform is a sign-+1 involution (L <= 3)", worst, 0.0);
}

CheckOutcome chiral_commutes() {
    double worst = 0.0;
    for (int n : {2, 3, 4}) {
        const SectorBasis basis(3, n, Parity::Even);
        const auto report = check_symmetry(
            "chiral", [](FockState s) { return chiral_transform(s, 3); }, ModelParams::preset(12.0), basis);
        worst = std::max(worst, report.max_violation);
    }
    return make("chiral transform commutes with H (L = 3)", worst, 1e-12);
}

CheckOutcome lanczos_vs_dense() {
    ModelParams params = ModelParams::preset(13.0);
    params.U_plus = 0.5;
    double worst = 0.0;
    for (int n : {3, 4, 6}) {
        const SectorBasis basis(3, n, Parity::Even);
        const auto h = build_hamiltonian(params, basis);
        LanczosOptions opt;
        opt.k = 4;
        const auto lanczos = lowest_k(h, opt);
        const auto dense = dense_all(h);
        for (int i = 0; i < 4; ++i)
            worst = std::max(worst, std::abs(lanczos.eigenvalues[static_cast<std::size_t>(i)] -
                                             dense.eigenvalues[static_cast<std::size_t>(i)]));
    }
    return make("Lanczos lowest-4 matches the dense solver (L = 3)", worst, 1e-8);
}

CheckOutcome exchange_block() {
    // One site, two particles, even sector: H is the 2x2 exchange block with eigenvalues -|W|, +|W|.
    ModelParams params{};
    params.T = -1.0;
    params.so_fwd = 0.0;
    params.W = 2.5;
    const SectorBasis basis(1, 2, Parity::Even);
    const auto dense = dense_all(build_hamiltonian(params, basis));
    const double err = std::max(std::abs(dense.eigenvalues[0] + 2.5), std::abs(dense.eigenvalues[1] - 2.5));
    return make("one-site exchange block eigenvalues are -|W|, +|W|", err, 1e-12);
}

CheckOutcome entropy_complement() {
    const SectorBasis basis(3, 4, Parity::Even);
    const auto h = build_hamiltonian(ModelParams::preset(15.0), basis);
    const auto dense = dense_all(h);
    double worst = 0.0;
    for (std::size_t v = 0; v < 4; ++v)
        for (int cut = 1; cut < 3; ++cut) {
            const auto& vec = dense.eigenvectors[v];
            worst = std::max(worst, std::abs(entropy(rdm(vec, basis, {1, cut})) - entropy(rdm(vec, basis, {cut + 1, 3}))));
        }
    return make("entanglement entropy complement identity (L = 3)", worst, 1e-10);
}

}  // namespace

std::vector<CheckOutcome> run_selfcheck() {
    const std::pair<const char*, std::function<CheckOutcome()>> checks[] = {
        {"anticommutation", anticommutation},     {"exchange_block", exchange_block},
        {"block_structure", block_structure},     {"chiral_involution", chiral_involution},
        {"chiral_commutes", chiral_commutes},     {"odd_n_degeneracy", odd_n_degeneracy},
        {"lanczos_vs_dense", lanczos_vs_dense},   {"entropy_complement", entropy_complement}};
    std::vector<CheckOutcome> out;
    for (const auto& [name, check] : checks) {
        try {
            out.push_back(check());
        } catch (const std::exception& e) {
            out.push_back({name, false, 0.0, 0.0, std::string("threw: ") + e.what()});
        }
    }
    return out;
}

}  // namespace majed
