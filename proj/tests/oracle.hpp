#pragma once
// Independent reference implementations for tests: Jordan-Wigner operators built from
// Kronecker products over the full 2^(4L) Fock space, the Hamiltonian written out term by
// term, and a brute-force fermionic partial trace.

#include <bit>
#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/Sparse>

namespace oracle {

using Sparse = Eigen::SparseMatrix<double>;

inline Sparse kron(const Sparse& a, const Sparse& b) {
    Sparse out(a.rows() * b.rows(), a.cols() * b.cols());
    std::vector<Eigen::Triplet<double>> t;
    for (int ka = 0; ka < a.outerSize(); ++ka)
        for (Sparse::InnerIterator ia(a, ka); ia; ++ia)
            for (int kb = 0; kb < b.outerSize(); ++kb)
                for (Sparse::InnerIterator ib(b, kb); ib; ++ib)
                    t.emplace_back(ia.row() * b.rows() + ib.row(), ia.col() * b.cols() + ib.col(),
                                   ia.value() * ib.value());
    out.setFromTriplets(t.begin(), t.end());
    return out;
}

inline Sparse small(double a00, double a01, double a10, double a11) {
    Sparse m(2, 2);
    std::vector<Eigen::Triplet<double>> t;
    if (a00 != 0) t.emplace_back(0, 0, a00);
    if (a01 != 0) t.emplace_back(0, 1, a01);
    if (a10 != 0) t.emplace_back(1, 0, a10);
    if (a11 != 0) t.emplace_back(1, 1, a11);
    m.setFromTriplets(t.begin(), t.end());
    return m;
}

/// Annihilator of mode m among `modes` modes: Z on lower modes, |0><1| on m, identity above.
/// Basis index = sum_q n_q 2^q, so the Kronecker product runs from the top mode down.
inline Sparse annihilator(int m, int modes) {
    const Sparse id = small(1, 0, 0, 1), z = small(1, 0, 0, -1), lower = small(0, 1, 0, 0);
    Sparse out(1, 1);
    out.insert(0, 0) = 1.0;
    for (int q = modes - 1; q >= 0; --q) out = kron(out, q < m ? z : (q == m ? lower : id));
    return out;
}

struct Couplings {
    double T = -1, U_plus = 0, U_minus = 0, U = 0, W = 0, so_fwd = 8, so_bwd = 0;
};

/// Full-space Hamiltonian, species order (up+, down+, up-, down-) within each site.
inline Sparse hamiltonian(const Couplings& c, int L) {
    const int M = 4 * L;
    std::vector<Sparse> a(static_cast<std::size_t>(M)), ad(static_cast<std::size_t>(M));
    for (int m = 0; m < M; ++m) {
        a[static_cast<std::size_t>(m)] = annihilator(m, M);
        ad[static_cast<std::size_t>(m)] = Sparse(a[static_cast<std::size_t>(m)].transpose());
    }
    auto A = [&](int j, int s) -> const Sparse& { return a[static_cast<std::size_t>(4 * j + s)]; };
    auto C = [&](int j, int s) -> const Sparse& { return ad[static_cast<std::size_t>(4 * j + s)]; };
    const int up_p = 0, dn_p = 1, up_m = 2, dn_m = 3;
    const auto dim = static_cast<Eigen::Index>(1) << M;
    Sparse h(dim, dim);
    auto add_hc = [&h](const Sparse& op, double coeff) {
        if (coeff == 0.0) return;
        h += coeff * op;
        h += coeff * Sparse(op.transpose());
    };
    for (int j = 0; j + 1 < L; ++j) {
        for (int s = 0; s < 4; ++s) add_hc(C(j + 1, s) * A(j, s), c.T);
        add_hc(C(j, up_p) * A(j + 1, dn_m), c.so_fwd);
        add_hc(C(j, up_m) * A(j + 1, dn_p), c.so_fwd);
        add_hc(C(j + 1, up_p) * A(j, dn_m), c.so_bwd);
        add_hc(C(j + 1, up_m) * A(j, dn_p), c.so_bwd);
    }
    for (int j = 0; j < L; ++j) {
        auto n = [&](int s) { return Sparse(C(j, s) * A(j, s)); };
        h += c.U_plus * (n(up_p) * n(dn_p));
        h += c.U_minus * (n(dn_m) * n(up_m));
        for (int alpha : {up_m, dn_m})
            for (int beta : {up_p, dn_p}) h += c.U * (n(alpha) * n(beta));
        add_hc(C(j, up_p) * C(j, dn_m) * A(j, dn_p) * A(j, up_m), c.W);
    }
    h.prune(0.0);
    return h;
}

inline Couplings random_couplings(std::mt19937_64& rng) {
    std::uniform_real_distribution<double> u(-2.0, 2.0);
    Couplings c;
    c.T = -1.0;
    c.U_plus = u(rng);
    c.U_minus = u(rng);
    c.U = u(rng);
    c.W = 4.0 * u(rng);
    c.so_fwd = 3.0 * u(rng);
    c.so_bwd = 3.0 * u(rng);
    return c;
}

/// Sign and image of moving the region modes [lo, hi) in front of all other modes.
inline std::pair<int, std::uint64_t> region_first(std::uint64_t s, int lo, int hi, int modes) {
    std::uint64_t region = 0, rest = 0;
    int nr = 0, nrest = 0, swaps = 0;
    for (int m = 0; m < modes; ++m) {
        const bool occ = (s >> m) & 1;
        if (m >= lo && m < hi) {
            if (occ) {
                region |= std::uint64_t{1} << nr;
                swaps += std::popcount(rest);  // occupied outsiders this mode hops over
            }
            ++nr;
        } else {
            if (occ) rest |= std::uint64_t{1} << nrest;
            ++nrest;
        }
    }
    return {swaps % 2 ? -1 : 1, region | (rest << nr)};
}

/// rho_A over sites [j_lo, j_hi] (1-based) of a full-space vector, fermionic ordering with the
/// region moved to the front.
inline Eigen::MatrixXd amplitudes(const Eigen::VectorXd& psi, int L, int j_lo, int j_hi) {
    const int M = 4 * L, lo = 4 * (j_lo - 1), hi = 4 * j_hi, nr = hi - lo;
    const auto da = static_cast<Eigen::Index>(1) << nr;
    const auto db = static_cast<Eigen::Index>(1) << (M - nr);
    Eigen::MatrixXd psi_ab = Eigen::MatrixXd::Zero(da, db);
    for (Eigen::Index s = 0; s < psi.size(); ++s) {
        if (psi[s] == 0.0) continue;
        const auto [sign, image] = region_first(static_cast<std::uint64_t>(s), lo, hi, M);
        psi_ab(static_cast<Eigen::Index>(image & ((std::uint64_t{1} << nr) - 1)), static_cast<Eigen::Index>(image >> nr)) =
            sign * psi[s];
    }
    return psi_ab;
}

inline Eigen::MatrixXd partial_trace(const Eigen::VectorXd& psi, int L, int j_lo, int j_hi) {
    const Eigen::MatrixXd a = amplitudes(psi, L, j_lo, j_hi);
    return a * a.transpose();
}

/// rho over the union of the first `left` and last `right` sites, same ordering rules.
inline Eigen::MatrixXd partial_trace_edges(const Eigen::VectorXd& psi, int L, int left, int right) {
    const int M = 4 * L, nl = 4 * left, nr = 4 * right, nin = nl + nr;
    Eigen::MatrixXd psi_ab = Eigen::MatrixXd::Zero(Eigen::Index{1} << nin, Eigen::Index{1} << (M - nin));
    for (Eigen::Index s = 0; s < psi.size(); ++s) {
        if (psi[s] == 0.0) continue;
        // Move the right block down past the bulk; the left block already leads.
        const auto [sign, image] = region_first(static_cast<std::uint64_t>(s) >> nl, M - nl - nr, M - nl, M - nl);
        const std::uint64_t left_bits = static_cast<std::uint64_t>(s) & ((std::uint64_t{1} << nl) - 1);
        const std::uint64_t right_bits = image & ((std::uint64_t{1} << nr) - 1);
        const std::uint64_t bulk = image >> nr;
        // Right block hops over nothing else: the left block stays in front.
        psi_ab(static_cast<Eigen::Index>(left_bits | (right_bits << nl)), static_cast<Eigen::Index>(bulk)) = sign * psi[s];
    }
    return psi_ab * psi_ab.transpose();
}

/// Scatter a sector vector into the full 2^(4L) space.
template <class States, class Vec>
Eigen::VectorXd embed(const States& states, const Vec& vec, int L) {
    Eigen::VectorXd full = Eigen::VectorXd::Zero(Eigen::Index{1} << (4 * L));
    for (std::size_t i = 0; i < states.size(); ++i) full[static_cast<Eigen::Index>(states[i])] = vec[i];
    return full;
}

inline double entropy(const Eigen::MatrixXd& rho) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(rho, Eigen::EigenvaluesOnly);
    double s = 0.0;
    for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i) {
        const double l = es.eigenvalues()[i];
        if (l > 1e-300) s -= l * std::log(l);
    }
    return s;
}

/// Region entropy from the smaller Gram matrix of the amplitude matrix; avoids 2^(4L)-sized eigenproblems.
inline double region_entropy(const Eigen::VectorXd& psi, int L, int j_lo, int j_hi) {
    const Eigen::MatrixXd a = amplitudes(psi, L, j_lo, j_hi);
    return a.rows() <= a.cols() ? entropy(a * a.transpose()) : entropy(a.transpose() * a);
}

}  // namespace oracle
