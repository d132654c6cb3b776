#include "eig.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

#include <Eigen/Dense>

namespace majed {

namespace {

using Eigen::MatrixXd;
using Eigen::VectorXd;

struct KrylovOutcome {
    std::vector<double> values;
    MatrixXd vectors;  // n x k
    bool converged = false;
};

double tolerance_for(double tol, double lambda) { return tol * std::max(1.0, std::abs(lambda)); }

// Orthogonalize w against `locked` and the first `count` columns of V (classical Gram-Schmidt,
// applied twice). Returns the coefficients against V.
VectorXd orthogonalize(const MatrixXd& locked, const MatrixXd& V, Eigen::Index count, VectorXd& w) {
    VectorXd coeff = VectorXd::Zero(count);
    for (int pass = 0; pass < 2; ++pass) {
        if (locked.cols() > 0) w.noalias() -= locked * (locked.transpose() * w);
        if (count > 0) {
            const VectorXd c = V.leftCols(count).transpose() * w;
            w.noalias() -= V.leftCols(count) * c;
            coeff += c;
        }
    }
    return coeff;
}

// Random direction orthogonal to everything seen so far; false if the space is exhausted.
bool inject_random(const MatrixXd& locked, const MatrixXd& V, Eigen::Index count, std::mt19937_64& rng,
                   VectorXd& out) {
    std::uniform_real_distribution<double> dist(-1.0, 1.0);
    for (int attempt = 0; attempt < 4; ++attempt) {
        for (Eigen::Index i = 0; i < out.size(); ++i) out[i] = dist(rng);
        orthogonalize(locked, V, count, out);
        const double norm = out.norm();
        if (norm > 1e-8) {
            out /= norm;
            return true;
        }
    }
    return false;
}

// Thick-restart (Krylov-Schur) Lanczos on the complement of `locked`.
KrylovOutcome krylov_schur(const SymmetricOperator& h, int want, double tol, const VectorXd& start,
                           const MatrixXd& locked, int max_basis, std::int64_t max_matvecs, std::uint64_t seed,
                           std::int64_t& matvecs) {
    const auto n = static_cast<Eigen::Index>(h.dim());
    const Eigen::Index available = n - locked.cols();
    const Eigen::Index m = std::min<Eigen::Index>(max_basis, available);
    want = static_cast<int>(std::min<Eigen::Index>(want, m));
    std::mt19937_64 rng(seed ^ 0x9e3779b97f4a7c15ULL);

    MatrixXd V(n, m + 1);
    MatrixXd T = MatrixXd::Zero(m, m);
    VectorXd w(n);

    VectorXd v0 = start;
    orthogonalize(locked, V, 0, v0);
    if (v0.norm() < 1e-8 && !inject_random(locked, V, 0, rng, v0)) throw NumericalIntegrityError("empty Krylov space");
    V.col(0) = v0 / v0.norm();

    Eigen::Index kept = 0;  // columns carried over from the last restart
    double beta = 0.0;
    KrylovOutcome out;
    Eigen::SelfAdjointEigenSolver<MatrixXd> small;

    while (true) {
        for (Eigen::Index j = kept; j < m; ++j) {
            h.apply(std::span<const double>(V.col(j).data(), static_cast<std::size_t>(n)),
                    std::span<double>(w.data(), static_cast<std::size_t>(n)));
            ++matvecs;
            const VectorXd coeff = orthogonalize(locked, V, j + 1, w);
            for (Eigen::Index i = 0; i <= j; ++i) T(i, j) = T(j, i) = coeff[i];
            beta = w.norm();
            const bool exhausted = j + 1 == available;
            if (exhausted) {
                beta = 0.0;
                V.col(j + 1).setZero();
            } else if (beta <= 1e-12 * std::max(1.0, T.topLeftCorner(j + 1, j + 1).cwiseAbs().maxCoeff())) {
                // Invariant subspace: continue with a fresh orthogonal direction, zero coupling.
                beta = 0.0;
                VectorXd fresh(n);
                if (!inject_random(locked, V, j + 1, rng, fresh)) fresh.setZero();
                V.col(j + 1) = fresh;
            } else {
                V.col(j + 1) = w / beta;
            }
            if (j + 1 < m) T(j + 1, j) = T(j, j + 1) = beta;
        }

        small.compute(T);
        const VectorXd& theta = small.eigenvalues();
        const MatrixXd& Y = small.eigenvectors();

        bool done = true;
        for (int i = 0; i < want; ++i)
            if (std::abs(beta * Y(m - 1, i)) > tolerance_for(tol, theta[i])) done = false;

        if (done || matvecs >= max_matvecs || m == available) {
            out.values.assign(theta.data(), theta.data() + want);
            out.vectors = V.leftCols(m) * Y.leftCols(want);
            out.converged = done || m == available;
            return out;
        }

        // Keep the lowest Ritz vectors plus the residual direction.
        kept = std::min<Eigen::Index>(m - 1, std::max<Eigen::Index>(want + 1, (m + want) / 2));
        constexpr Eigen::Index kRowBlock = 4096;
        for (Eigen::Index r = 0; r < n; r += kRowBlock) {
            const Eigen::Index rows = std::min(kRowBlock, n - r);
            const MatrixXd block = V.block(r, 0, rows, m) * Y.leftCols(kept);
            V.block(r, 0, rows, kept) = block;
        }
        V.col(kept) = V.col(m);
        T.setZero();
        for (Eigen::Index i = 0; i < kept; ++i) {
            T(i, i) = theta[i];
            T(i, kept) = T(kept, i) = beta * Y(m - 1, i);
        }
    }
}

VectorXd to_eigen(const std::vector<double>& v) { return Eigen::Map<const VectorXd>(v.data(), static_cast<Eigen::Index>(v.size())); }

}  // namespace

std::vector<double> seeded_start_vector(std::size_t dim, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> dist(-1.0, 1.0);
    std::vector<double> v(dim);
    for (double& x : v) x = dist(rng);
    const double norm = std::sqrt(std::inner_product(v.begin(), v.end(), v.begin(), 0.0));
    for (double& x : v) x /= norm;
    return v;
}

double residual_norm(const SymmetricOperator& h, std::span<const double> v, double lambda) {
    std::vector<double> hv(v.size());
    h.apply(v, hv);
    double acc = 0.0;
    for (std::size_t i = 0; i < v.size(); ++i) {
        const double d = hv[i] - lambda * v[i];
        acc += d * d;
    }
    return std::sqrt(acc);
}

EigenResult lowest_k(const SymmetricOperator& h, const LanczosOptions& options) {
    const std::size_t n = h.dim();
    if (n == 0) throw DomainError("empty operator");
    if (options.k < 1) throw DomainError("k must be at least 1");
    if (static_cast<std::size_t>(options.k) > n) throw DomainError("k exceeds the sector dimension");
    if (!(options.tol > 0.0)) throw DomainError("tolerance must be positive");

    const int k = options.k;
    const int max_basis = options.max_basis > 0 ? std::max(options.max_basis, k + 2) : std::max(2 * k + 20, 40);
    const std::int64_t cap =
        options.max_matvecs > 0
            ? options.max_matvecs
            : std::max<std::int64_t>(1000, static_cast<std::int64_t>(10.0 * k * std::sqrt(static_cast<double>(n))));
    const bool check_multiplicity =
        options.multiplicity_check > 0 || (options.multiplicity_check == 0 && n <= 20000);

    VectorXd start = to_eigen(seeded_start_vector(n, options.seed));
    if (!options.guesses.empty()) {
        VectorXd guess = VectorXd::Zero(static_cast<Eigen::Index>(n));
        for (const auto& g : options.guesses) {
            if (g.size() != n) throw DomainError("warm-start guess has the wrong dimension");
            guess += to_eigen(g);
        }
        start = guess + 1e-3 * start;
    }

    std::int64_t matvecs = 0;
    const MatrixXd none(static_cast<Eigen::Index>(n), 0);
    KrylovOutcome main = krylov_schur(h, k, options.tol, start, none, max_basis, cap, options.seed, matvecs);
    bool converged = main.converged;
    std::vector<double> values = main.values;
    MatrixXd vectors = main.vectors;

    if (check_multiplicity && converged) {
        for (std::uint64_t pass = 1; pass <= static_cast<std::uint64_t>(n); ++pass) {
            if (static_cast<std::size_t>(vectors.cols()) >= n) break;
            const VectorXd probe_start = to_eigen(seeded_start_vector(n, options.seed + pass));
            KrylovOutcome probe = krylov_schur(h, 1, options.tol, probe_start, vectors, max_basis, cap,
                                               options.seed + pass, matvecs);
            if (!probe.converged) {
                converged = false;
                break;
            }
            const double top = values.back();
            if (static_cast<int>(values.size()) >= k && probe.values[0] >= top - tolerance_for(options.tol, top))
                break;
            // A missed eigenvalue: merge, re-sort, keep the lowest k.
            MatrixXd merged(vectors.rows(), vectors.cols() + 1);
            merged << vectors, probe.vectors.col(0);
            values.push_back(probe.values[0]);
            std::vector<int> order(values.size());
            std::iota(order.begin(), order.end(), 0);
            std::stable_sort(order.begin(), order.end(), [&](int a, int b) { return values[a] < values[b]; });
            const int keep = std::min<int>(k, static_cast<int>(order.size()));
            std::vector<double> sorted_values(keep);
            MatrixXd sorted_vectors(vectors.rows(), keep);
            for (int i = 0; i < keep; ++i) {
                sorted_values[i] = values[order[i]];
                sorted_vectors.col(i) = merged.col(order[i]);
            }
            values = std::move(sorted_values);
            vectors = std::move(sorted_vectors);
        }
    }

    EigenResult result;
    result.iterations = matvecs;
    result.eigenvalues = values;
    for (Eigen::Index i = 0; i < vectors.cols(); ++i) {
        VectorXd v = vectors.col(i);
        v /= v.norm();
        result.eigenvectors.emplace_back(v.data(), v.data() + v.size());
        const double r = residual_norm(h, result.eigenvectors.back(), values[static_cast<std::size_t>(i)]);
        result.residuals.push_back(r);
        if (r > tolerance_for(options.tol, values[static_cast<std::size_t>(i)])) converged = false;
    }
    result.converged = converged;
    if (!converged)
        throw LanczosConvergenceError("Lanczos did not reach the requested tolerance within " +
                                          std::to_string(cap) + " operator applications",
                                      std::move(result));
    return result;
}

EigenResult dense_all(const SymmetricOperator& h, std::size_t dim_cap) {
    const std::size_t n = h.dim();
    if (n > dim_cap)
        throw ResourceError("dense solve of dimension " + std::to_string(n) + " exceeds the cap " +
                            std::to_string(dim_cap));
    MatrixXd dense(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
    std::vector<double> e(n, 0.0), col(n);
    for (std::size_t c = 0; c < n; ++c) {
        e[c] = 1.0;
        h.apply(e, col);
        e[c] = 0.0;
        for (std::size_t r = 0; r < n; ++r) dense(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = col[r];
    }
    Eigen::SelfAdjointEigenSolver<MatrixXd> solver(dense);
    EigenResult result;
    result.iterations = static_cast<std::int64_t>(n);
    const VectorXd& values = solver.eigenvalues();
    result.eigenvalues.assign(values.data(), values.data() + values.size());
    for (Eigen::Index i = 0; i < values.size(); ++i) {
        const VectorXd v = solver.eigenvectors().col(i);
        result.eigenvectors.emplace_back(v.data(), v.data() + v.size());
        result.residuals.push_back((dense * v - values[i] * v).norm());
    }
    return result;
}

}  // namespace majed
