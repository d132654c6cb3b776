#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "errors.hpp"
#include "model.hpp"

namespace majed {

struct EigenResult {
    std::vector<double> eigenvalues;                ///< ascending, units of |T|
    std::vector<std::vector<double>> eigenvectors;  ///< orthonormal, one per eigenvalue
    std::vector<double> residuals;                  ///< ||H v - lambda v||_2 from a fresh matvec
    std::int64_t iterations = 0;                    ///< operator applications
    bool converged = true;
};

struct LanczosOptions {
    int k = 5;
    double tol = 1e-10;  ///< residual bound relative to max(1, |lambda|)
    std::uint64_t seed = 20200517;
    int max_basis = 0;              ///< Krylov vectors kept before a thick restart; 0 = auto
    std::int64_t max_matvecs = 0;   ///< 0 = 10 * k * sqrt(dim)
    /// Rerun on the deflated complement until no eigenvalue below the found ones remains.
    /// Catches exact multiplicities a single Krylov sequence cannot see; 0 = auto (on for dim <= 20000).
    int multiplicity_check = 0;
    /// Optional warm start: the start vector is their sum plus a seeded random component.
    std::vector<std::vector<double>> guesses;
};

class LanczosConvergenceError : public ConvergenceError {
public:
    LanczosConvergenceError(const std::string& what, EigenResult best)
        : ConvergenceError(what), best_(std::move(best)) {}
    const EigenResult& best() const { return best_; }

private:
    EigenResult best_;
};

/// k lowest eigenpairs by thick-restart Lanczos with full reorthogonalization.
EigenResult lowest_k(const SymmetricOperator& h, const LanczosOptions& options);

inline constexpr std::size_t kDefaultDenseCap = 4096;

/// Every eigenpair via a dense symmetric solver.
EigenResult dense_all(const SymmetricOperator& h, std::size_t dim_cap = kDefaultDenseCap);

/// Elementwise pseudo-random vector from the seed, normalized.
std::vector<double> seeded_start_vector(std::size_t dim, std::uint64_t seed);

/// ||H v - lambda v||_2
double residual_norm(const SymmetricOperator& h, std::span<const double> v, double lambda);

}  // namespace majed
