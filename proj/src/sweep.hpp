#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "eig.hpp"
#include "fock.hpp"
#include "model.hpp"
#include "obs.hpp"

namespace majed {

/// Which observables a sweep evaluates per level (all optional).
struct ObservableSelection {
    bool densities = false;
    bool green = false;
    bool green_cross_orbital = false;  ///< <a^dag_{up,+,1} a_{up,-,j}> instead of the same-species form
    std::vector<std::pair<int, int>> mutual_information;  ///< (L_A, L_C) pairs
    std::vector<int> local_parity;                        ///< L_A values
    bool invariants = false;
    LogBase log_base = LogBase::Natural;

    bool any() const {
        return densities || green || !mutual_information.empty() || !local_parity.empty() || invariants;
    }
};

/// Identity checks that must hold for every eigenvector regardless of convergence.
struct InvariantSummary {
    double number_sum_error = 0.0;        ///< |sum density - N|
    double entropy_complement_error = 0.0;///< max_k |S(1..k) - S(k+1..L)|
    double min_mutual_information = 0.0;  ///< over the requested (L_A, L_C) pairs, or all symmetric pairs
    double parity_cut_error = 0.0;        ///< max_k |<P(1..k)> - <P(k+1..L)>| (even sector only)
};

struct LevelObservables {
    std::vector<double> density;  ///< [species * L + (j-1)]
    std::vector<double> green;    ///< j = 1..L
    std::vector<double> mutual_information;
    std::vector<double> local_parity;
    std::optional<InvariantSummary> invariants;
};

struct SweepGrid {
    std::vector<double> w_over_t;
    ModelParams base = ModelParams::preset();  ///< everything except W
    int num_sites = 7;
    int num_particles = 7;
    Parity sector = Parity::Even;
    int k = 5;
    double tol = 1e-10;
    std::uint64_t seed = 20200517;
    bool warm_start = true;  ///< seed each point's Lanczos with the previous eigenvectors
    ObservableSelection observables;

    /// lo, lo+step, ..., hi (inclusive within half a step).
    static std::vector<double> range(double lo, double hi, double step);
    void validate() const;
};

struct SweepPoint {
    double w_over_t = 0.0;
    std::vector<double> energies;
    std::vector<double> residuals;
    std::vector<int> symmetry;         ///< reflected spin-orbital flip eigenvalue (+1/-1), 0 if not a symmetry
    std::vector<int> branch;           ///< overlap-tracked branch label
    std::vector<double> match_overlap; ///< |<previous matched|current>|, 1 at the first point
    std::vector<LevelObservables> observables;
    std::int64_t matvecs = 0;
    std::string error;  ///< empty when the solve converged
};

struct SweepResult {
    SweepGrid grid;
    std::vector<SweepPoint> points;

    bool ok() const;
};

/// Called once per solved point while its eigenvectors are still alive.
using PointObserver = std::function<void(const SweepPoint&, const EigenResult&, const SectorBasis&)>;

SweepResult run_sweep(const SweepGrid& grid, const PointObserver& observer = {});

/// Observables of one eigenvector.
LevelObservables evaluate_observables(std::span<const double> vec, const SectorBasis& basis,
                                      const ObservableSelection& selection);

/// True when U_+ = U_- so the reflected spin-orbital flip commutes with H.
bool has_reflected_flip_symmetry(const ModelParams& params);

/// Level assignment maximizing total |overlap| (ties to energy order); new labels for weak matches.
std::vector<int> match_branches(const std::vector<std::vector<double>>& previous, const std::vector<int>& previous_labels,
                                const std::vector<std::vector<double>>& current, int& next_label,
                                std::vector<double>& overlaps, double new_branch_threshold = 0.5);

struct CubicFit {
    std::array<double, 4> coefficients{};  ///< c3, c2, c1, c0
    double residual_rms = 0.0;

    double operator()(double x) const {
        return ((coefficients[0] * x + coefficients[1]) * x + coefficients[2]) * x + coefficients[3];
    }
};

/// Least-squares cubic through (x, y).
CubicFit fit_cubic(std::span<const double> x, std::span<const double> y);

/// Cubic through the per-point mean of the four lowest energies.
CubicFit cubic_shift_fit(const SweepResult& sweep);

/// An adiabatic level: rank within one symmetry class (symmetry 0 = all levels).
struct BranchSelector {
    int symmetry = 0;
    int rank = 0;
};

/// Energies of a selected adiabatic level across the sweep, sorted by W/T. Points missing it are skipped.
std::vector<std::pair<double, double>> branch_curve(const std::vector<SweepPoint>& points, const BranchSelector& branch);

struct CrossingOptions {
    double window_inner = 1.0;  ///< slope windows [W*-outer, W*-inner] and [W*+inner, W*+outer], units of T
    double window_outer = 3.0;
};

struct CrossingReport {
    double w_star = 0.0;     ///< location in W/T
    double gap = 0.0;        ///< minimal separation, units |T|
    double slope_lo = 0.0;   ///< dE/dW of the diabatic branch continuing the lower level from the left
    double slope_hi = 0.0;   ///< dE/dW of the other diabatic branch
    BranchSelector branch_lo;
    BranchSelector branch_hi;
    int grid_index = 0;       ///< index of the sampled gap minimum
    std::size_t points_used = 0;
};

CrossingReport find_avoided_crossing(const std::vector<SweepPoint>& points, const BranchSelector& lo,
                                     const BranchSelector& hi, double T = -1.0, const CrossingOptions& options = {});

struct LandauZenerReport {
    double tunneling_hz = 0.0;  ///< |T| in h*Hz
    double gap_hz = 0.0;        ///< Delta in h*Hz
    double slope_difference = 0.0;
    double gamma_times_rate = 0.0;  ///< Gamma * dW/dt, h*Hz/s
    double critical_rate = 0.0;     ///< dW/dt at which P = 1/2
    std::vector<double> rates;
    std::vector<double> gamma;
    std::vector<double> probability;

    double gamma_at(double rate) const { return gamma_times_rate / rate; }
};

/// P = 1 - exp(-2 pi Gamma), Gamma = 2 pi Delta^2 / (4 |s2 - s1| dW/dt) with energies in h*Hz.
LandauZenerReport landau_zener(const CrossingReport& crossing, double tunneling_hz, const std::vector<double>& rates);

double landau_zener_probability(double gamma);

}  // namespace majed
