#include "sweep.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>

#include <Eigen/Dense>

#include "errors.hpp"

namespace majed {

namespace {

double dot(const std::vector<double>& a, const std::vector<double>& b) {
    return std::inner_product(a.begin(), a.end(), b.begin(), 0.0);
}

// Slope of the least-squares line through the samples with x in [lo, hi].
std::optional<double> window_slope(const std::vector<std::pair<double, double>>& curve, double lo, double hi) {
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    int n = 0;
    for (const auto& [x, y] : curve) {
        if (x < lo - 1e-9 || x > hi + 1e-9) continue;
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
        ++n;
    }
    if (n < 2) return std::nullopt;
    const double denom = n * sxx - sx * sx;
    if (std::abs(denom) < 1e-14) return std::nullopt;
    return (n * sxy - sx * sy) / denom;
}

}  // namespace

std::vector<double> SweepGrid::range(double lo, double hi, double step) {
    if (!(step > 0.0) || hi < lo) throw DomainError("grid needs lo <= hi and a positive step");
    std::vector<double> out;
    const auto count = static_cast<std::int64_t>(std::floor((hi - lo) / step + 0.5));
    for (std::int64_t i = 0; i <= count; ++i) out.push_back(lo + static_cast<double>(i) * step);
    return out;
}

void SweepGrid::validate() const {
    if (w_over_t.empty()) throw DomainError("sweep grid is empty");
    for (std::size_t i = 1; i < w_over_t.size(); ++i)
        if (!(w_over_t[i] > w_over_t[i - 1])) throw DomainError("sweep grid must be strictly increasing");
    base.validate();
    if (base.T == 0.0) throw DomainError("W/T grids need a nonzero tunneling T");
    if (k < 1) throw DomainError("k must be at least 1");
    if (!(tol > 0.0)) throw DomainError("tolerance must be positive");
    for (const auto& [a, c] : observables.mutual_information)
        if (a < 1 || c < 1 || a + c >= num_sites)
            throw DomainError("mutual information regions need L_A, L_C >= 1 and L_A + L_C < L");
    for (int la : observables.local_parity)
        if (la < 1 || la >= num_sites) throw DomainError("local parity cut needs 1 <= L_A < L");
}

bool SweepResult::ok() const {
    return std::all_of(points.begin(), points.end(), [](const SweepPoint& p) { return p.error.empty(); });
}

bool has_reflected_flip_symmetry(const ModelParams& params) { return params.U_plus == params.U_minus; }

LevelObservables evaluate_observables(std::span<const double> vec, const SectorBasis& basis,
                                      const ObservableSelection& sel) {
    const int L = basis.num_sites();
    LevelObservables out;
    if (sel.densities || sel.invariants) {
        out.density.resize(static_cast<std::size_t>(kSpeciesPerSite * L));
        for (Species s : kAllSpecies)
            for (int j = 1; j <= L; ++j)
                out.density[static_cast<std::size_t>(static_cast<int>(s) * L + j - 1)] = density(vec, basis, s, j);
    }
    if (sel.green) {
        const Species right = sel.green_cross_orbital ? Species::UpMinus : Species::UpPlus;
        for (int j = 1; j <= L; ++j) out.green.push_back(green_function(vec, basis, Species::UpPlus, right, j));
    }
    for (const auto& [a, c] : sel.mutual_information)
        out.mutual_information.push_back(mutual_information(vec, basis, a, c, sel.log_base));
    for (int la : sel.local_parity) out.local_parity.push_back(local_parity_expectation(vec, basis, la));

    if (sel.invariants) {
        InvariantSummary inv;
        const double total = std::accumulate(out.density.begin(), out.density.end(), 0.0);
        inv.number_sum_error = std::abs(total - basis.num_particles());
        for (int cut = 1; cut < L; ++cut) {
            const double left = region_entropy(vec, basis, {1, cut});
            const double right = region_entropy(vec, basis, {cut + 1, L});
            inv.entropy_complement_error = std::max(inv.entropy_complement_error, std::abs(left - right));
            if (basis.parity() == Parity::Even) {
                const double pl = local_parity_expectation(vec, basis, RegionSpec{1, cut});
                const double pr = local_parity_expectation(vec, basis, RegionSpec{cut + 1, L});
                inv.parity_cut_error = std::max(inv.parity_cut_error, std::abs(pl - pr));
            }
        }
        double mi_min = 0.0;
        bool first = true;
        auto consider = [&](double v) {
            mi_min = first ? v : std::min(mi_min, v);
            first = false;
        };
        for (double v : out.mutual_information) consider(v);
        if (first)
            for (int w = 1; 2 * w < L; ++w) consider(mutual_information(vec, basis, w, w));
        inv.min_mutual_information = mi_min;
        out.invariants = inv;
    }
    return out;
}

std::vector<int> match_branches(const std::vector<std::vector<double>>& previous,
                                const std::vector<int>& previous_labels,
                                const std::vector<std::vector<double>>& current, int& next_label,
                                std::vector<double>& overlaps, double new_branch_threshold) {
    const std::size_t np = previous.size(), nc = current.size();
    std::vector<std::vector<double>> ov(nc, std::vector<double>(np));
    for (std::size_t c = 0; c < nc; ++c)
        for (std::size_t p = 0; p < np; ++p) ov[c][p] = std::abs(dot(current[c], previous[p]));

    // Greedy on descending overlap; equal overlaps resolve to the lower (current, previous) energy index.
    std::vector<std::tuple<double, std::size_t, std::size_t>> pairs;
    for (std::size_t c = 0; c < nc; ++c)
        for (std::size_t p = 0; p < np; ++p) pairs.emplace_back(ov[c][p], c, p);
    std::stable_sort(pairs.begin(), pairs.end(), [](const auto& a, const auto& b) {
        if (std::get<0>(a) != std::get<0>(b)) return std::get<0>(a) > std::get<0>(b);
        return std::tie(std::get<1>(a), std::get<2>(a)) < std::tie(std::get<1>(b), std::get<2>(b));
    });
    std::vector<int> labels(nc, -1);
    std::vector<bool> taken(np, false);
    overlaps.assign(nc, 0.0);
    for (const auto& [o, c, p] : pairs) {
        if (labels[c] >= 0 || taken[p] || o < new_branch_threshold) continue;
        labels[c] = previous_labels[p];
        overlaps[c] = o;
        taken[p] = true;
    }
    for (std::size_t c = 0; c < nc; ++c) {
        if (labels[c] >= 0) continue;
        labels[c] = next_label++;
        overlaps[c] = *std::max_element(ov[c].begin(), ov[c].end());
    }
    return labels;
}

SweepResult run_sweep(const SweepGrid& grid, const PointObserver& observer) {
    grid.validate();
    const SectorBasis basis(grid.num_sites, grid.num_particles, grid.sector);
    if (static_cast<std::size_t>(grid.k) > basis.size()) throw DomainError("k exceeds the sector dimension");
    // The reflected flip maps every (N, parity) sector onto itself, so its eigenvalue labels levels.
    const bool labelled = has_reflected_flip_symmetry(grid.base);
    const int L = grid.num_sites;
    const StateTransform flip = [L](FockState s) { return reflected_spin_orbital_flip(s, L); };

    SweepResult result;
    result.grid = grid;
    std::vector<std::vector<double>> previous;
    std::vector<int> previous_labels;
    int next_label = 0;

    for (double wt : grid.w_over_t) {
        ModelParams params = grid.base;
        params.W = wt * params.T;
        SweepPoint point;
        point.w_over_t = wt;

        const SparseHamiltonian h = build_hamiltonian(params, basis);
        LanczosOptions options;
        options.k = grid.k;
        options.tol = grid.tol;
        options.seed = grid.seed;
        if (grid.warm_start) options.guesses = previous;

        EigenResult eig;
        try {
            eig = lowest_k(h, options);
        } catch (const LanczosConvergenceError& e) {
            eig = e.best();
            point.error = e.what();
        }
        point.energies = eig.eigenvalues;
        point.residuals = eig.residuals;
        point.matvecs = eig.iterations;

        for (const auto& v : eig.eigenvectors) {
            int label = 0;
            if (labelled) label = symmetry_expectation(v, basis, flip) >= 0.0 ? 1 : -1;
            point.symmetry.push_back(label);
        }

        if (previous.empty()) {
            point.branch.resize(eig.eigenvectors.size());
            std::iota(point.branch.begin(), point.branch.end(), 0);
            next_label = static_cast<int>(point.branch.size());
            point.match_overlap.assign(eig.eigenvectors.size(), 1.0);
        } else {
            point.branch = match_branches(previous, previous_labels, eig.eigenvectors, next_label, point.match_overlap);
        }

        if (grid.observables.any())
            for (const auto& v : eig.eigenvectors) point.observables.push_back(evaluate_observables(v, basis, grid.observables));

        if (observer) observer(point, eig, basis);
        previous = std::move(eig.eigenvectors);
        previous_labels = point.branch;
        result.points.push_back(std::move(point));
    }
    return result;
}

CubicFit fit_cubic(std::span<const double> x, std::span<const double> y) {
    if (x.size() != y.size()) throw DomainError("fit abscissae and ordinates differ in length");
    const auto n = static_cast<Eigen::Index>(x.size());
    Eigen::MatrixXd a(n, 4);
    Eigen::VectorXd b(n);
    for (Eigen::Index i = 0; i < n; ++i) {
        const double xi = x[static_cast<std::size_t>(i)];
        a(i, 0) = xi * xi * xi;
        a(i, 1) = xi * xi;
        a(i, 2) = xi;
        a(i, 3) = 1.0;
        b[i] = y[static_cast<std::size_t>(i)];
    }
    Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(a);
    if (n < 4 || qr.rank() < 4) throw DomainError("cubic fit is rank deficient (need at least 4 distinct abscissae)");
    const Eigen::VectorXd c = qr.solve(b);
    CubicFit fit;
    for (int i = 0; i < 4; ++i) fit.coefficients[static_cast<std::size_t>(i)] = c[i];
    fit.residual_rms = std::sqrt((a * c - b).squaredNorm() / static_cast<double>(n));
    return fit;
}

CubicFit cubic_shift_fit(const SweepResult& sweep) {
    if (sweep.points.size() < 8) throw DomainError("cubic shift fit needs at least 8 sweep points");
    std::vector<double> x, y;
    for (const auto& p : sweep.points) {
        if (p.energies.size() < 4) throw DomainError("cubic shift fit needs at least 4 levels per point");
        x.push_back(p.w_over_t);
        y.push_back(0.25 * (p.energies[0] + p.energies[1] + p.energies[2] + p.energies[3]));
    }
    return fit_cubic(x, y);
}

std::vector<std::pair<double, double>> branch_curve(const std::vector<SweepPoint>& points,
                                                    const BranchSelector& branch) {
    std::vector<std::pair<double, double>> curve;
    for (const auto& p : points) {
        int seen = 0;
        for (std::size_t i = 0; i < p.energies.size(); ++i) {
            const int sym = i < p.symmetry.size() ? p.symmetry[i] : 0;
            if (branch.symmetry != 0 && sym != branch.symmetry) continue;
            if (seen++ == branch.rank) {
                curve.emplace_back(p.w_over_t, p.energies[i]);
                break;
            }
        }
    }
    std::sort(curve.begin(), curve.end());
    curve.erase(std::unique(curve.begin(), curve.end(),
                            [](const auto& a, const auto& b) { return std::abs(a.first - b.first) < 1e-12; }),
                curve.end());
    return curve;
}

CrossingReport find_avoided_crossing(const std::vector<SweepPoint>& points, const BranchSelector& lo,
                                     const BranchSelector& hi, double T, const CrossingOptions& options) {
    if (T == 0.0) throw DomainError("tunneling T must be nonzero");
    const auto lower = branch_curve(points, lo);
    const auto upper = branch_curve(points, hi);

    // Gap on the W/T values where both branches exist.
    std::vector<double> xs, gaps;
    for (const auto& [x, e_lo] : lower) {
        auto it = std::find_if(upper.begin(), upper.end(), [x = x](const auto& u) { return std::abs(u.first - x) < 1e-12; });
        if (it == upper.end()) continue;
        xs.push_back(x);
        gaps.push_back(it->second - e_lo);
    }
    if (xs.size() < 3) throw NotFoundError("fewer than three points carry both branches");

    // Deepest interior local minimum.
    std::optional<std::size_t> best;
    for (std::size_t i = 1; i + 1 < xs.size(); ++i) {
        if (gaps[i] <= gaps[i - 1] && gaps[i] <= gaps[i + 1] && (gaps[i] < gaps[i - 1] || gaps[i] < gaps[i + 1]))
            if (!best || gaps[i] < gaps[*best]) best = i;
    }
    if (!best) throw NotFoundError("branch gap has no interior minimum on this grid");
    const std::size_t i = *best;

    // Parabola through the three samples around the minimum.
    CrossingReport report;
    report.branch_lo = lo;
    report.branch_hi = hi;
    report.grid_index = static_cast<int>(i);
    report.points_used = xs.size();
    {
        const double x0 = xs[i - 1], x1 = xs[i], x2 = xs[i + 1];
        const double y0 = gaps[i - 1], y1 = gaps[i], y2 = gaps[i + 1];
        const double d01 = (y1 - y0) / (x1 - x0), d12 = (y2 - y1) / (x2 - x1);
        const double curvature = (d12 - d01) / (x2 - x0);
        if (curvature > 0.0) {
            const double b = d01 - curvature * (x0 + x1);
            const double xv = std::clamp(-b / (2.0 * curvature), x0, x2);
            report.w_star = xv;
            report.gap = y0 + d01 * (xv - x0) + curvature * (xv - x0) * (xv - x1);
        } else {
            report.w_star = x1;
            report.gap = y1;
        }
        report.gap = std::max(0.0, report.gap);
    }

    // Diabatic slopes: the lower level on the left continues as the upper level on the right.
    const double ws = report.w_star;
    const auto left_lo = window_slope(lower, ws - options.window_outer, ws - options.window_inner);
    const auto right_hi = window_slope(upper, ws + options.window_inner, ws + options.window_outer);
    const auto left_hi = window_slope(upper, ws - options.window_outer, ws - options.window_inner);
    const auto right_lo = window_slope(lower, ws + options.window_inner, ws + options.window_outer);
    if (!left_lo || !right_hi || !left_hi || !right_lo)
        throw NotFoundError("slope windows around the crossing hold fewer than two samples per branch");
    // dE/dW = (dE/d(W/T)) / T with E in units of |T|: sign(T) * grid slope.
    const double to_w = T > 0 ? 1.0 : -1.0;
    report.slope_lo = to_w * 0.5 * (*left_lo + *right_hi);
    report.slope_hi = to_w * 0.5 * (*left_hi + *right_lo);
    return report;
}

double landau_zener_probability(double gamma) { return 1.0 - std::exp(-2.0 * std::numbers::pi * gamma); }

LandauZenerReport landau_zener(const CrossingReport& crossing, double tunneling_hz, const std::vector<double>& rates) {
    if (!(crossing.gap > 0.0)) throw DegenerateCrossingError("avoided-crossing gap is zero; Landau-Zener rate undefined");
    if (!(tunneling_hz > 0.0)) throw DomainError("physical tunneling must be positive");
    const double slope_difference = std::abs(crossing.slope_hi - crossing.slope_lo);
    if (!(slope_difference > 0.0)) throw DegenerateCrossingError("diabatic slopes are equal");

    LandauZenerReport report;
    report.tunneling_hz = tunneling_hz;
    report.gap_hz = crossing.gap * tunneling_hz;
    report.slope_difference = slope_difference;
    // hbar = h / (2 pi) and every energy is in h*Hz, so 1/hbar contributes 2 pi.
    report.gamma_times_rate =
        2.0 * std::numbers::pi * report.gap_hz * report.gap_hz / (4.0 * slope_difference);
    const double critical_gamma = std::log(2.0) / (2.0 * std::numbers::pi);
    report.critical_rate = report.gamma_times_rate / critical_gamma;
    for (double rate : rates) {
        if (!(rate > 0.0)) throw DomainError("ramp rates must be positive");
        report.rates.push_back(rate);
        report.gamma.push_back(report.gamma_times_rate / rate);
        report.probability.push_back(landau_zener_probability(report.gamma.back()));
    }
    return report;
}

}  // namespace majed
