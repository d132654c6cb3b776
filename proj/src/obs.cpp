#include "obs.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <string>
#include <tuple>

#include "errors.hpp"

namespace majed {

namespace {

void check_vector(std::span<const double> vec, const SectorBasis& basis) {
    if (vec.size() != basis.size()) throw DomainError("state vector does not match the sector dimension");
}

void check_site(int site, int num_sites) {
    if (site < 1 || site > num_sites)
        throw DomainError("site " + std::to_string(site) + " outside 1.." + std::to_string(num_sites));
}

// Split a lattice word into (region word, complement word); both are compacted.
struct RegionSplitter {
    int shift;
    FockState region_mask;
    FockState below_mask;
    int above_shift;

    RegionSplitter(const RegionSpec& region)
        : shift(kSpeciesPerSite * (region.j_lo - 1)),
          region_mask((FockState{1} << (kSpeciesPerSite * region.width())) - 1),
          below_mask((FockState{1} << shift) - 1),
          above_shift(kSpeciesPerSite * region.j_hi) {}

    FockState region(FockState s) const { return (s >> shift) & region_mask; }
    FockState rest(FockState s) const { return (s & below_mask) | ((s >> above_shift) << shift); }
};

}  // namespace

void RegionSpec::validate(int num_sites) const {
    if (j_lo < 1 || j_lo > j_hi || j_hi > num_sites)
        throw DomainError("region [" + std::to_string(j_lo) + ", " + std::to_string(j_hi) +
                          "] is not a site range inside 1.." + std::to_string(num_sites));
}

double ReducedDensityMatrix::trace() const {
    double t = 0.0;
    for (const auto& b : blocks) t += b.matrix.trace();
    return t;
}

std::vector<double> ReducedDensityMatrix::eigenvalues() const {
    std::vector<double> out;
    for (const auto& b : blocks) {
        if (b.matrix.rows() == 0) continue;
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(b.matrix, Eigen::EigenvaluesOnly);
        const auto& ev = solver.eigenvalues();
        out.insert(out.end(), ev.data(), ev.data() + ev.size());
    }
    return out;
}

Eigen::MatrixXd ReducedDensityMatrix::to_dense() const {
    Eigen::MatrixXd out = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim));
    for (const auto& b : blocks)
        for (std::size_t r = 0; r < b.configs.size(); ++r)
            for (std::size_t c = 0; c < b.configs.size(); ++c)
                out(static_cast<Eigen::Index>(b.configs[r]), static_cast<Eigen::Index>(b.configs[c])) =
                    b.matrix(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c));
    return out;
}

double density(std::span<const double> vec, const SectorBasis& basis, Species species, int site) {
    check_vector(vec, basis);
    check_site(site, basis.num_sites());
    const FockState bit = FockState{1} << mode_index(site - 1, species);
    double acc = 0.0;
    for (std::size_t i = 0; i < basis.size(); ++i)
        if (basis[i] & bit) acc += vec[i] * vec[i];
    return acc;
}

double green_function(std::span<const double> vec, const SectorBasis& basis, Species left, Species right, int site) {
    check_vector(vec, basis);
    check_site(site, basis.num_sites());
    const ModeOp ops[] = {{OpKind::Create, mode_index(0, left)}, {OpKind::Annihilate, mode_index(site - 1, right)}};
    double acc = 0.0;
    for (std::size_t i = 0; i < basis.size(); ++i) {
        if (vec[i] == 0.0) continue;
        auto hit = apply_string(ops, basis[i]);
        if (!hit) continue;
        const std::int64_t target = basis.find(hit->state);
        if (target < 0) continue;  // leaves the sector: zero overlap
        acc += vec[static_cast<std::size_t>(target)] * hit->sign * vec[i];
    }
    return acc;
}

ReducedDensityMatrix rdm(std::span<const double> vec, const SectorBasis& basis, const RegionSpec& region,
                         std::size_t dim_cap) {
    check_vector(vec, basis);
    region.validate(basis.num_sites());
    const int region_modes = kSpeciesPerSite * region.width();
    if (region_modes >= 63 || (std::size_t{1} << region_modes) > dim_cap)
        throw ResourceError("region of " + std::to_string(region.width()) +
                            " sites exceeds the density-matrix dimension cap " + std::to_string(dim_cap));

    ReducedDensityMatrix out;
    out.region = region;
    out.dim = std::size_t{1} << region_modes;
    out.blocks.resize(static_cast<std::size_t>(region_modes) + 1);
    std::vector<std::uint32_t> local_index(out.dim);
    for (std::size_t r = 0; r < out.dim; ++r) {
        auto& block = out.blocks[static_cast<std::size_t>(std::popcount(r))];
        local_index[r] = static_cast<std::uint32_t>(block.configs.size());
        block.configs.push_back(r);
    }
    for (std::size_t n = 0; n < out.blocks.size(); ++n) {
        auto& block = out.blocks[n];
        block.particles = static_cast<int>(n);
        const auto d = static_cast<Eigen::Index>(block.configs.size());
        block.matrix = Eigen::MatrixXd::Zero(d, d);
    }

    // rho[r, r'] = sum_c psi(r, c) psi(r', c): bucket amplitudes by complement word.
    const RegionSplitter split(region);
    std::vector<std::tuple<FockState, FockState, double>> entries;
    entries.reserve(basis.size());
    for (std::size_t i = 0; i < basis.size(); ++i)
        if (vec[i] != 0.0) entries.emplace_back(split.rest(basis[i]), split.region(basis[i]), vec[i]);
    std::sort(entries.begin(), entries.end());
    for (std::size_t lo = 0; lo < entries.size();) {
        std::size_t hi = lo;
        while (hi < entries.size() && std::get<0>(entries[hi]) == std::get<0>(entries[lo])) ++hi;
        for (std::size_t a = lo; a < hi; ++a) {
            const auto [c, ra, va] = entries[a];
            auto& block = out.blocks[static_cast<std::size_t>(std::popcount(ra))];
            for (std::size_t b = lo; b < hi; ++b) {
                const FockState rb = std::get<1>(entries[b]);
                if (std::popcount(rb) != std::popcount(ra)) continue;
                block.matrix(local_index[ra], local_index[rb]) += va * std::get<2>(entries[b]);
            }
        }
        lo = hi;
    }
    return out;
}

double entropy_from_spectrum(std::span<const double> spectrum, LogBase base) {
    double s = 0.0;
    for (double lambda : spectrum) {
        if (lambda < -1e-9)
            throw NumericalIntegrityError("density-matrix eigenvalue " + std::to_string(lambda) + " is negative");
        if (lambda <= 0.0) continue;
        s -= lambda * std::log(lambda);
    }
    if (base == LogBase::Two) s /= std::log(2.0);
    return std::max(0.0, s);
}

double entropy(const ReducedDensityMatrix& rho, LogBase base) { return entropy_from_spectrum(rho.eigenvalues(), base); }

std::vector<double> region_spectrum(std::span<const double> vec, const SectorBasis& basis, const RegionSpec& region) {
    check_vector(vec, basis);
    region.validate(basis.num_sites());
    const RegionSplitter split(region);
    const bool by_parity = basis.parity() != Parity::Unrestricted;

    // (block key, region word, rest word, amplitude); key = 2 * n_region + parity_plus(region).
    struct Entry {
        int key;
        FockState r;
        FockState c;
        double amp;
    };
    std::vector<Entry> entries;
    entries.reserve(basis.size());
    for (std::size_t i = 0; i < basis.size(); ++i) {
        if (vec[i] == 0.0) continue;
        const FockState r = split.region(basis[i]);
        const int key = 2 * std::popcount(r) + (by_parity ? parity_plus(r) : 0);
        entries.push_back({key, r, split.rest(basis[i]), vec[i]});
    }
    std::sort(entries.begin(), entries.end(),
              [](const Entry& a, const Entry& b) { return std::tie(a.key, a.r, a.c) < std::tie(b.key, b.r, b.c); });

    std::vector<double> spectrum;
    std::vector<FockState> cols;
    for (std::size_t lo = 0; lo < entries.size();) {
        std::size_t hi = lo;
        while (hi < entries.size() && entries[hi].key == entries[lo].key) ++hi;

        cols.clear();
        for (std::size_t i = lo; i < hi; ++i) cols.push_back(entries[i].c);
        std::sort(cols.begin(), cols.end());
        cols.erase(std::unique(cols.begin(), cols.end()), cols.end());
        Eigen::Index rows = 0;
        for (std::size_t i = lo; i < hi; ++i)
            if (i == lo || entries[i].r != entries[i - 1].r) ++rows;

        Eigen::MatrixXd m = Eigen::MatrixXd::Zero(rows, static_cast<Eigen::Index>(cols.size()));
        Eigen::Index row = -1;
        for (std::size_t i = lo; i < hi; ++i) {
            if (i == lo || entries[i].r != entries[i - 1].r) ++row;
            const auto col = std::lower_bound(cols.begin(), cols.end(), entries[i].c) - cols.begin();
            m(row, col) = entries[i].amp;
        }
        const Eigen::MatrixXd gram =
            m.rows() <= m.cols() ? Eigen::MatrixXd(m * m.transpose()) : Eigen::MatrixXd(m.transpose() * m);
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(gram, Eigen::EigenvaluesOnly);
        const auto& ev = solver.eigenvalues();
        spectrum.insert(spectrum.end(), ev.data(), ev.data() + ev.size());
        lo = hi;
    }
    return spectrum;
}

double region_entropy(std::span<const double> vec, const SectorBasis& basis, const RegionSpec& region, LogBase base) {
    return entropy_from_spectrum(region_spectrum(vec, basis, region), base);
}

double mutual_information(std::span<const double> vec, const SectorBasis& basis, int left_width, int right_width,
                          LogBase base) {
    const int num_sites = basis.num_sites();
    if (left_width < 1 || right_width < 1 || left_width + right_width >= num_sites)
        throw DomainError("edge regions of widths " + std::to_string(left_width) + " and " +
                          std::to_string(right_width) + " must be nonempty and leave a middle region in L = " +
                          std::to_string(num_sites));
    const RegionSpec a{1, left_width};
    const RegionSpec b{left_width + 1, num_sites - right_width};
    const RegionSpec c{num_sites - right_width + 1, num_sites};
    return region_entropy(vec, basis, a, base) + region_entropy(vec, basis, c, base) -
           region_entropy(vec, basis, b, base);
}

double local_parity_expectation(std::span<const double> vec, const SectorBasis& basis, const RegionSpec& region) {
    check_vector(vec, basis);
    region.validate(basis.num_sites());
    const FockState mask = site_range_mask(region.j_lo - 1, region.j_hi - 1);
    double acc = 0.0;
    for (std::size_t i = 0; i < basis.size(); ++i)
        if (parity_plus(basis[i] & mask)) acc += vec[i] * vec[i];
    return acc;
}

double local_parity_expectation(std::span<const double> vec, const SectorBasis& basis, int left_width) {
    if (left_width < 1 || left_width >= basis.num_sites())
        throw DomainError("local parity cut needs 1 <= L_A < L");
    return local_parity_expectation(vec, basis, RegionSpec{1, left_width});
}

}  // namespace majed
