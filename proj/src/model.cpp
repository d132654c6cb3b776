#include "model.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <iomanip>
#include <ostream>
#include <stdexcept>

#include "errors.hpp"

namespace majed {

namespace {

using S = Species;

ModeOp cr(int site0, Species s) { return {OpKind::Create, mode_index(site0, s)}; }
ModeOp an(int site0, Species s) { return {OpKind::Annihilate, mode_index(site0, s)}; }

void add_term(std::vector<HamiltonianTerm>& terms, double coefficient, std::vector<ModeOp> ops) {
    if (coefficient != 0.0) terms.push_back({coefficient, std::move(ops)});
}

// c a^dag_x a_y + h.c.
void add_hop(std::vector<HamiltonianTerm>& terms, double c, ModeOp create, ModeOp annihilate) {
    add_term(terms, c, {create, annihilate});
    add_term(terms, c, {ModeOp{OpKind::Create, annihilate.mode}, ModeOp{OpKind::Annihilate, create.mode}});
}

// n_x n_y as a^dag_x a_x a^dag_y a_y
void add_density_density(std::vector<HamiltonianTerm>& terms, double c, int site0, Species x, Species y) {
    add_term(terms, c, {cr(site0, x), an(site0, x), cr(site0, y), an(site0, y)});
}

// Accumulated matrix entries of one row, canonicalized in place.
void canonicalize_row(std::vector<std::pair<std::uint32_t, double>>& row) {
    std::sort(row.begin(), row.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    std::size_t out = 0;
    for (std::size_t i = 0; i < row.size();) {
        const std::uint32_t col = row[i].first;
        double sum = 0.0;
        for (; i < row.size() && row[i].first == col; ++i) sum += row[i].second;
        if (sum != 0.0) row[out++] = {col, sum};
    }
    row.resize(out);
}

void accumulate_row(const std::vector<HamiltonianTerm>& terms, const SectorBasis& basis, FockState state,
                    std::vector<std::pair<std::uint32_t, double>>& row) {
    row.clear();
    for (const auto& term : terms) {
        auto hit = apply_string(term.ops, state);
        if (!hit) continue;
        const std::int64_t target = basis.find(hit->state);
        if (target < 0) throw std::logic_error("Hamiltonian term leaves the sector");
        row.emplace_back(static_cast<std::uint32_t>(target), term.coefficient * hit->sign);
    }
    canonicalize_row(row);
}

}  // namespace

void ModelParams::validate() const {
    for (double v : {T, U_plus, U_minus, U, W, so_fwd, so_bwd})
        if (!std::isfinite(v)) throw DomainError("model couplings must be finite");
}

std::vector<HamiltonianTerm> hamiltonian_terms(const ModelParams& p, int num_sites) {
    p.validate();
    std::vector<HamiltonianTerm> terms;
    for (int j = 0; j < num_sites; ++j) {
        const bool has_right = j + 1 < num_sites;
        if (has_right) {
            for (Species s : kAllSpecies) add_hop(terms, p.T, cr(j + 1, s), an(j, s));
            add_hop(terms, p.so_fwd, cr(j, S::UpPlus), an(j + 1, S::DownMinus));
            add_hop(terms, p.so_fwd, cr(j, S::UpMinus), an(j + 1, S::DownPlus));
            add_hop(terms, p.so_bwd, cr(j + 1, S::UpPlus), an(j, S::DownMinus));
            add_hop(terms, p.so_bwd, cr(j + 1, S::UpMinus), an(j, S::DownPlus));
        }
        add_density_density(terms, p.U_plus, j, S::UpPlus, S::DownPlus);
        add_density_density(terms, p.U_minus, j, S::DownMinus, S::UpMinus);
        for (Species a : {S::UpMinus, S::DownMinus})
            for (Species b : {S::UpPlus, S::DownPlus}) add_density_density(terms, p.U, j, a, b);
        add_term(terms, p.W, {cr(j, S::UpPlus), cr(j, S::DownMinus), an(j, S::DownPlus), an(j, S::UpMinus)});
        add_term(terms, p.W, {cr(j, S::UpMinus), cr(j, S::DownPlus), an(j, S::DownMinus), an(j, S::UpPlus)});
    }
    return terms;
}

SparseHamiltonian::SparseHamiltonian(std::size_t dim, std::vector<std::uint64_t> row_ptr,
                                     std::vector<std::uint32_t> cols, std::vector<double> values)
    : dim_(dim), row_ptr_(std::move(row_ptr)), cols_(std::move(cols)), values_(std::move(values)) {
    if (row_ptr_.size() != dim_ + 1 || cols_.size() != values_.size() || row_ptr_.back() != values_.size())
        throw std::invalid_argument("inconsistent CSR arrays");
}

void SparseHamiltonian::apply(std::span<const double> x, std::span<double> y) const {
    const auto n = static_cast<std::int64_t>(dim_);
#pragma omp parallel for schedule(static)
    for (std::int64_t r = 0; r < n; ++r) {
        double acc = 0.0;
        for (std::uint64_t e = row_ptr_[r]; e < row_ptr_[r + 1]; ++e) acc += values_[e] * x[cols_[e]];
        y[r] = acc;
    }
}

double SparseHamiltonian::at(std::size_t r, std::size_t c) const {
    const auto first = cols_.begin() + static_cast<std::ptrdiff_t>(row_ptr_[r]);
    const auto last = cols_.begin() + static_cast<std::ptrdiff_t>(row_ptr_[r + 1]);
    auto it = std::lower_bound(first, last, static_cast<std::uint32_t>(c));
    if (it == last || *it != c) return 0.0;
    return values_[static_cast<std::size_t>(it - cols_.begin())];
}

double SparseHamiltonian::asymmetry() const {
    double worst = 0.0;
    for (std::size_t r = 0; r < dim_; ++r)
        for (std::uint64_t e = row_ptr_[r]; e < row_ptr_[r + 1]; ++e)
            worst = std::max(worst, std::abs(values_[e] - at(cols_[e], r)));
    return worst;
}

void SparseHamiltonian::write_matrix_market(std::ostream& out) const {
    out << "%%MatrixMarket matrix coordinate real symmetric\n";
    std::uint64_t lower = 0;
    for (std::size_t r = 0; r < dim_; ++r)
        for (std::uint64_t e = row_ptr_[r]; e < row_ptr_[r + 1]; ++e)
            if (cols_[e] <= r) ++lower;
    out << dim_ << ' ' << dim_ << ' ' << lower << '\n';
    out << std::setprecision(17);
    for (std::size_t r = 0; r < dim_; ++r)
        for (std::uint64_t e = row_ptr_[r]; e < row_ptr_[r + 1]; ++e)
            if (cols_[e] <= r) out << r + 1 << ' ' << cols_[e] + 1 << ' ' << values_[e] << '\n';
}

MatrixFreeHamiltonian::MatrixFreeHamiltonian(const ModelParams& params, const SectorBasis& basis)
    : basis_(&basis), terms_(hamiltonian_terms(params, basis.num_sites())) {}

void MatrixFreeHamiltonian::apply(std::span<const double> x, std::span<double> y) const {
    const auto n = static_cast<std::int64_t>(basis_->size());
#pragma omp parallel
    {
        std::vector<std::pair<std::uint32_t, double>> row;
#pragma omp for schedule(static)
        for (std::int64_t r = 0; r < n; ++r) {
            accumulate_row(terms_, *basis_, (*basis_)[static_cast<std::size_t>(r)], row);
            double acc = 0.0;
            for (const auto& [c, v] : row) acc += v * x[c];
            y[r] = acc;
        }
    }
}

SparseHamiltonian build_hamiltonian(const ModelParams& params, const SectorBasis& basis) {
    if (basis.size() == 0) throw DomainError("cannot build a Hamiltonian over an empty sector");
    if (basis.size() > std::numeric_limits<std::uint32_t>::max())
        throw ResourceError("sector dimension exceeds 32-bit column indices");
    const auto terms = hamiltonian_terms(params, basis.num_sites());
    const std::size_t n = basis.size();

    // Rows are independent: fill per-chunk buffers, then concatenate in order.
    constexpr std::size_t kChunk = 4096;
    const std::size_t num_chunks = (n + kChunk - 1) / kChunk;
    std::vector<std::vector<std::uint32_t>> chunk_cols(num_chunks);
    std::vector<std::vector<double>> chunk_vals(num_chunks);
    std::vector<std::uint64_t> row_len(n, 0);

#pragma omp parallel
    {
        std::vector<std::pair<std::uint32_t, double>> row;
#pragma omp for schedule(dynamic)
        for (std::int64_t ci = 0; ci < static_cast<std::int64_t>(num_chunks); ++ci) {
            const std::size_t lo = static_cast<std::size_t>(ci) * kChunk;
            const std::size_t hi = std::min(n, lo + kChunk);
            auto& cols = chunk_cols[ci];
            auto& vals = chunk_vals[ci];
            for (std::size_t r = lo; r < hi; ++r) {
                accumulate_row(terms, basis, basis[r], row);
                row_len[r] = row.size();
                for (const auto& [c, v] : row) {
                    cols.push_back(c);
                    vals.push_back(v);
                }
            }
        }
    }

    std::vector<std::uint64_t> row_ptr(n + 1, 0);
    for (std::size_t r = 0; r < n; ++r) row_ptr[r + 1] = row_ptr[r] + row_len[r];
    std::vector<std::uint32_t> cols;
    std::vector<double> vals;
    cols.reserve(row_ptr[n]);
    vals.reserve(row_ptr[n]);
    for (std::size_t ci = 0; ci < num_chunks; ++ci) {
        cols.insert(cols.end(), chunk_cols[ci].begin(), chunk_cols[ci].end());
        vals.insert(vals.end(), chunk_vals[ci].begin(), chunk_vals[ci].end());
        std::vector<std::uint32_t>().swap(chunk_cols[ci]);
        std::vector<double>().swap(chunk_vals[ci]);
    }
    return SparseHamiltonian(n, std::move(row_ptr), std::move(cols), std::move(vals));
}

std::uint64_t estimate_hamiltonian_bytes(const ModelParams& params, const SectorBasis& basis) {
    const auto terms = hamiltonian_terms(params, basis.num_sites());
    const std::size_t n = basis.size();
    const std::size_t stride = std::max<std::size_t>(1, n / 2000);
    std::vector<std::pair<std::uint32_t, double>> row;
    std::uint64_t sampled = 0, entries = 0;
    for (std::size_t r = 0; r < n; r += stride, ++sampled) {
        accumulate_row(terms, basis, basis[r], row);
        entries += row.size();
    }
    const double per_row = sampled ? static_cast<double>(entries) / static_cast<double>(sampled) : 0.0;
    const double nnz = per_row * static_cast<double>(n);
    return static_cast<std::uint64_t>(nnz * (sizeof(double) + sizeof(std::uint32_t)) +
                                      static_cast<double>(n + 1) * sizeof(std::uint64_t));
}

SignedState permute_modes(FockState state, int num_sites, const std::function<int(int)>& mode_map) {
    // Image modes in the order of the original (ascending) creation string; the sign is the
    // parity of the permutation that sorts them.
    int images[64];
    int count = 0;
    FockState out = 0;
    for (FockState rest = state; rest != 0; rest &= rest - 1) {
        const int m = std::countr_zero(rest);
        const int target = mode_map(m);
        if (target < 0 || target >= kSpeciesPerSite * num_sites) throw std::logic_error("mode map out of range");
        images[count++] = target;
        out |= FockState{1} << target;
    }
    int inversions = 0;
    for (int a = 0; a < count; ++a)
        for (int b = a + 1; b < count; ++b)
            if (images[a] > images[b]) ++inversions;
    return {(inversions & 1) ? -1 : 1, out};
}

SignedState chiral_transform(FockState state, int num_sites) {
    return permute_modes(state, num_sites, [num_sites](int m) {
        return mode_index(num_sites - 1 - mode_site(m), flip_spin(mode_species(m)));
    });
}

SignedState spin_orbital_flip(FockState state, int num_sites) {
    return permute_modes(state, num_sites,
                         [](int m) { return mode_index(mode_site(m), flip_spin_orbital(mode_species(m))); });
}

SignedState orbital_flip(FockState state, int num_sites) {
    return permute_modes(state, num_sites, [](int m) {
        return mode_index(mode_site(m), flip_spin(flip_spin_orbital(mode_species(m))));
    });
}

SignedState reflected_spin_orbital_flip(FockState state, int num_sites) {
    return permute_modes(state, num_sites, [num_sites](int m) {
        return mode_index(num_sites - 1 - mode_site(m), flip_spin_orbital(mode_species(m)));
    });
}

SymmetryReport check_symmetry(const std::string& name, const StateTransform& transform, const SectorBasis& source,
                              const SparseHamiltonian& h_source, const SectorBasis& image,
                              const SparseHamiltonian& h_image, std::size_t max_columns) {
    if (h_source.dim() != source.size() || h_image.dim() != image.size())
        throw DomainError("Hamiltonian and basis dimensions differ");
    if (source.size() != image.size()) throw DomainError(name + ": image sector has a different dimension");

    auto image_of = [&](std::size_t idx) {
        const SignedState t = transform(source[idx]);
        const std::int64_t pos = image.find(t.state);
        if (pos < 0) throw DomainError(name + " maps a state outside the target (N, parity) sector");
        return std::pair<int, std::size_t>{t.sign, static_cast<std::size_t>(pos)};
    };

    SymmetryReport report;
    report.name = name;
    report.sector_map = source.parity() == image.parity() ? SectorMap::Preserved : SectorMap::Swapped;
    const std::size_t n = source.size();
    const std::size_t stride = max_columns == 0 ? 1 : std::max<std::size_t>(1, n / max_columns);

    // Column c: lhs = H_image (S e_c) is row `img` of H_image scaled by sign (symmetric storage);
    // rhs = S (H_source e_c) maps each entry of row c of H_source through S.
    std::vector<std::pair<std::size_t, double>> rhs;
    for (std::size_t c = 0; c < n; c += stride) {
        const auto [sign, img] = image_of(c);
        rhs.clear();
        for (std::uint64_t e = h_source.row_ptr()[c]; e < h_source.row_ptr()[c + 1]; ++e) {
            const auto [s2, pos] = image_of(h_source.cols()[e]);
            rhs.emplace_back(pos, s2 * h_source.values()[e]);
        }
        std::sort(rhs.begin(), rhs.end());
        std::size_t k = 0;
        const auto row_lo = h_image.row_ptr()[img], row_hi = h_image.row_ptr()[img + 1];
        std::uint64_t e = row_lo;
        while (e < row_hi || k < rhs.size()) {
            double diff;
            if (k >= rhs.size() || (e < row_hi && h_image.cols()[e] < rhs[k].first)) {
                diff = sign * h_image.values()[e++];
            } else if (e >= row_hi || rhs[k].first < h_image.cols()[e]) {
                diff = -rhs[k++].second;
            } else {
                diff = sign * h_image.values()[e++] - rhs[k++].second;
            }
            report.max_violation = std::max(report.max_violation, std::abs(diff));
        }
        ++report.columns_checked;
    }
    return report;
}

SymmetryReport check_symmetry(const std::string& name, const StateTransform& transform, const ModelParams& params,
                              const SectorBasis& source, std::size_t max_columns) {
    const SparseHamiltonian h_source = build_hamiltonian(params, source);
    if (source.size() == 0) throw DomainError("empty sector");
    const FockState probe = transform(source[0]).state;
    if (std::popcount(probe) != source.num_particles()) throw DomainError(name + " changes the particle number");
    if (source.parity() == Parity::Unrestricted || parity_plus(probe) == static_cast<int>(source.parity()))
        return check_symmetry(name, transform, source, h_source, source, h_source, max_columns);
    const Parity other = source.parity() == Parity::Even ? Parity::Odd : Parity::Even;
    const SectorBasis image(source.num_sites(), source.num_particles(), other);
    const SparseHamiltonian h_image = build_hamiltonian(params, image);
    return check_symmetry(name, transform, source, h_source, image, h_image, max_columns);
}

double symmetry_expectation(std::span<const double> vec, const SectorBasis& basis, const StateTransform& transform) {
    double acc = 0.0;
    for (std::size_t i = 0; i < basis.size(); ++i) {
        if (vec[i] == 0.0) continue;
        const SignedState t = transform(basis[i]);
        const std::int64_t pos = basis.find(t.state);
        if (pos < 0) throw DomainError("transform does not preserve the sector");
        acc += vec[static_cast<std::size_t>(pos)] * t.sign * vec[i];
    }
    return acc;
}

}  // namespace majed
