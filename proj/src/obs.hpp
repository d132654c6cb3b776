#pragma once

#include <span>
#include <vector>

#include <Eigen/Dense>

#include "fock.hpp"

namespace majed {

/// 1-based inclusive site range.
struct RegionSpec {
    int j_lo = 1;
    int j_hi = 1;

    int width() const { return j_hi - j_lo + 1; }
    void validate(int num_sites) const;
};

struct RdmBlock {
    int particles = 0;
    std::vector<FockState> configs;  ///< region-local occupation words, ascending
    Eigen::MatrixXd matrix;
};

/// Region density matrix stored block-diagonally by region particle number.
struct ReducedDensityMatrix {
    RegionSpec region;
    std::size_t dim = 0;  ///< 2^(4 * width)
    std::vector<RdmBlock> blocks;

    double trace() const;
    std::vector<double> eigenvalues() const;
    /// Dense matrix over all 2^(4w) region configurations (small regions only).
    Eigen::MatrixXd to_dense() const;
};

enum class LogBase { Natural, Two };

inline constexpr std::size_t kDefaultRdmDimCap = std::size_t{1} << 12;

double density(std::span<const double> vec, const SectorBasis& basis, Species species, int site);

/// <a^dag_{left,1} a_{right,j}> with fermionic string signs.
double green_function(std::span<const double> vec, const SectorBasis& basis, Species left, Species right, int site);

inline double green_function(std::span<const double> vec, const SectorBasis& basis, Species species, int site) {
    return green_function(vec, basis, species, species, site);
}

ReducedDensityMatrix rdm(std::span<const double> vec, const SectorBasis& basis, const RegionSpec& region,
                         std::size_t dim_cap = kDefaultRdmDimCap);

/// -sum lambda ln lambda over the spectrum (or log2).
double entropy(const ReducedDensityMatrix& rho, LogBase base = LogBase::Natural);
double entropy_from_spectrum(std::span<const double> spectrum, LogBase base = LogBase::Natural);

/// Nonzero spectrum of the region density matrix, computed block by block from whichever
/// Gram product (region side or complement side) is smaller. Works for any region width.
std::vector<double> region_spectrum(std::span<const double> vec, const SectorBasis& basis, const RegionSpec& region);

double region_entropy(std::span<const double> vec, const SectorBasis& basis, const RegionSpec& region,
                      LogBase base = LogBase::Natural);

/// S_A + S_C - S_B with A = sites 1..L_A, C = the last L_C sites, B the middle.
double mutual_information(std::span<const double> vec, const SectorBasis& basis, int left_width, int right_width,
                          LogBase base = LogBase::Natural);

/// <(sum_{j in region} n_{up,+,j} + n_{down,-,j}) mod 2>
double local_parity_expectation(std::span<const double> vec, const SectorBasis& basis, const RegionSpec& region);

/// Left-edge cut, sites 1..L_A with 1 <= L_A < L.
double local_parity_expectation(std::span<const double> vec, const SectorBasis& basis, int left_width);

}  // namespace majed
