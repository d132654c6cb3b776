#pragma once

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "fock.hpp"

namespace majed {

/// Couplings in units of |T|. `so_fwd` = b + alpha_R, `so_bwd` = b - alpha_R.
struct ModelParams {
    double T = -1.0;
    double U_plus = 0.0;
    double U_minus = 0.0;
    double U = 0.0;
    double W = 0.0;
    double so_fwd = 8.0;
    double so_bwd = 0.0;

    double b() const { return 0.5 * (so_fwd + so_bwd); }
    double alpha_R() const { return 0.5 * (so_fwd - so_bwd); }

    /// Reference preset: T = -1, (U+-, U, b+aR, b-aR) = (0, 0, 8, 0).
    static ModelParams preset(double w_over_t = 0.0) {
        ModelParams p;
        p.W = w_over_t * p.T;
        return p;
    }

    void validate() const;
};

/// One Hamiltonian term: coefficient times an operator string (rightmost acts first).
struct HamiltonianTerm {
    double coefficient;
    std::vector<ModeOp> ops;
};

/// Every term with a nonzero coefficient, Hermitian-conjugate partners listed explicitly.
std::vector<HamiltonianTerm> hamiltonian_terms(const ModelParams& params, int num_sites);

/// Symmetric linear map on a sector; what the eigensolver iterates with.
class SymmetricOperator {
public:
    virtual ~SymmetricOperator() = default;
    virtual std::size_t dim() const = 0;
    virtual void apply(std::span<const double> x, std::span<double> y) const = 0;
};

/// Row-compressed real-symmetric matrix. Columns strictly increasing per row, no stored zeros.
class SparseHamiltonian final : public SymmetricOperator {
public:
    SparseHamiltonian() = default;
    SparseHamiltonian(std::size_t dim, std::vector<std::uint64_t> row_ptr, std::vector<std::uint32_t> cols,
                      std::vector<double> values);

    std::size_t dim() const override { return dim_; }
    std::size_t nnz() const { return values_.size(); }
    void apply(std::span<const double> x, std::span<double> y) const override;

    /// Entry (r, c), zero when not stored.
    double at(std::size_t r, std::size_t c) const;

    std::span<const std::uint64_t> row_ptr() const { return row_ptr_; }
    std::span<const std::uint32_t> cols() const { return cols_; }
    std::span<const double> values() const { return values_; }

    /// Largest |H(r,c) - H(c,r)|.
    double asymmetry() const;

    void write_matrix_market(std::ostream& out) const;

private:
    std::size_t dim_ = 0;
    std::vector<std::uint64_t> row_ptr_{0};
    std::vector<std::uint32_t> cols_;
    std::vector<double> values_;
};

/// Applies H on the fly from the term list; used when the explicit matrix exceeds the memory budget.
class MatrixFreeHamiltonian final : public SymmetricOperator {
public:
    MatrixFreeHamiltonian(const ModelParams& params, const SectorBasis& basis);

    std::size_t dim() const override { return basis_->size(); }
    void apply(std::span<const double> x, std::span<double> y) const override;

private:
    const SectorBasis* basis_;
    std::vector<HamiltonianTerm> terms_;
};

SparseHamiltonian build_hamiltonian(const ModelParams& params, const SectorBasis& basis);

/// Stored bytes of the explicit matrix, estimated from a sample of rows.
std::uint64_t estimate_hamiltonian_bytes(const ModelParams& params, const SectorBasis& basis);

/// Signed image of a Fock state under a mode permutation (sign from re-sorting the mode string).
SignedState permute_modes(FockState state, int num_sites, const std::function<int(int)>& mode_map);

/// a_{alpha,p,j} -> a_{-alpha,p,L+1-j}
SignedState chiral_transform(FockState state, int num_sites);
/// a_{alpha,p,j} -> a_{-alpha,-p,j}
SignedState spin_orbital_flip(FockState state, int num_sites);
/// a_{alpha,p,j} -> a_{alpha,-p,j}
SignedState orbital_flip(FockState state, int num_sites);
/// spin_orbital_flip composed with the chain reflection j -> L+1-j.
SignedState reflected_spin_orbital_flip(FockState state, int num_sites);

using StateTransform = std::function<SignedState(FockState)>;

enum class SectorMap { Preserved, Swapped };

struct SymmetryReport {
    std::string name;
    double max_violation = 0.0;
    SectorMap sector_map = SectorMap::Preserved;
    std::size_t columns_checked = 0;
};

/// Residual max_c || H_image * S e_c - S * H_source e_c ||_inf for the signed permutation S.
/// Checks every column when `max_columns` is 0, otherwise an evenly strided sample.
SymmetryReport check_symmetry(const std::string& name, const StateTransform& transform, const SectorBasis& source,
                              const SparseHamiltonian& h_source, const SectorBasis& image,
                              const SparseHamiltonian& h_image, std::size_t max_columns = 0);

/// Same-(N, parity) convenience: builds the image sector itself when the transform swaps parity.
SymmetryReport check_symmetry(const std::string& name, const StateTransform& transform, const ModelParams& params,
                              const SectorBasis& source, std::size_t max_columns = 0);

/// <v| S |v> for a sector-preserving signed permutation S (eigenvalue label of a symmetric eigenvector).
double symmetry_expectation(std::span<const double> vec, const SectorBasis& basis, const StateTransform& transform);

}  // namespace majed
