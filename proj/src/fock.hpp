#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace majed {

// Fock states are bit-sets over 4L modes packed into one machine word.
// Mode m = 4*(site) + species with 0-based sites; all fermionic signs are
// taken relative to ascending mode order.
using FockState = std::uint64_t;

inline constexpr int kSpeciesPerSite = 4;
inline constexpr int kMaxSites = 16;

enum class Species : int { UpPlus = 0, DownPlus = 1, UpMinus = 2, DownMinus = 3 };

inline constexpr std::array<Species, 4> kAllSpecies = {Species::UpPlus, Species::DownPlus,
                                                       Species::UpMinus, Species::DownMinus};

std::string_view species_name(Species s);
std::optional<Species> parse_species(std::string_view text);

/// Flip the pseudo-spin label: (up,p) <-> (down,p).
constexpr Species flip_spin(Species s) {
    switch (s) {
        case Species::UpPlus: return Species::DownPlus;
        case Species::DownPlus: return Species::UpPlus;
        case Species::UpMinus: return Species::DownMinus;
        case Species::DownMinus: return Species::UpMinus;
    }
    return s;
}

/// Flip both labels: (up,+) <-> (down,-), (down,+) <-> (up,-).
constexpr Species flip_spin_orbital(Species s) {
    switch (s) {
        case Species::UpPlus: return Species::DownMinus;
        case Species::DownMinus: return Species::UpPlus;
        case Species::DownPlus: return Species::UpMinus;
        case Species::UpMinus: return Species::DownPlus;
    }
    return s;
}

/// Linear mode index for a 0-based site.
constexpr int mode_index(int site0, Species s) { return kSpeciesPerSite * site0 + static_cast<int>(s); }

constexpr int mode_site(int m) { return m / kSpeciesPerSite; }
constexpr Species mode_species(int m) { return static_cast<Species>(m % kSpeciesPerSite); }

// Bit masks selecting one species on every site (0x1111... pattern shifted).
constexpr FockState species_mask(Species s, int num_sites) {
    FockState mask = 0;
    for (int j = 0; j < num_sites; ++j) mask |= FockState{1} << mode_index(j, s);
    return mask;
}

constexpr FockState site_range_mask(int site_lo0, int site_hi0) {
    FockState mask = 0;
    for (int j = site_lo0; j <= site_hi0; ++j) mask |= FockState{0xF} << (kSpeciesPerSite * j);
    return mask;
}

enum class Parity : int { Even = 0, Odd = 1, Unrestricted = 2 };

std::string_view parity_name(Parity p);
std::optional<Parity> parse_parity(std::string_view text);

/// (sum_j n_{up,+,j} + n_{down,-,j}) mod 2
int parity_plus(FockState state);
/// (sum_j n_{up,-,j} + n_{down,+,j}) mod 2
int parity_minus(FockState state);

enum class OpKind { Create, Annihilate };

struct ModeOp {
    OpKind kind;
    int mode;
};

struct SignedState {
    int sign;
    FockState state;

    bool operator==(const SignedState&) const = default;
};

/// Single creation/annihilation. Empty when the occupancy forbids the action.
std::optional<SignedState> apply_mode_op(OpKind kind, int mode, FockState state);

/// Apply an operator string as written: the rightmost operator acts first.
std::optional<SignedState> apply_string(std::span<const ModeOp> ops, FockState state);

namespace testing {
/// Negative-control hook: when enabled every mode operator reports sign +1.
void set_sign_corruption(bool enabled);
bool sign_corruption();
}  // namespace testing

/// Ordered fixed-(N, parity) basis with O(1) index lookup.
class SectorBasis {
public:
    SectorBasis(int num_sites, int num_particles, Parity parity);

    int num_sites() const { return num_sites_; }
    int num_modes() const { return kSpeciesPerSite * num_sites_; }
    int num_particles() const { return num_particles_; }
    Parity parity() const { return parity_; }
    std::size_t size() const { return states_.size(); }
    const std::vector<FockState>& states() const { return states_; }
    FockState operator[](std::size_t i) const { return states_[i]; }

    /// Position of `state`, or -1 when the state is not in this sector.
    std::int64_t find(FockState state) const;

private:
    void build_lookup();

    int num_sites_;
    int num_particles_;
    Parity parity_;
    std::vector<FockState> states_;

    // Split-word lookup: index = block_offset_[hi] + low_rank_[lo]. Valid because
    // the sector constraint on lo depends only on lo's own popcount and parity.
    int low_bits_ = 0;
    std::vector<std::int64_t> block_offset_;
    std::vector<std::uint32_t> low_rank_;
    std::unordered_map<FockState, std::int64_t> map_;  // fallback for wide lattices
};

SectorBasis enumerate_basis(int num_sites, int num_particles, Parity parity);

/// Binomial coefficient, exact in 64 bits for the sizes used here.
std::uint64_t binomial(int n, int k);

}  // namespace majed
