#include "fock.hpp"

#include <atomic>
#include <bit>
#include <string>

#include "errors.hpp"

namespace majed {

namespace {

std::atomic<bool> g_sign_corruption{false};

// Lattices whose low half-word fits this many bits use the split lookup table.
constexpr int kMaxLowTableBits = 20;

FockState next_combination(FockState v) {
    // Gosper's hack: next larger integer with the same popcount.
    const FockState t = v | (v - 1);
    return (t + 1) | (((~t & -~t) - 1) >> (std::countr_zero(v) + 1));
}

}  // namespace

std::string_view species_name(Species s) {
    switch (s) {
        case Species::UpPlus: return "up+";
        case Species::DownPlus: return "down+";
        case Species::UpMinus: return "up-";
        case Species::DownMinus: return "down-";
    }
    return "?";
}

std::optional<Species> parse_species(std::string_view text) {
    for (Species s : kAllSpecies)
        if (species_name(s) == text) return s;
    return std::nullopt;
}

std::string_view parity_name(Parity p) {
    switch (p) {
        case Parity::Even: return "even";
        case Parity::Odd: return "odd";
        case Parity::Unrestricted: return "all";
    }
    return "?";
}

std::optional<Parity> parse_parity(std::string_view text) {
    if (text == "even") return Parity::Even;
    if (text == "odd") return Parity::Odd;
    if (text == "all") return Parity::Unrestricted;
    return std::nullopt;
}

int parity_plus(FockState state) {
    constexpr FockState mask = species_mask(Species::UpPlus, kMaxSites) | species_mask(Species::DownMinus, kMaxSites);
    return std::popcount(state & mask) & 1;
}

int parity_minus(FockState state) {
    constexpr FockState mask = species_mask(Species::UpMinus, kMaxSites) | species_mask(Species::DownPlus, kMaxSites);
    return std::popcount(state & mask) & 1;
}

std::optional<SignedState> apply_mode_op(OpKind kind, int mode, FockState state) {
    const FockState bit = FockState{1} << mode;
    const bool occupied = (state & bit) != 0;
    if (kind == OpKind::Create && occupied) return std::nullopt;
    if (kind == OpKind::Annihilate && !occupied) return std::nullopt;
    const int below = std::popcount(state & (bit - 1));
    const int sign = (g_sign_corruption.load(std::memory_order_relaxed) || (below & 1) == 0) ? 1 : -1;
    return SignedState{sign, state ^ bit};
}

std::optional<SignedState> apply_string(std::span<const ModeOp> ops, FockState state) {
    SignedState acc{1, state};
    for (auto it = ops.rbegin(); it != ops.rend(); ++it) {
        auto step = apply_mode_op(it->kind, it->mode, acc.state);
        if (!step) return std::nullopt;
        acc.sign *= step->sign;
        acc.state = step->state;
    }
    return acc;
}

namespace testing {
void set_sign_corruption(bool enabled) { g_sign_corruption.store(enabled); }
bool sign_corruption() { return g_sign_corruption.load(); }
}  // namespace testing

std::uint64_t binomial(int n, int k) {
    if (k < 0 || k > n) return 0;
    k = std::min(k, n - k);
    std::uint64_t r = 1;
    for (int i = 1; i <= k; ++i) r = r * static_cast<std::uint64_t>(n - k + i) / static_cast<std::uint64_t>(i);
    return r;
}

SectorBasis::SectorBasis(int num_sites, int num_particles, Parity parity)
    : num_sites_(num_sites), num_particles_(num_particles), parity_(parity) {
    if (num_sites < 1 || num_sites > kMaxSites)
        throw DomainError("site count must be in 1.." + std::to_string(kMaxSites) + ", got " +
                          std::to_string(num_sites));
    const int modes = num_modes();
    if (num_particles < 0 || num_particles > modes)
        throw DomainError("particle number must be in 0.." + std::to_string(modes) + ", got " +
                          std::to_string(num_particles));

    const std::uint64_t total = binomial(modes, num_particles);
    states_.reserve(parity == Parity::Unrestricted ? total : total / 2 + 1);
    const int wanted = static_cast<int>(parity);
    auto accept = [&](FockState s) { return parity == Parity::Unrestricted || parity_plus(s) == wanted; };

    if (num_particles == 0) {
        if (accept(0)) states_.push_back(0);
    } else {
        const FockState last = ((FockState{1} << num_particles) - 1) << (modes - num_particles);
        FockState s = (FockState{1} << num_particles) - 1;
        while (true) {
            if (accept(s)) states_.push_back(s);
            if (s == last) break;
            s = next_combination(s);
        }
    }
    states_.shrink_to_fit();
    build_lookup();
}

void SectorBasis::build_lookup() {
    const int modes = num_modes();
    low_bits_ = (modes + 1) / 2;
    if (low_bits_ > kMaxLowTableBits || modes - low_bits_ > kMaxLowTableBits) {
        low_bits_ = 0;
        map_.reserve(states_.size());
        for (std::size_t i = 0; i < states_.size(); ++i) map_.emplace(states_[i], static_cast<std::int64_t>(i));
        return;
    }
    const std::size_t low_count = std::size_t{1} << low_bits_;
    const std::size_t high_count = std::size_t{1} << (modes - low_bits_);

    // Rank of each low word within its (popcount, parity) class.
    low_rank_.assign(low_count, 0);
    std::vector<std::uint32_t> counter(2 * (low_bits_ + 1), 0);
    const bool by_parity = parity_ != Parity::Unrestricted;
    for (std::size_t lo = 0; lo < low_count; ++lo) {
        const auto s = static_cast<FockState>(lo);
        const std::size_t cls = 2 * static_cast<std::size_t>(std::popcount(s)) + (by_parity ? parity_plus(s) : 0);
        low_rank_[lo] = counter[cls]++;
    }

    block_offset_.assign(high_count, -1);
    for (std::size_t i = 0; i < states_.size(); ++i) {
        const std::size_t hi = states_[i] >> low_bits_;
        if (block_offset_[hi] < 0) block_offset_[hi] = static_cast<std::int64_t>(i);
    }
}

std::int64_t SectorBasis::find(FockState state) const {
    if (low_bits_ == 0) {
        auto it = map_.find(state);
        return it == map_.end() ? -1 : it->second;
    }
    if (std::popcount(state) != num_particles_) return -1;
    if (parity_ != Parity::Unrestricted && parity_plus(state) != static_cast<int>(parity_)) return -1;
    const std::size_t hi = state >> low_bits_;
    if (hi >= block_offset_.size() || block_offset_[hi] < 0) return -1;
    const FockState lo = state & ((FockState{1} << low_bits_) - 1);
    return block_offset_[hi] + low_rank_[lo];
}

SectorBasis enumerate_basis(int num_sites, int num_particles, Parity parity) {
    return SectorBasis(num_sites, num_particles, parity);
}

}  // namespace majed
