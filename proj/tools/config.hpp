#pragma once

#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "majed/majed.h"

namespace cli {

/// Raised for anything the user can fix in the config or flags (exit code 2).
class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// One value of the TOML subset we accept: numbers, strings, booleans and (nested) arrays.
struct Value {
    using Array = std::vector<Value>;
    std::variant<double, std::string, bool, Array> data;
    bool integral = false;  ///< number written without '.', 'e' or 'E'
};

/// "section.key" -> value; top-level keys have no prefix.
using Table = std::map<std::string, Value>;

/// Parses basic TOML: [section] headers, key = value, comments, inline arrays. No tables-in-arrays,
/// dotted keys or multi-line strings.
Table parse_toml(const std::string& text, const std::string& origin = "<config>");
Table load_toml(const std::string& path);

struct Grid {
    double lo = 0.0, hi = 20.0, step = 0.25;
    std::vector<double> points() const;
    std::string text() const;
};

Grid parse_grid(const std::string& text);

struct RunConfig {
    majed_params params{};  ///< W is set per point from the grid
    int num_sites = 7;
    int num_particles = 7;
    std::string sector = "even";

    Grid grid;
    double w_over_t = 16.0;  ///< single-point commands
    int k = 5;
    double tol = 1e-10;
    std::uint64_t seed = 20200517;
    int threads = 0;
    bool warm_start = true;

    bool densities = true;
    bool green = true;
    bool green_cross_orbital = false;
    std::vector<std::pair<int, int>> mi{{1, 1}, {2, 2}, {3, 3}};
    std::vector<int> parity{1, 2, 3};
    bool invariants = false;
    int states = 4;  ///< lowest states exported by the observable commands
    std::string log_base = "e";

    bool fit = true;
    bool gnuplot = true;
    std::string out = "out";

    double tunneling_hz = 100.0;
    std::vector<double> rates{136.0, 1360.0};
    double window_inner = 1.0;
    double window_outer = 3.0;
    std::pair<int, int> branch_lo{1, 0};  ///< (symmetry label, rank); label 0 = all levels
    std::pair<int, int> branch_hi{1, 1};
    double refine_step = 0.025;
    double refine_halfwidth = 1.0;
    /// Bypass the sweep with a crossing given by hand (w_star, gap, slope_lo, slope_hi).
    bool manual_crossing = false;
    double crossing[4] = {0.0, 0.0, 0.0, 0.0};

    int parity_code() const;
    int log_base_code() const;
};

/// Applies a parsed table to `config`; unknown keys are errors.
void apply_table(const Table& table, RunConfig& config);

/// Range checks shared by every command. `command` tunes command-specific rules.
void validate(const RunConfig& config, const std::string& command);

}  // namespace cli
