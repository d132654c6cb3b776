#include "config.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <functional>
#include <sstream>

namespace cli {

namespace {

class Parser {
public:
    Parser(const std::string& text, std::string origin) : text_(text), origin_(std::move(origin)) {}

    Table run() {
        Table table;
        std::string section;
        while (true) {
            skip_blank_lines();
            if (pos_ >= text_.size()) break;
            if (text_[pos_] == '[') {
                ++pos_;
                section = key();
                skip_space();
                expect(']');
                end_of_line();
                continue;
            }
            const std::string name = key();
            skip_space();
            expect('=');
            skip_space();
            const std::string full = section.empty() ? name : section + "." + name;
            if (table.count(full)) fail("duplicate key '" + full + "'");
            table[full] = value();
            end_of_line();
        }
        return table;
    }

private:
    [[noreturn]] void fail(const std::string& what) const {
        throw ConfigError(origin_ + ":" + std::to_string(line_) + ": " + what);
    }

    void skip_space() {
        while (pos_ < text_.size() && (text_[pos_] == ' ' || text_[pos_] == '\t')) ++pos_;
    }

    void skip_comment() {
        if (pos_ < text_.size() && text_[pos_] == '#')
            while (pos_ < text_.size() && text_[pos_] != '\n') ++pos_;
    }

    // Whitespace, comments and newlines; used between lines and inside arrays.
    void skip_blank_lines() {
        while (pos_ < text_.size()) {
            skip_space();
            skip_comment();
            if (pos_ < text_.size() && (text_[pos_] == '\n' || text_[pos_] == '\r')) {
                if (text_[pos_] == '\n') ++line_;
                ++pos_;
                continue;
            }
            break;
        }
    }

    void end_of_line() {
        skip_space();
        skip_comment();
        if (pos_ < text_.size() && text_[pos_] == '\r') ++pos_;
        if (pos_ < text_.size() && text_[pos_] != '\n') fail("unexpected text after value");
    }

    void expect(char c) {
        if (pos_ >= text_.size() || text_[pos_] != c) fail(std::string("expected '") + c + "'");
        ++pos_;
    }

    std::string key() {
        skip_space();
        const auto start = pos_;
        while (pos_ < text_.size() && (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_' ||
                                       text_[pos_] == '-' || text_[pos_] == '.'))
            ++pos_;
        if (pos_ == start) fail("expected a key");
        return text_.substr(start, pos_ - start);
    }

    Value value() {
        if (pos_ >= text_.size()) fail("missing value");
        const char c = text_[pos_];
        Value v;
        if (c == '"') {
            ++pos_;
            std::string s;
            while (pos_ < text_.size() && text_[pos_] != '"' && text_[pos_] != '\n') {
                if (text_[pos_] == '\\' && pos_ + 1 < text_.size()) ++pos_;
                s += text_[pos_++];
            }
            expect('"');
            v.data = s;
        } else if (c == '[') {
            ++pos_;
            Value::Array items;
            skip_blank_lines();
            while (pos_ < text_.size() && text_[pos_] != ']') {
                items.push_back(value());
                skip_blank_lines();
                if (pos_ < text_.size() && text_[pos_] == ',') {
                    ++pos_;
                    skip_blank_lines();
                }
            }
            expect(']');
            v.data = std::move(items);
        } else if (text_.compare(pos_, 4, "true") == 0) {
            pos_ += 4;
            v.data = true;
        } else if (text_.compare(pos_, 5, "false") == 0) {
            pos_ += 5;
            v.data = false;
        } else {
            const auto start = pos_;
            while (pos_ < text_.size() && std::string_view("+-.0123456789eE_").find(text_[pos_]) != std::string_view::npos)
                ++pos_;
            std::string token = text_.substr(start, pos_ - start);
            std::erase(token, '_');
            double number = 0.0;
            const auto [end, ec] = std::from_chars(token.data(), token.data() + token.size(), number);
            if (token.empty() || ec != std::errc{} || end != token.data() + token.size())
                fail("cannot parse value '" + token + "'");
            v.data = number;
            v.integral = token.find_first_of(".eE") == std::string::npos;
        }
        return v;
    }

    const std::string& text_;
    std::string origin_;
    std::size_t pos_ = 0;
    int line_ = 1;
};

double as_number(const std::string& key, const Value& v) {
    if (const auto* d = std::get_if<double>(&v.data)) return *d;
    throw ConfigError("'" + key + "' must be a number");
}

int as_int(const std::string& key, const Value& v) {
    const double d = as_number(key, v);
    if (!v.integral || std::abs(d) > 2147483647.0) throw ConfigError("'" + key + "' must be an integer");
    return static_cast<int>(d);
}

bool as_bool(const std::string& key, const Value& v) {
    if (const auto* b = std::get_if<bool>(&v.data)) return *b;
    throw ConfigError("'" + key + "' must be true or false");
}

std::string as_string(const std::string& key, const Value& v) {
    if (const auto* s = std::get_if<std::string>(&v.data)) return *s;
    throw ConfigError("'" + key + "' must be a quoted string");
}

const Value::Array& as_array(const std::string& key, const Value& v) {
    if (const auto* a = std::get_if<Value::Array>(&v.data)) return *a;
    throw ConfigError("'" + key + "' must be an array");
}

std::pair<int, int> as_int_pair(const std::string& key, const Value& v) {
    const auto& a = as_array(key, v);
    if (a.size() != 2) throw ConfigError("'" + key + "' must be a two-element array");
    return {as_int(key, a[0]), as_int(key, a[1])};
}

}  // namespace

Table parse_toml(const std::string& text, const std::string& origin) { return Parser(text, origin).run(); }

Table load_toml(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot read config file '" + path + "'");
    std::stringstream buffer;
    buffer << in.rdbuf();
    return parse_toml(buffer.str(), path);
}

std::vector<double> Grid::points() const {
    std::vector<double> out;
    const auto n = static_cast<long>(std::floor((hi - lo) / step + 0.5));
    for (long i = 0; i <= n; ++i) out.push_back(lo + static_cast<double>(i) * step);
    return out;
}

std::string Grid::text() const {
    std::ostringstream s;
    s << lo << ':' << hi << ':' << step;
    return s.str();
}

Grid parse_grid(const std::string& text) {
    Grid g;
    double* fields[] = {&g.lo, &g.hi, &g.step};
    std::size_t start = 0;
    for (int i = 0; i < 3; ++i) {
        const auto colon = text.find(':', start);
        if ((i < 2) != (colon != std::string::npos))
            throw ConfigError("grid must be LO:HI:STEP, got '" + text + "'");
        const std::string part = text.substr(start, i < 2 ? colon - start : std::string::npos);
        const auto [end, ec] = std::from_chars(part.data(), part.data() + part.size(), *fields[i]);
        if (part.empty() || ec != std::errc{} || end != part.data() + part.size())
            throw ConfigError("grid field '" + part + "' is not a number");
        start = colon + 1;
    }
    if (!(g.step > 0.0)) throw ConfigError("grid step must be positive");
    if (g.hi < g.lo) throw ConfigError("grid upper bound must not be below the lower bound");
    if ((g.hi - g.lo) / g.step > 1e6) throw ConfigError("grid has more than a million points");
    return g;
}

int RunConfig::parity_code() const {
    if (sector == "even") return MAJED_PARITY_EVEN;
    if (sector == "odd") return MAJED_PARITY_ODD;
    return MAJED_PARITY_ALL;
}

int RunConfig::log_base_code() const { return log_base == "2" ? MAJED_LOG_2 : MAJED_LOG_E; }

void apply_table(const Table& table, RunConfig& c) {
    using Setter = std::function<void(const std::string&, const Value&)>;
    auto number = [](double& field) -> Setter { return [&field](auto& k, auto& v) { field = as_number(k, v); }; };
    auto integer = [](int& field) -> Setter { return [&field](auto& k, auto& v) { field = as_int(k, v); }; };
    auto flag = [](bool& field) -> Setter { return [&field](auto& k, auto& v) { field = as_bool(k, v); }; };
    auto text = [](std::string& field) -> Setter { return [&field](auto& k, auto& v) { field = as_string(k, v); }; };
    auto pair = [](std::pair<int, int>& field) -> Setter {
        return [&field](auto& k, auto& v) { field = as_int_pair(k, v); };
    };

    const std::map<std::string, Setter> setters = {
        {"model.T", number(c.params.T)},
        {"model.U_plus", number(c.params.U_plus)},
        {"model.U_minus", number(c.params.U_minus)},
        {"model.U", number(c.params.U)},
        {"model.so_fwd", number(c.params.so_fwd)},
        {"model.so_bwd", number(c.params.so_bwd)},
        {"system.L", integer(c.num_sites)},
        {"system.N", integer(c.num_particles)},
        {"system.sector", text(c.sector)},
        {"sweep.grid", [&c](auto& k, auto& v) { c.grid = parse_grid(as_string(k, v)); }},
        {"sweep.w_over_t", number(c.w_over_t)},
        {"sweep.warm_start", flag(c.warm_start)},
        {"solver.k", integer(c.k)},
        {"solver.tol", number(c.tol)},
        {"solver.seed",
         [&c](auto& k, auto& v) {
             const double d = as_number(k, v);
             if (!v.integral || d < 0 || d > 9.007199254740992e15) throw ConfigError("'" + k + "' must be a non-negative integer");
             c.seed = static_cast<std::uint64_t>(d);
         }},
        {"solver.threads", integer(c.threads)},
        {"observables.densities", flag(c.densities)},
        {"observables.green", flag(c.green)},
        {"observables.green_cross_orbital", flag(c.green_cross_orbital)},
        {"observables.mi",
         [&c](auto& k, auto& v) {
             c.mi.clear();
             for (const auto& item : as_array(k, v)) c.mi.push_back(as_int_pair(k, item));
         }},
        {"observables.parity",
         [&c](auto& k, auto& v) {
             c.parity.clear();
             for (const auto& item : as_array(k, v)) c.parity.push_back(as_int(k, item));
         }},
        {"observables.invariants", flag(c.invariants)},
        {"observables.states", integer(c.states)},
        {"observables.log_base", text(c.log_base)},
        {"output.dir", text(c.out)},
        {"output.fit", flag(c.fit)},
        {"output.gnuplot", flag(c.gnuplot)},
        {"lz.T_hz", number(c.tunneling_hz)},
        {"lz.rates",
         [&c](auto& k, auto& v) {
             c.rates.clear();
             for (const auto& item : as_array(k, v)) c.rates.push_back(as_number(k, item));
         }},
        {"lz.window_inner", number(c.window_inner)},
        {"lz.window_outer", number(c.window_outer)},
        {"lz.branch_lo", pair(c.branch_lo)},
        {"lz.branch_hi", pair(c.branch_hi)},
        {"lz.refine_step", number(c.refine_step)},
        {"lz.refine_halfwidth", number(c.refine_halfwidth)},
        {"lz.crossing",
         [&c](auto& k, auto& v) {
             const auto& a = as_array(k, v);
             if (a.size() != 4) throw ConfigError("'" + k + "' must be [w_star, gap, slope_lo, slope_hi]");
             for (int i = 0; i < 4; ++i) c.crossing[i] = as_number(k, a[static_cast<std::size_t>(i)]);
             c.manual_crossing = true;
         }},
    };

    for (const auto& [key, value] : table) {
        const auto it = setters.find(key);
        if (it == setters.end()) throw ConfigError("unknown config key '" + key + "'");
        it->second(key, value);
    }
}

void validate(const RunConfig& c, const std::string& command) {
    const int L = c.num_sites;
    if (L < 1 || L > 16) throw ConfigError("system.L must be in 1..16 (got " + std::to_string(L) + ")");
    if (c.num_particles < 0 || c.num_particles > 4 * L)
        throw ConfigError("system.N must be in 0..4L = 0.." + std::to_string(4 * L));
    if (c.sector != "even" && c.sector != "odd" && c.sector != "all")
        throw ConfigError("sector must be even, odd or all (got '" + c.sector + "')");
    if (c.log_base != "e" && c.log_base != "2") throw ConfigError("log base must be e or 2");
    if (command == "basis" || command == "selfcheck") return;

    for (double x : {c.params.T, c.params.U_plus, c.params.U_minus, c.params.U, c.params.so_fwd, c.params.so_bwd})
        if (!std::isfinite(x)) throw ConfigError("model couplings must be finite");
    if (c.params.T == 0.0) throw ConfigError("model.T must be nonzero: it sets the energy unit and W = (W/T) T");
    if (c.k < 1) throw ConfigError("solver.k must be at least 1");
    if (!(c.tol > 0.0)) throw ConfigError("solver.tol must be positive");
    if (c.threads < 0) throw ConfigError("threads must be non-negative");
    if (!std::isfinite(c.w_over_t)) throw ConfigError("w_over_t must be finite");
    if (command == "spectrum" && c.fit && c.k < 4)
        throw ConfigError("the cubic shift fit needs k >= 4 levels; raise solver.k or set output.fit = false");
    if (command == "observables" || command == "mi" || command == "parity") {
        if (c.states < 1 || c.states > c.k)
            throw ConfigError("observables.states must be in 1..k = 1.." + std::to_string(c.k));
    }
    if (command == "observables" || command == "mi") {
        for (const auto& [a, b] : c.mi)
            if (a < 1 || b < 1 || a + b >= L)
                throw ConfigError("mutual information needs L_A, L_C >= 1 and L_A + L_C < L; (" + std::to_string(a) + ", " +
                                  std::to_string(b) + ") violates it for L = " + std::to_string(L));
        if (command == "mi" && c.mi.empty()) throw ConfigError("observables.mi lists no (L_A, L_C) pairs");
    }
    if (command == "observables" || command == "parity") {
        for (int a : c.parity)
            if (a < 1 || a >= L) throw ConfigError("local parity cuts need 1 <= L_A < L = " + std::to_string(L));
        if (command == "parity" && c.parity.empty()) throw ConfigError("observables.parity lists no L_A values");
    }
    if (command == "lz") {
        if (!(c.tunneling_hz > 0.0)) throw ConfigError("lz.T_hz must be positive");
        for (double r : c.rates)
            if (!(r > 0.0)) throw ConfigError("lz.rates must be positive");
        if (!(c.window_inner >= 0.0 && c.window_outer > c.window_inner))
            throw ConfigError("lz windows need 0 <= window_inner < window_outer");
        if (!(c.refine_step > 0.0) || c.refine_halfwidth < 0.0)
            throw ConfigError("lz.refine_step must be positive and refine_halfwidth non-negative");
        for (const auto& [sym, rank] : {c.branch_lo, c.branch_hi})
            if (sym < -1 || sym > 1 || rank < 0) throw ConfigError("lz branches are [symmetry in -1..1, rank >= 0]");
    }
}

}  // namespace cli
