#include "output.hpp"

#include <openssl/evp.h>

#include <algorithm>
#include <array>
#include <cstdio>
#include <stdexcept>

#include "config.hpp"
#include "majed/majed.h"

namespace cli {

std::string fmt(double x) {
    std::array<char, 40> buf{};
    std::snprintf(buf.data(), buf.size(), "%.17g", x);
    return buf.data();
}

std::string sha256_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot read " + path.string() + " for checksumming");
    EVP_MD_CTX* ctx = EVP_MD_CTX_new();
    EVP_DigestInit_ex(ctx, EVP_sha256(), nullptr);
    std::array<char, 1 << 16> chunk{};
    while (in) {
        in.read(chunk.data(), chunk.size());
        EVP_DigestUpdate(ctx, chunk.data(), static_cast<std::size_t>(in.gcount()));
    }
    std::array<unsigned char, EVP_MAX_MD_SIZE> digest{};
    unsigned int len = 0;
    EVP_DigestFinal_ex(ctx, digest.data(), &len);
    EVP_MD_CTX_free(ctx);
    std::string hex;
    for (unsigned int i = 0; i < len; ++i) {
        char pair[3];
        std::snprintf(pair, sizeof pair, "%02x", digest[i]);
        hex += pair;
    }
    return hex;
}

CsvWriter::CsvWriter(const std::filesystem::path& path, const std::vector<std::string>& header) : out_(path) {
    if (!out_) throw ConfigError("cannot write " + path.string());
    for (const auto& h : header) cell(h);
    end_row();
}

void CsvWriter::separator() {
    if (!fresh_row_) out_ << ',';
    fresh_row_ = false;
}

CsvWriter& CsvWriter::cell(double x) {
    separator();
    out_ << fmt(x);
    return *this;
}

CsvWriter& CsvWriter::cell(long long x) {
    separator();
    out_ << x;
    return *this;
}

CsvWriter& CsvWriter::cell(const std::string& s) {
    separator();
    out_ << s;
    return *this;
}

void CsvWriter::end_row() {
    out_ << '\n';
    fresh_row_ = true;
}

OutputManifest::OutputManifest(std::filesystem::path dir, std::string command, nlohmann::json config)
    : dir_(std::move(dir)), command_(std::move(command)), config_(std::move(config)),
      start_(std::chrono::steady_clock::now()) {
    std::error_code ec;
    std::filesystem::create_directories(dir_, ec);
    if (ec) throw ConfigError("cannot create output directory " + dir_.string() + ": " + ec.message());
}

std::filesystem::path OutputManifest::path(const std::string& name) {
    if (std::find(files_.begin(), files_.end(), name) == files_.end()) files_.push_back(name);
    return dir_ / name;
}

void OutputManifest::write_json(const std::string& name, const nlohmann::json& value) {
    std::ofstream out(path(name));
    out << value.dump(2) << '\n';
}

void OutputManifest::write_text(const std::string& name, const std::string& text) {
    std::ofstream out(path(name));
    out << text;
}

std::filesystem::path OutputManifest::finish() {
    nlohmann::json files = nlohmann::json::array();
    for (const auto& name : files_) {
        const auto p = dir_ / name;
        files.push_back({{"path", name}, {"bytes", std::filesystem::file_size(p)}, {"sha256", sha256_file(p)}});
    }
    const double seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
    const nlohmann::json manifest = {{"command", command_},
                                     {"version", majed_version()},
                                     {"config", config_},
                                     {"files", files},
                                     {"timing", {{"wall_seconds", seconds}}}};
    const auto target = dir_ / "manifest.json";
    std::ofstream out(target);
    out << manifest.dump(2) << '\n';
    return target;
}

}  // namespace cli
