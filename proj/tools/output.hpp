#pragma once

#include <chrono>
#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include "json.hpp"

namespace cli {

/// Shortest round-trip-safe rendering used everywhere: 17 significant digits.
std::string fmt(double x);

std::string sha256_file(const std::filesystem::path& path);

/// CSV file with a header row. Rows are written as they come.
class CsvWriter {
public:
    CsvWriter(const std::filesystem::path& path, const std::vector<std::string>& header);

    CsvWriter& cell(double x);
    CsvWriter& cell(long long x);
    CsvWriter& cell(int x) { return cell(static_cast<long long>(x)); }
    CsvWriter& cell(const std::string& s);
    void end_row();

private:
    void separator();

    std::ofstream out_;
    bool fresh_row_ = true;
};

/// Tracks every file a command writes, then emits manifest.json with checksums.
class OutputManifest {
public:
    OutputManifest(std::filesystem::path dir, std::string command, nlohmann::json config);

    std::filesystem::path path(const std::string& name);
    void write_json(const std::string& name, const nlohmann::json& value);
    void write_text(const std::string& name, const std::string& text);
    /// Writes manifest.json; returns its path.
    std::filesystem::path finish();

private:
    std::filesystem::path dir_;
    std::string command_;
    nlohmann::json config_;
    std::vector<std::string> files_;
    std::chrono::steady_clock::time_point start_;
};

}  // namespace cli
