#pragma once
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <string>
#include <string_view>
#include <vector>

namespace gravistoch::io {

inline constexpr std::string_view kToolVersion = "gravistoch 0.1.0";

// FNV-1a 64-bit, used for config and grid identity stamps in file headers.
class Fnv1a {
  public:
    void add_bytes(const void* data, std::size_t n);
    void add(std::string_view s) { add_bytes(s.data(), s.size()); }
    void add(double v) { add_bytes(&v, sizeof v); }
    void add(std::uint64_t v) { add_bytes(&v, sizeof v); }
    std::uint64_t value() const { return h_; }

  private:
    std::uint64_t h_ = 0xcbf29ce484222325ull;
};

std::uint64_t fnv1a(std::string_view s);

// Shortest-exact decimal rendering (17 significant digits), '.' decimal point.
std::string format_double(double v);
std::string hex64(std::uint64_t v);

// CSV with '#'-prefixed metadata lines, a mandatory header row, '\n' endings,
// and format_double numeric cells. Rerunning a command overwrites the file
// with identical bytes.
class CsvWriter {
  public:
    CsvWriter(const std::filesystem::path& path, std::uint64_t config_hash, std::uint64_t seed);
    void header(const std::vector<std::string>& columns);
    void row(const std::vector<double>& values);
    void raw_meta(const std::string& key, const std::string& value);

  private:
    std::ofstream out_;
};

void write_text_file(const std::filesystem::path& path, const std::string& body);
std::string read_text_file(const std::filesystem::path& path);

}  // namespace gravistoch::io
