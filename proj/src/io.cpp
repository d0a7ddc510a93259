#include "gravistoch/io.hpp"

#include <cstdio>
#include <sstream>
#include <stdexcept>

namespace gravistoch::io {

void Fnv1a::add_bytes(const void* data, std::size_t n) {
    const auto* p = static_cast<const unsigned char*>(data);
    for (std::size_t i = 0; i < n; ++i) {
        h_ ^= p[i];
        h_ *= 0x100000001b3ull;
    }
}

std::uint64_t fnv1a(std::string_view s) {
    Fnv1a h;
    h.add(s);
    return h.value();
}

std::string format_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string hex64(std::uint64_t v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
    return buf;
}

CsvWriter::CsvWriter(const std::filesystem::path& path, std::uint64_t config_hash,
                     std::uint64_t seed) {
    std::filesystem::create_directories(path.parent_path().empty() ? "." : path.parent_path());
    out_.open(path, std::ios::binary | std::ios::trunc);
    if (!out_) throw std::runtime_error("cannot open " + path.string() + " for writing");
    out_ << "# version=" << kToolVersion << "\n";
    out_ << "# config_hash=" << hex64(config_hash) << "\n";
    out_ << "# seed=" << seed << "\n";
}

void CsvWriter::raw_meta(const std::string& key, const std::string& value) {
    out_ << "# " << key << "=" << value << "\n";
}

void CsvWriter::header(const std::vector<std::string>& columns) {
    for (std::size_t i = 0; i < columns.size(); ++i)
        out_ << (i ? "," : "") << columns[i];
    out_ << "\n";
}

void CsvWriter::row(const std::vector<double>& values) {
    for (std::size_t i = 0; i < values.size(); ++i)
        out_ << (i ? "," : "") << format_double(values[i]);
    out_ << "\n";
}

void write_text_file(const std::filesystem::path& path, const std::string& body) {
    if (!path.parent_path().empty()) std::filesystem::create_directories(path.parent_path());
    std::ofstream f(path, std::ios::binary | std::ios::trunc);
    if (!f) throw std::runtime_error("cannot open " + path.string() + " for writing");
    f << body;
}

std::string read_text_file(const std::filesystem::path& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot open " + path.string());
    std::ostringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

}  // namespace gravistoch::io
