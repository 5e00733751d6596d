#include "hospt/io.hpp"

#include <chrono>
#include <cstdio>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "hospt/errors.hpp"

namespace hospt {

std::string format_number(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

CsvWriter::CsvWriter(std::vector<std::string> header)
    : columns_(header.size()) {
    for (std::size_t i = 0; i < header.size(); ++i) {
        if (i)
            body_ += ',';
        body_ += header[i];
    }
    body_ += '\n';
}

void CsvWriter::add_row(const std::vector<double>& row) {
    if (row.size() != columns_)
        throw UsageError("CSV row width mismatch");
    for (std::size_t i = 0; i < row.size(); ++i) {
        if (i)
            body_ += ',';
        body_ += format_number(row[i]);
    }
    body_ += '\n';
}

void CsvWriter::write(const std::filesystem::path& path) const {
    std::ofstream os(path, std::ios::binary);
    if (!os)
        throw ConfigError("cannot open for writing: " + path.string());
    os << body_;
}

std::uint64_t fnv1a64(const std::string& data) {
    std::uint64_t h = 0xcbf29ce484222325ull;
    for (unsigned char c : data) {
        h ^= c;
        h *= 0x100000001b3ull;
    }
    return h;
}

std::string fnv1a64_hex(const std::string& data) {
    char buf[24];
    std::snprintf(buf, sizeof buf, "fnv1a64:%016llx",
                  static_cast<unsigned long long>(fnv1a64(data)));
    return buf;
}

std::uint64_t fnv1a64_file(const std::filesystem::path& path) {
    std::ifstream is(path, std::ios::binary);
    if (!is)
        throw ConfigError("cannot read: " + path.string());
    std::ostringstream ss;
    ss << is.rdbuf();
    return fnv1a64(ss.str());
}

void write_manifest(const std::filesystem::path& dir,
                    const std::vector<std::filesystem::path>& files,
                    const std::string& config_echo) {
    nlohmann::json manifest;
    manifest["version"] = kVersionTag;
    manifest["config"] = config_echo;
    const auto now = std::chrono::system_clock::now().time_since_epoch();
    manifest["written_unix_ms"] =
        std::chrono::duration_cast<std::chrono::milliseconds>(now).count();
    auto& artifacts = manifest["artifacts"];
    artifacts = nlohmann::json::array();
    for (const auto& f : files) {
        std::ifstream is(f, std::ios::binary);
        std::ostringstream ss;
        ss << is.rdbuf();
        artifacts.push_back({{"file", f.filename().string()},
                             {"hash", fnv1a64_hex(ss.str())},
                             {"bytes", ss.str().size()}});
    }
    std::ofstream os(dir / "manifest.json", std::ios::binary);
    os << manifest.dump(2) << "\n";
}

} // namespace hospt
