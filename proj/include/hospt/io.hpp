#ifndef HOSPT_IO_HPP
#define HOSPT_IO_HPP

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

namespace hospt {

inline constexpr const char* kVersionTag = "hospt 0.1.0";

// 12 significant digits, '.' decimal separator, no locale surprises
std::string format_number(double v);

// CSV with LF newlines and format_number cells; byte-identical across runs
class CsvWriter {
  public:
    explicit CsvWriter(std::vector<std::string> header);
    void add_row(const std::vector<double>& row);
    const std::string& body() const { return body_; }
    void write(const std::filesystem::path& path) const;

  private:
    std::string body_;
    std::size_t columns_ = 0;
};

std::uint64_t fnv1a64(const std::string& data);
std::string fnv1a64_hex(const std::string& data);
std::uint64_t fnv1a64_file(const std::filesystem::path& path);

// manifest.json listing artifact names and content hashes (the only output
// allowed to carry a timestamp)
void write_manifest(const std::filesystem::path& dir,
                    const std::vector<std::filesystem::path>& files,
                    const std::string& config_echo);

} // namespace hospt

#endif
