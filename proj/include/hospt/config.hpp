#ifndef HOSPT_CONFIG_HPP
#define HOSPT_CONFIG_HPP

#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <vector>

namespace hospt {

// Flat dotted-key configuration files:
//
//   # comment
//   pump.variant = diag
//   pump.t0_ns   = 500
//   sweep.w_mhz  = [0, 2, ..., 40]     # arithmetic progression
//
// Values are strings, numbers, or numeric lists. Unknown keys are rejected
// against the per-command schema at lookup time.
class Config {
  public:
    static Config parse_file(const std::string& path);
    static Config parse_string(const std::string& text);

    bool has(const std::string& key) const;

    std::string get_string(const std::string& key) const;
    std::string get_string(const std::string& key,
                           const std::string& fallback) const;
    double get_number(const std::string& key) const;
    double get_number(const std::string& key, double fallback) const;
    std::uint64_t get_u64(const std::string& key, std::uint64_t fallback) const;
    std::vector<double> get_list(const std::string& key) const;
    std::vector<double> get_list(const std::string& key,
                                 const std::vector<double>& fallback) const;

    // throws ConfigError naming the first key outside the schema
    void require_known(const std::set<std::string>& schema) const;

    const std::map<std::string, std::string>& entries() const {
        return entries_;
    }

  private:
    std::map<std::string, std::string> entries_; // raw value text per key
};

} // namespace hospt

#endif
