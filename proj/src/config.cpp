#include "hospt/config.hpp"

#include <cctype>
#include <cmath>
#include <fstream>
#include <sstream>

#include "hospt/errors.hpp"

namespace hospt {

namespace {

std::string trim(const std::string& s) {
    std::size_t a = 0, b = s.size();
    while (a < b && std::isspace(static_cast<unsigned char>(s[a])))
        ++a;
    while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1])))
        --b;
    return s.substr(a, b - a);
}

double parse_number(const std::string& text, const std::string& key) {
    std::size_t pos = 0;
    double v = 0.0;
    try {
        v = std::stod(text, &pos);
    } catch (const std::exception&) {
        throw ConfigError("key '" + key + "': not a number: '" + text + "'");
    }
    if (pos != text.size())
        throw ConfigError("key '" + key + "': trailing junk in number: '" +
                          text + "'");
    return v;
}

} // namespace

Config Config::parse_string(const std::string& text) {
    Config cfg;
    std::istringstream is(text);
    std::string line;
    int lineno = 0;
    while (std::getline(is, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos)
            line = line.substr(0, hash);
        line = trim(line);
        if (line.empty())
            continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw ConfigError("config line " + std::to_string(lineno) +
                              ": expected 'key = value'");
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (key.empty() || value.empty())
            throw ConfigError("config line " + std::to_string(lineno) +
                              ": empty key or value");
        if (cfg.entries_.count(key))
            throw ConfigError("duplicate config key '" + key + "'");
        cfg.entries_[key] = value;
    }
    return cfg;
}

Config Config::parse_file(const std::string& path) {
    std::ifstream is(path);
    if (!is)
        throw ConfigError("cannot open config file: " + path);
    std::ostringstream ss;
    ss << is.rdbuf();
    return parse_string(ss.str());
}

bool Config::has(const std::string& key) const {
    return entries_.count(key) != 0;
}

std::string Config::get_string(const std::string& key) const {
    const auto it = entries_.find(key);
    if (it == entries_.end())
        throw ConfigError("missing required config key '" + key + "'");
    return it->second;
}

std::string Config::get_string(const std::string& key,
                               const std::string& fallback) const {
    const auto it = entries_.find(key);
    return it == entries_.end() ? fallback : it->second;
}

double Config::get_number(const std::string& key) const {
    return parse_number(get_string(key), key);
}

double Config::get_number(const std::string& key, double fallback) const {
    const auto it = entries_.find(key);
    return it == entries_.end() ? fallback : parse_number(it->second, key);
}

std::uint64_t Config::get_u64(const std::string& key,
                              std::uint64_t fallback) const {
    const auto it = entries_.find(key);
    if (it == entries_.end())
        return fallback;
    try {
        return std::stoull(it->second);
    } catch (const std::exception&) {
        throw ConfigError("key '" + key + "': not an unsigned integer: '" +
                          it->second + "'");
    }
}

std::vector<double> Config::get_list(const std::string& key) const {
    std::string text = get_string(key);
    if (text.size() < 2 || text.front() != '[' || text.back() != ']')
        return {parse_number(text, key)};
    text = text.substr(1, text.size() - 2);

    std::vector<std::string> tokens;
    std::string tok;
    std::istringstream is(text);
    while (std::getline(is, tok, ','))
        tokens.push_back(trim(tok));
    if (!tokens.empty() && tokens.back().empty())
        tokens.pop_back();

    // "[a, b, ..., z]" expands to the arithmetic progression a, a+d, ..., z
    std::vector<double> out;
    for (std::size_t i = 0; i < tokens.size(); ++i) {
        if (tokens[i] == "...") {
            if (out.size() < 2 || i + 1 != tokens.size() - 1)
                throw ConfigError("key '" + key +
                                  "': '...' needs two leading values and one "
                                  "trailing value");
            const double step = out[out.size() - 1] - out[out.size() - 2];
            const double last = parse_number(tokens[i + 1], key);
            if (step == 0.0 || (last - out.back()) / step < 0.0)
                throw ConfigError("key '" + key +
                                  "': inconsistent progression");
            const long n = std::lround((last - out.back()) / step);
            for (long m = 1; m <= n; ++m)
                out.push_back(out[out.size() - 1] + step);
            if (std::abs(out.back() - last) > 1e-9 * std::max(1.0, std::abs(last)))
                throw ConfigError("key '" + key +
                                  "': endpoint does not lie on the "
                                  "progression");
            return out;
        }
        out.push_back(parse_number(tokens[i], key));
    }
    if (out.empty())
        throw ConfigError("key '" + key + "': empty list");
    return out;
}

std::vector<double>
Config::get_list(const std::string& key,
                 const std::vector<double>& fallback) const {
    return has(key) ? get_list(key) : fallback;
}

void Config::require_known(const std::set<std::string>& schema) const {
    for (const auto& [key, value] : entries_)
        if (!schema.count(key))
            throw ConfigError("unknown config key '" + key + "'");
}

} // namespace hospt
