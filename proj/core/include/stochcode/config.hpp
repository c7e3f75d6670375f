#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <string_view>

namespace stochcode {

// Flat key=value settings. One entry per line, '#' starts a comment and
// "include = path" splices another file (relative to the including file).
// Later entries override earlier ones.
class Config {
public:
    static Config parse(std::string_view text, const std::string& base_dir = ".");
    static Config load(const std::string& path);

    bool has(const std::string& key) const { return values_.count(key) != 0; }
    std::string text(const std::string& key, const std::string& fallback) const;
    double number(const std::string& key, double fallback) const;
    std::uint64_t integer(const std::string& key, std::uint64_t fallback) const;

    void set(const std::string& key, const std::string& value) { values_[key] = value; }
    void merge(const Config& other);
    const std::map<std::string, std::string>& entries() const { return values_; }
    std::string to_string() const;

private:
    static void parse_into(Config& out, std::string_view text, const std::string& base_dir, int depth);

    std::map<std::string, std::string> values_;
};

} // namespace stochcode
