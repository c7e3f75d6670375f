#include "stochcode/config.hpp"

#include <charconv>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "stochcode/errors.hpp"

namespace stochcode {

namespace {

constexpr int kMaxIncludeDepth = 16;

std::string_view trim(std::string_view s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string_view::npos) return {};
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

std::string read_text(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw BadInput("config: cannot open '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

} // namespace

void Config::parse_into(Config& out, std::string_view text, const std::string& base_dir, int depth) {
    if (depth > kMaxIncludeDepth) throw FormatError("config: includes nested too deeply");
    std::size_t line_no = 0;
    while (!text.empty()) {
        const auto nl = text.find('\n');
        std::string_view line = text.substr(0, nl);
        text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
        ++line_no;
        if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string_view::npos)
            throw FormatError("config: line " + std::to_string(line_no) + ": expected key = value");
        const std::string key(trim(line.substr(0, eq)));
        const std::string value(trim(line.substr(eq + 1)));
        if (key.empty()) throw FormatError("config: line " + std::to_string(line_no) + ": empty key");
        if (key == "include") {
            const auto path = (std::filesystem::path(base_dir) / value).lexically_normal();
            parse_into(out, read_text(path.string()), path.parent_path().string(), depth + 1);
            continue;
        }
        out.values_[key] = value;
    }
}

Config Config::parse(std::string_view text, const std::string& base_dir) {
    Config c;
    parse_into(c, text, base_dir, 0);
    return c;
}

Config Config::load(const std::string& path) {
    const auto dir = std::filesystem::path(path).parent_path();
    return parse(read_text(path), dir.empty() ? "." : dir.string());
}

std::string Config::text(const std::string& key, const std::string& fallback) const {
    const auto it = values_.find(key);
    return it == values_.end() ? fallback : it->second;
}

double Config::number(const std::string& key, double fallback) const {
    const auto it = values_.find(key);
    if (it == values_.end()) return fallback;
    const std::string& s = it->second;
    double v = 0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || ptr != s.data() + s.size()) throw FormatError("config: '" + key + "' is not a number: " + s);
    return v;
}

std::uint64_t Config::integer(const std::string& key, std::uint64_t fallback) const {
    const auto it = values_.find(key);
    if (it == values_.end()) return fallback;
    const std::string& s = it->second;
    std::uint64_t v = 0;
    const bool hex = s.size() > 2 && s[0] == '0' && (s[1] == 'x' || s[1] == 'X');
    const char* first = s.data() + (hex ? 2 : 0);
    const auto [ptr, ec] = std::from_chars(first, s.data() + s.size(), v, hex ? 16 : 10);
    if (ec != std::errc() || ptr != s.data() + s.size())
        throw FormatError("config: '" + key + "' is not a non-negative integer: " + s);
    return v;
}

void Config::merge(const Config& other) {
    for (const auto& [k, v] : other.values_) values_[k] = v;
}

std::string Config::to_string() const {
    std::string out;
    for (const auto& [k, v] : values_) out += k + " = " + v + "\n";
    return out;
}

} // namespace stochcode
