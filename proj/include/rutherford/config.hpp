#pragma once

#include <charconv>
#include <cmath>
#include <cstddef>
#include <istream>
#include <limits>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <system_error>
#include <vector>

#include "rutherford/error.hpp"
#include "rutherford/experiment.hpp"

namespace rutherford {

/// Shortest decimal text that parses back to exactly `v`.
inline std::string format_double(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[32];
    auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, end);
}

namespace detail {

inline std::string_view trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string_view::npos) return {};
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

inline double parse_real(const std::string& key, std::string_view text) {
    text = trim(text);
    double v = 0.0;
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
    if (ec != std::errc{} || ptr != text.data() + text.size() || text.empty())
        throw ConfigError(key, "expected a real number, got '" + std::string(text) + "'");
    if (!std::isfinite(v)) throw ConfigError(key, "must be finite");
    return v;
}

template <class Int>
Int parse_integer(const std::string& key, std::string_view text) {
    text = trim(text);
    Int v{};
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
    if (ec != std::errc{} || ptr != text.data() + text.size() || text.empty())
        throw ConfigError(key, "expected an integer, got '" + std::string(text) + "'");
    return v;
}

inline std::vector<double> parse_real_list(const std::string& key, std::string_view text) {
    text = trim(text);
    if (!text.empty() && text.front() == '[') {
        if (text.back() != ']') throw ConfigError(key, "unterminated list");
        text = trim(text.substr(1, text.size() - 2));
    }
    std::vector<double> out;
    if (text.empty()) return out;
    std::size_t start = 0;
    while (true) {
        const auto comma = text.find(',', start);
        out.push_back(parse_real(key, text.substr(start, comma == std::string_view::npos ? text.npos : comma - start)));
        if (comma == std::string_view::npos) break;
        start = comma + 1;
    }
    return out;
}

} // namespace detail

/// Reads flat `key = value` text. Blank lines and `#` comments are skipped;
/// absent keys keep the RunConfig defaults; unknown or repeated keys are
/// rejected. Errors carry the offending key.
inline RunConfig parse_config(std::istream& in) {
    RunConfig c;
    std::map<std::string, bool> seen;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        std::string_view body = line;
        if (auto hash = body.find('#'); hash != std::string_view::npos) body = body.substr(0, hash);
        body = detail::trim(body);
        if (body.empty()) continue;
        const auto eq = body.find('=');
        if (eq == std::string_view::npos)
            throw ConfigError("line " + std::to_string(lineno), "expected key = value");
        const std::string key(detail::trim(body.substr(0, eq)));
        const std::string_view value = detail::trim(body.substr(eq + 1));
        if (seen[key]) throw ConfigError(key, "given more than once");
        seen[key] = true;

        using detail::parse_real;
        if (key == "x0") c.x0 = parse_real(key, value);
        else if (key == "p0") c.p0 = parse_real(key, value);
        else if (key == "sigma_list") c.sigma_list = detail::parse_real_list(key, value);
        else if (key == "z1") c.z1 = detail::parse_integer<int>(key, value);
        else if (key == "z2") c.z2 = detail::parse_integer<int>(key, value);
        else if (key == "mass") c.mass = parse_real(key, value);
        else if (key == "x_min") c.x_min = parse_real(key, value);
        else if (key == "x_max") c.x_max = parse_real(key, value);
        else if (key == "n_points") c.n_points = detail::parse_integer<std::size_t>(key, value);
        else if (key == "dt") c.dt = parse_real(key, value);
        else if (key == "t_max") c.t_max = parse_real(key, value);
        else if (key == "sample_every") c.sample_every = detail::parse_integer<std::size_t>(key, value);
        else if (key == "softening_cut") c.softening_cut = parse_real(key, value);
        else if (key == "coupling_k") c.coupling_k = parse_real(key, value);
        else throw ConfigError(key, "unknown key");
    }

    try {
        validate(c);
    } catch (const InvalidArgument& e) {
        const std::string what = e.what();
        const auto colon = what.find(':');
        throw ConfigError(what.substr(0, colon), what.substr(colon + 2));
    }
    return c;
}

inline RunConfig parse_config(std::string_view text) {
    std::istringstream in{std::string(text)};
    return parse_config(in);
}

/// Inverse of parse_config: every key, full round-trip precision.
inline std::string render_config(const RunConfig& c) {
    std::ostringstream out;
    out << "x0 = " << format_double(c.x0) << '\n';
    out << "p0 = " << format_double(c.p0) << '\n';
    out << "sigma_list = [";
    for (std::size_t i = 0; i < c.sigma_list.size(); ++i)
        out << (i ? ", " : "") << format_double(c.sigma_list[i]);
    out << "]\n";
    out << "z1 = " << c.z1 << '\n';
    out << "z2 = " << c.z2 << '\n';
    out << "mass = " << format_double(c.mass) << '\n';
    out << "x_min = " << format_double(c.x_min) << '\n';
    out << "x_max = " << format_double(c.x_max) << '\n';
    out << "n_points = " << c.n_points << '\n';
    out << "dt = " << format_double(c.dt) << '\n';
    out << "t_max = " << format_double(c.t_max) << '\n';
    out << "sample_every = " << c.sample_every << '\n';
    if (c.softening_cut) out << "softening_cut = " << format_double(*c.softening_cut) << '\n';
    if (c.coupling_k) out << "coupling_k = " << format_double(*c.coupling_k) << '\n';
    return out.str();
}

} // namespace rutherford
