#include <charconv>
#include <cmath>
#include <ostream>
#include <stdexcept>

#include "hyperheat/cli.hpp"

namespace hyperheat::cli {

namespace {

std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
    return s;
}

double parse_one(std::string_view token) {
    token = trim(token);
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), v);
    if (ec != std::errc{} || ptr != token.data() + token.size() || !std::isfinite(v)) {
        throw ConfigError("bad number '" + std::string(token) + "'");
    }
    return v;
}

}  // namespace

std::string format_double(double v) {
    char buf[64];
    const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
    if (ec != std::errc{}) throw std::runtime_error("double formatting failed");
    return std::string(buf, ptr);
}

std::string csv_field(std::string_view s) {
    if (s.find_first_of(",\"\r\n") == std::string_view::npos) return std::string(s);
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    out += '"';
    return out;
}

void write_csv_row(std::ostream& out, std::span<const std::string> fields) {
    for (std::size_t i = 0; i < fields.size(); ++i) {
        if (i > 0) out << ',';
        out << csv_field(fields[i]);
    }
    out << "\r\n";
}

std::vector<double> parse_number_list(std::string_view text) {
    text = trim(text);
    if (text.empty()) throw ConfigError("empty number list");
    if (text.find(':') != std::string_view::npos) {
        const auto c1 = text.find(':');
        const auto c2 = text.find(':', c1 + 1);
        if (c2 == std::string_view::npos) throw ConfigError("range must look like first:last:count");
        const double first = parse_one(text.substr(0, c1));
        const double last = parse_one(text.substr(c1 + 1, c2 - c1 - 1));
        const double count = parse_one(text.substr(c2 + 1));
        if (count < 1 || count != std::floor(count)) throw ConfigError("range count must be a positive integer");
        const auto m = static_cast<std::size_t>(count);
        std::vector<double> out(m);
        for (std::size_t i = 0; i < m; ++i) {
            out[i] = m == 1 ? first : first + (last - first) * static_cast<double>(i) / static_cast<double>(m - 1);
        }
        return out;
    }
    std::vector<double> out;
    while (true) {
        const auto comma = text.find(',');
        out.push_back(parse_one(text.substr(0, comma)));
        if (comma == std::string_view::npos) break;
        text.remove_prefix(comma + 1);
    }
    return out;
}

std::vector<int> parse_int_list(std::string_view text) {
    std::vector<int> out;
    for (double v : parse_number_list(text)) {
        if (v != std::floor(v) || std::abs(v) > 1e9) throw ConfigError("expected integers, got " + format_double(v));
        out.push_back(static_cast<int>(v));
    }
    return out;
}

int guarded(const std::function<int()>& body, std::ostream& err) {
    try {
        return body();
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << '\n';
        return kConfigError;
    } catch (const std::out_of_range& e) {
        err << "error: " << e.what() << '\n';
        return kConfigError;
    }
}

}  // namespace hyperheat::cli
