#include "hyperheat/boundary.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace hyperheat {

namespace {

template <class... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

std::string_view trim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
}

double parse_double(std::string_view token, std::string_view context) {
    token = trim(token);
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), v);
    if (ec != std::errc{} || ptr != token.data() + token.size() || !std::isfinite(v)) {
        throw std::invalid_argument("bad number '" + std::string(token) + "' in " + std::string(context));
    }
    return v;
}

std::vector<double> split_numbers(std::string_view list, std::string_view context) {
    std::vector<double> out;
    while (true) {
        const auto comma = list.find(',');
        out.push_back(parse_double(list.substr(0, comma), context));
        if (comma == std::string_view::npos) break;
        list.remove_prefix(comma + 1);
    }
    return out;
}

}  // namespace

double GrowthCertificate::bound(double y) const { return a * std::exp(b * std::pow(std::abs(y), rho)); }

BoundaryCondition BoundaryCondition::gaussian(double amplitude, double rate) {
    if (!(rate > 0.0)) throw std::invalid_argument("gaussian rate must be positive");
    return BoundaryCondition(Gaussian{amplitude, rate});
}

BoundaryCondition BoundaryCondition::zero() { return gaussian(0.0, 1.0); }

BoundaryCondition BoundaryCondition::indicator(double left, double right) {
    if (!(left < right)) throw std::invalid_argument("indicator needs left < right");
    return BoundaryCondition(Indicator{left, right});
}

BoundaryCondition BoundaryCondition::bump(double center, double width) {
    if (!(width > 0.0)) throw std::invalid_argument("bump width must be positive");
    return BoundaryCondition(Bump{center, width});
}

BoundaryCondition BoundaryCondition::sampled(std::vector<double> xs, std::vector<std::complex<double>> values) {
    if (xs.empty() || xs.size() != values.size()) {
        throw std::invalid_argument("sampled boundary needs matching, non-empty x and value lists");
    }
    std::vector<std::size_t> order(xs.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](auto l, auto r) { return xs[l] < xs[r]; });
    Sampled s;
    for (auto i : order) {
        if (!s.xs.empty() && xs[i] == s.xs.back()) throw std::invalid_argument("duplicate sample position");
        s.xs.push_back(xs[i]);
        s.values.push_back(values[i]);
    }
    return BoundaryCondition(std::move(s));
}

BoundaryCondition BoundaryCondition::parse(std::string_view text) {
    text = trim(text);
    const auto colon = text.find(':');
    const std::string_view name = text.substr(0, colon);
    if (name == "zero" && colon == std::string_view::npos) return zero();
    if (colon == std::string_view::npos) {
        throw std::invalid_argument("boundary '" + std::string(text) + "' must look like name:p1,p2");
    }
    const auto params = split_numbers(text.substr(colon + 1), text);
    if (params.size() != 2) throw std::invalid_argument("boundary '" + std::string(name) + "' takes two parameters");
    if (name == "gaussian") return gaussian(params[0], params[1]);
    if (name == "indicator") return indicator(params[0], params[1]);
    if (name == "bump") return bump(params[0], params[1]);
    throw std::invalid_argument("unknown boundary kind '" + std::string(name) + "'");
}

BoundaryCondition BoundaryCondition::load_samples(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open sample file " + path.string());
    std::vector<double> xs;
    std::vector<std::complex<double>> values;
    std::string line;
    while (std::getline(in, line)) {
        const auto body = trim(line);
        if (body.empty() || body.front() == '#') continue;
        const auto fields = split_numbers(body, path.string());
        if (fields.size() != 3) throw std::invalid_argument("sample lines must be x,re,im: " + std::string(body));
        xs.push_back(fields[0]);
        values.emplace_back(fields[1], fields[2]);
    }
    return sampled(std::move(xs), std::move(values));
}

BoundaryCondition::Kind BoundaryCondition::kind() const {
    return std::visit(overloaded{[](const Gaussian&) { return Kind::gaussian; },
                                 [](const Indicator&) { return Kind::indicator; },
                                 [](const Bump&) { return Kind::bump; },
                                 [](const Sampled&) { return Kind::sampled; }},
                      data_);
}

std::string BoundaryCondition::describe() const {
    std::ostringstream os;
    os.precision(17);
    std::visit(overloaded{[&](const Gaussian& g) { os << "gaussian:" << g.amplitude << ',' << g.rate; },
                          [&](const Indicator& g) { os << "indicator:" << g.left << ',' << g.right; },
                          [&](const Bump& g) { os << "bump:" << g.center << ',' << g.width; },
                          [&](const Sampled& g) { os << "sampled:" << g.xs.size() << " points"; }},
               data_);
    return os.str();
}

std::complex<double> BoundaryCondition::operator()(double y) const {
    return std::visit(
        overloaded{
            [&](const Gaussian& g) -> std::complex<double> { return g.amplitude * std::exp(-g.rate * y * y); },
            [&](const Indicator& g) -> std::complex<double> { return (y >= g.left && y < g.right) ? 1.0 : 0.0; },
            [&](const Bump& g) -> std::complex<double> {
                const double s = (y - g.center) / g.width;
                if (std::abs(s) >= 1.0) return 0.0;
                return std::exp(1.0 - 1.0 / (1.0 - s * s));
            },
            [&](const Sampled& g) -> std::complex<double> {
                if (y < g.xs.front() || y > g.xs.back()) return 0.0;
                const auto hi = std::lower_bound(g.xs.begin(), g.xs.end(), y);
                auto i = static_cast<std::size_t>(hi - g.xs.begin());
                if (i > 0 && (i == g.xs.size() || y - g.xs[i - 1] <= g.xs[i] - y)) --i;
                return g.values[i];
            }},
        data_);
}

GrowthCertificate BoundaryCondition::certificate() const {
    return std::visit(overloaded{[](const Gaussian& g) { return GrowthCertificate{std::abs(g.amplitude), 0.0, 0.0}; },
                                 [](const Indicator&) { return GrowthCertificate{1.0, 0.0, 0.0}; },
                                 [](const Bump&) { return GrowthCertificate{1.0, 0.0, 0.0}; },
                                 [](const Sampled& g) {
                                     double m = 0.0;
                                     for (const auto& v : g.values) m = std::max(m, std::abs(v));
                                     return GrowthCertificate{m, 0.0, 0.0};
                                 }},
                      data_);
}

std::optional<std::pair<double, double>> BoundaryCondition::support() const {
    using Interval = std::optional<std::pair<double, double>>;
    return std::visit(
        overloaded{[](const Gaussian&) -> Interval { return std::nullopt; },
                   [](const Indicator& g) -> Interval { return std::pair{g.left, g.right}; },
                   [](const Bump& g) -> Interval { return std::pair{g.center - g.width, g.center + g.width}; },
                   [](const Sampled& g) -> Interval { return std::pair{g.xs.front(), g.xs.back()}; }},
        data_);
}

std::vector<double> BoundaryCondition::breakpoints() const {
    return std::visit(overloaded{[](const Gaussian&) { return std::vector<double>{}; },
                                 [](const Indicator& g) { return std::vector<double>{g.left, g.right}; },
                                 [](const Bump& g) { return std::vector<double>{g.center - g.width, g.center + g.width}; },
                                 [](const Sampled& g) {
                                     std::vector<double> b{g.xs.front()};
                                     for (std::size_t i = 1; i < g.xs.size(); ++i) b.push_back(0.5 * (g.xs[i - 1] + g.xs[i]));
                                     b.push_back(g.xs.back());
                                     return b;
                                 }},
                      data_);
}

std::optional<std::pair<double, double>> BoundaryCondition::parameters() const {
    using Pair = std::optional<std::pair<double, double>>;
    return std::visit(overloaded{[](const Gaussian& g) -> Pair { return std::pair{g.amplitude, g.rate}; },
                                 [](const Indicator& g) -> Pair { return std::pair{g.left, g.right}; },
                                 [](const Bump& g) -> Pair { return std::pair{g.center, g.width}; },
                                 [](const Sampled&) -> Pair { return std::nullopt; }},
                      data_);
}

bool certificate_holds(const BoundaryCondition& g, std::span<const double> ys) {
    const auto cert = g.certificate();
    return std::all_of(ys.begin(), ys.end(),
                       [&](double y) { return std::abs(g(y)) <= cert.bound(y) * (1.0 + 1e-12); });
}

}  // namespace hyperheat
