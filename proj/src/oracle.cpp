#include "hyperheat/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "hyperheat/summation.hpp"

namespace hyperheat {

namespace {

using boost::math::quadrature::gauss_kronrod;
constexpr double kPi = std::numbers::pi;
constexpr double kAbsTol = 1e-10;
constexpr double kRelTol = 1e-11;
constexpr unsigned kMaxDepth = 20;

/// Integrates a complex integrand over consecutive pieces, tracking the summed error estimate.
class PiecewiseIntegral {
public:
    template <class F>
    void add(F&& f, double a, double b) {
        if (!(b > a)) return;
        double err_re = 0.0, err_im = 0.0;
        const double re = gauss_kronrod<double, 31>::integrate([&](double y) { return f(y).real(); }, a, b,
                                                               kMaxDepth, kRelTol, &err_re);
        const double im = gauss_kronrod<double, 31>::integrate([&](double y) { return f(y).imag(); }, a, b,
                                                               kMaxDepth, kRelTol, &err_im);
        value_ += std::complex<double>(re, im);
        error_ += err_re + err_im;
    }

    std::complex<double> value() const { return value_; }
    double error() const { return error_; }

private:
    std::complex<double> value_ = 0.0;
    double error_ = 0.0;
};

std::string format_number(double v) {
    std::ostringstream os;
    os.precision(6);
    os << v;
    return os.str();
}

/// Radius beyond which kernel * certificate < 1e-14.
double certificate_radius(const GrowthCertificate& cert, double t, double x) {
    const double norm = 1.0 / std::sqrt(4.0 * kPi * t);
    auto tail = [&](double d) {
        const double far = std::abs(x) + d;
        return norm * cert.a * std::exp(cert.b * std::pow(far, cert.rho) - d * d / (4.0 * t));
    };
    double d = std::sqrt(t);
    while (tail(d) >= 1e-14 && d < 1e6) d *= 1.25;
    return d;
}

}  // namespace

std::complex<double> classical_solution(const BoundaryCondition& g, double t, double x) {
    if (!(t > 0.0)) throw std::invalid_argument("classical solution needs t > 0");
    const double radius = std::max(10.0 * std::sqrt(t), certificate_radius(g.certificate(), t, x));
    double lo = x - radius, hi = x + radius;
    if (const auto s = g.support()) {
        lo = std::max(lo, s->first);
        hi = std::min(hi, s->second);
    }
    PiecewiseIntegral total;
    if (lo < hi) {
        std::vector<double> cuts{lo};
        for (double b : g.breakpoints()) {
            if (b > lo && b < hi) cuts.push_back(b);
        }
        cuts.push_back(hi);
        std::sort(cuts.begin(), cuts.end());
        const double norm = 1.0 / std::sqrt(4.0 * kPi * t);
        const auto integrand = [&](double y) {
            return norm * std::exp(-(x - y) * (x - y) / (4.0 * t)) * g(y);
        };
        for (std::size_t i = 0; i + 1 < cuts.size(); ++i) total.add(integrand, cuts[i], cuts[i + 1]);
    }
    if (!(total.error() <= kAbsTol) || !std::isfinite(std::abs(total.value()))) {
        throw QuadratureError("heat-kernel quadrature did not converge (error estimate " +
                              format_number(total.error()) + ")");
    }
    return total.value();
}

std::optional<std::complex<double>> classical_closed_form(const BoundaryCondition& g, double t, double x) {
    if (!(t > 0.0)) throw std::invalid_argument("classical solution needs t > 0");
    if (g.kind() == BoundaryCondition::Kind::gaussian) {
        const auto [a, b] = *g.parameters();
        const double s = 1.0 + 4.0 * b * t;
        return a / std::sqrt(s) * std::exp(-b * x * x / s);
    }
    if (g.kind() == BoundaryCondition::Kind::indicator) {
        const auto [l, r] = *g.support();
        const double w = 2.0 * std::sqrt(t);
        return 0.5 * (std::erf((x - l) / w) - std::erf((x - r) / w));
    }
    return std::nullopt;
}

double gaussian_heat_kernel(double t, double z) { return std::exp(-z * z / (4.0 * t)) / std::sqrt(4.0 * kPi * t); }

TransformIdentity gaussian_transform_identity(double t, double z) {
    if (!(t > 0.0)) throw std::invalid_argument("transform identity needs t > 0");
    // exp(-pi^2 t w^2) < e^-40 beyond this radius
    const double radius = std::sqrt(40.0 / (kPi * kPi * t));
    PiecewiseIntegral total;
    const auto integrand = [&](double w) {
        return std::exp(-kPi * kPi * t * w * w) * std::polar(1.0, kPi * w * z);
    };
    total.add(integrand, -radius, 0.0);
    total.add(integrand, 0.0, radius);
    const double closed = std::exp(-z * z / (4.0 * t)) / std::sqrt(kPi * t);
    return {total.value(), closed, std::abs(total.value() - closed)};
}

namespace sequences {

std::complex<double> discrete_derivative_symbol(double y, double n) {
    // exp(i a) - 1 = 2i sin(a/2) exp(i a/2), without cancellation for small a
    const double a = kPi * y / n;
    return n * 2.0 * std::sin(a / 2) * std::complex<double>(-std::sin(a / 2), std::cos(a / 2));
}

std::complex<double> compound_exp(std::complex<double> w, double n) {
    const std::complex<double> u = w / n;
    const double log_abs = 0.5 * std::log1p(2.0 * u.real() + std::norm(u));
    const double arg = std::atan2(u.imag(), 1.0 + u.real());
    return std::exp(n * std::complex<double>(log_abs, arg));
}

std::complex<double> discrete_gaussian_symbol(double y, double n) {
    const auto s = discrete_derivative_symbol(y, n);
    return compound_exp(s * s, n);
}

std::complex<double> derivative_symbol_error(double n) {
    const double a = kPi / n;
    return {-2.0 * n * std::sin(a / 2) * std::sin(a / 2), n * std::sin(a) - kPi};
}

std::complex<double> discrete_gaussian_error(double y, double n) {
    return discrete_gaussian_symbol(y, n) - std::exp(-kPi * kPi * y * y);
}

std::complex<double> compound_exp_error(std::complex<double> w, double n) { return compound_exp(w, n) - std::exp(w); }

std::complex<double> discrete_gaussian_power_error(double y, double t, double n) {
    const auto base = discrete_gaussian_symbol(y, n);
    return std::exp(t * std::log(base)) - std::exp(-kPi * kPi * t * y * y);
}

}  // namespace sequences

bool RateReport::passed() const {
    return std::all_of(rows.begin(), rows.end(), [](const CheckRow& r) { return r.pass; });
}

void RateReport::append(const RateReport& other) { rows.insert(rows.end(), other.rows.begin(), other.rows.end()); }

double fit_order(std::span<const double> ns, std::span<const double> errors) {
    if (ns.size() != errors.size() || ns.size() < 2) throw std::invalid_argument("order fit needs >= 2 matched points");
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    const double m = static_cast<double>(ns.size());
    for (std::size_t i = 0; i < ns.size(); ++i) {
        const double lx = std::log(ns[i]), ly = std::log(errors[i]);
        sx += lx;
        sy += ly;
        sxx += lx * lx;
        sxy += lx * ly;
    }
    return -(m * sxy - sx * sy) / (m * sxx - sx * sx);
}

namespace {

CheckRow order_row(const std::string& check, const std::string& param, double order, double lo, double hi) {
    std::ostringstream bracket;
    bracket << '[' << lo << ',' << hi << ']';
    return {check, param, order, bracket.str(), std::isfinite(order) && order >= lo && order <= hi};
}

std::string param_n(double n) {
    std::ostringstream os;
    os.precision(15);
    os << "n=" << n;
    return os.str();
}

}  // namespace

RateReport rate_check_p(std::span<const double> n_values) {
    RateReport report;
    std::vector<double> fit_n, fit_err;
    const double constant = kPi * kPi * std::exp(kPi);
    for (double n : n_values) {
        if (!(n >= 1.0)) throw std::invalid_argument("p_n needs n >= 1");
        const double err = std::abs(sequences::derivative_symbol_error(n));
        const double bound = constant / n;
        report.rows.push_back({"p_n_bound", param_n(n), err, format_number(bound), err <= bound});
        if (n >= 100.0) {
            fit_n.push_back(n);
            fit_err.push_back(err);
        }
    }
    if (fit_n.size() >= 2) {
        report.fitted_order = fit_order(fit_n, fit_err);
        report.rows.push_back(order_row("p_n_order", "n>=100", *report.fitted_order, 0.8, 1.2));
    }
    return report;
}

RateReport rate_check_t(std::span<const double> y_values, std::span<const double> n_values) {
    RateReport report;
    for (double y : y_values) {
        std::ostringstream py;
        py << "y=" << y;
        if (y == 0.0) {
            for (double n : n_values) {
                const auto v = sequences::discrete_gaussian_symbol(0.0, n);
                report.rows.push_back({"t_n_at_zero", py.str() + ";" + param_n(n), std::abs(v - 1.0), "0", v == 1.0});
            }
            continue;
        }
        if (std::exp(-kPi * kPi * y * y) >= 1e-10) {
            std::vector<double> ns, errs;
            for (double n : n_values) {
                const double err = std::abs(sequences::discrete_gaussian_error(y, n));
                const bool decreasing = errs.empty() || err < errs.back();
                report.rows.push_back({"t_n_error", py.str() + ";" + param_n(n), err, "decreasing", decreasing});
                ns.push_back(n);
                errs.push_back(err);
            }
            if (ns.size() >= 2) {
                const double order = fit_order(ns, errs);
                report.fitted_order = order;
                report.rows.push_back(order_row("t_n_order", py.str(), order, 0.8, 1.2));
            }
            continue;
        }
        for (double n : n_values) {
            if (n < 10.0 * std::pow(std::abs(y), 3)) continue;
            const double v = std::abs(sequences::discrete_gaussian_symbol(y, n));
            report.rows.push_back({"t_n_vanishing", py.str() + ";" + param_n(n), v, "1e-3", v <= 1e-3});
        }
    }
    return report;
}

TailBound tail_bound_check(double t, double threshold, int n) {
    if (!(t > 0.0) || n < 1) throw std::invalid_argument("tail bound needs t > 0 and n >= 1");
    if (!(threshold >= 1.0 / (kPi * std::sqrt(t)))) {
        throw std::invalid_argument("tail bound needs threshold >= 1/(pi sqrt(t))");
    }
    const auto first = static_cast<long long>(std::ceil(threshold * n - 1e-9));
    const double x0 = static_cast<double>(first) / n;
    const long long half = static_cast<long long>(n) * n;
    double left = 0.0;
    // grid points j/n with |j| >= first + 1, j in [-n^2, n^2 - 1]
    for (long long j = first + 1; j <= half; ++j) {
        const double x = static_cast<double>(j) / n;
        const double v = std::exp(-kPi * kPi * t * x * x);
        left += (j <= half - 1 ? 2.0 : 1.0) * v;
    }
    left /= n;
    const double right = std::exp(-kPi * kPi * t * x0 * x0) / (kPi * std::sqrt(t));
    return {left, right, x0};
}

std::complex<double> discrete_gaussian_transform(double t, double z, int n) {
    if (!(t > 0.0) || n < 1) throw std::invalid_argument("discrete transform needs t > 0 and n >= 1");
    const long long half = static_cast<long long>(n) * n;
    const double j = z * n;
    if (std::abs(j - std::round(j)) > 1e-9 * std::max(1.0, std::abs(j))) {
        throw std::invalid_argument("z must be a grid point j/n");
    }
    const auto zj = static_cast<long long>(std::round(j));
    const long long period = 2 * half;
    CompensatedSum sum;
    for (long long k = -half; k <= half - 1; ++k) {
        const double x = static_cast<double>(k) / n;
        long long r = (zj * k) % period;
        if (r < 0) r += period;
        if (r > half) r -= period;
        sum.add(std::exp(-kPi * kPi * t * x * x) * std::polar(1.0, kPi * static_cast<double>(r) / half));
    }
    return sum.value() / static_cast<double>(n);
}

RateReport quadrature_rate_check(double t, double z, std::span<const int> n_values) {
    RateReport report;
    const double exact = std::exp(-z * z / (4.0 * t)) / std::sqrt(kPi * t);
    std::ostringstream pz;
    pz << "t=" << t << ";z=" << z;
    std::vector<double> ns, errs;
    for (int n : n_values) {
        const double err = std::abs(discrete_gaussian_transform(t, z, n) - exact);
        report.rows.push_back({"quadrature_error", pz.str() + ";" + param_n(n), err, "1e-2", err <= 1e-2});
        if (!errs.empty()) {
            report.rows.push_back({"quadrature_decreasing", pz.str() + ";" + param_n(n), err,
                                   "<" + format_number(errs.back()), err < errs.back()});
        }
        ns.push_back(n);
        errs.push_back(err);
    }
    if (ns.size() >= 2) {
        const bool positive = std::all_of(errs.begin(), errs.end(), [](double e) { return e > 0.0; });
        const double order = positive ? fit_order(ns, errs) : std::numeric_limits<double>::quiet_NaN();
        report.fitted_order = order;
        report.rows.push_back(order_row("quadrature_order", pz.str(), order, 0.8, 1.5));
    }
    return report;
}

}  // namespace hyperheat
