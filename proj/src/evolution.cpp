#include "hyperheat/evolution.hpp"

#include <algorithm>
#include <cmath>
#include <mutex>
#include <numbers>
#include <sstream>

#include "hyperheat/parallel.hpp"
#include "hyperheat/summation.hpp"
#include "hyperheat/transform.hpp"

namespace hyperheat {

Window::Window(GridParams params, double radius)
    : radius_(radius), half_width_(0), values_(GridFunction::zeros(params)) {
    if (!(radius > 0.0) || radius > params.n()) {
        throw std::invalid_argument("window radius must lie in (0, n]");
    }
    half_width_ = std::min(params.floor_index(radius), params.n_squared());
    values_ = GridFunction::from_index(params, [&](Index k) { return contains(k) ? 0.5 : 0.0; });
}

Complex integer_power(Complex base, std::uint64_t exponent) {
    Complex result = 1.0;
    while (exponent > 0) {
        if (exponent & 1U) result *= base;
        exponent >>= 1U;
        if (exponent > 0) base *= base;
    }
    return result;
}

Propagator::Propagator(GridParams params)
    : growth_(GridFunction::from_index(params, [&](Index k) { return growth_at(params, k); })) {}

std::size_t Propagator::steps_for_time(const GridParams& params, double t) {
    if (!(t >= 0.0)) throw std::invalid_argument("time must be non-negative");
    return static_cast<std::size_t>(params.floor_index(t));
}

Complex Propagator::growth_at(const GridParams& params, Index k) {
    const Complex psi = psi_at(params, k);
    return 1.0 + psi * psi / static_cast<double>(params.n());
}

double Propagator::growth_modulus_squared(const GridParams& params, Index k) {
    const double n = params.n();
    const double theta = std::numbers::pi * static_cast<double>(k) / static_cast<double>(params.n_squared());
    const double s2 = std::sin(theta / 2) * std::sin(theta / 2);
    return 1.0 - 8.0 * n * s2 * std::cos(theta) + 16.0 * n * n * s2 * s2;
}

GridFunction Propagator::power(std::size_t steps) const {
    std::vector<Complex> v(growth_.size());
    auto gv = growth_.values();
    for (std::size_t m = 0; m < v.size(); ++m) v[m] = integer_power(gv[m], steps);
    return GridFunction(params(), std::move(v));
}

double stability_radius(const GridParams& params) { return std::sqrt(2.0 * params.n()) / std::numbers::pi; }

double max_growth_modulus(const GridParams& params, double radius) {
    const Window w(params, radius);
    double m = 0.0;
    for (Index k = -w.half_width(); k <= w.half_width(); ++k) {
        if (params.contains(k)) m = std::max(m, std::abs(Propagator::growth_at(params, k)));
    }
    return m;
}

GridFunction step(const GridFunction& slice) {
    return slice + (1.0 / slice.params().n()) * d_xx(slice);
}

OverflowGuardError::OverflowGuardError(std::size_t step, double magnitude)
    : std::runtime_error([&] {
          std::ostringstream os;
          os << "explicit stepper exceeded modulus " << kOverflowGuard << " at step " << step << " (max |f| = "
             << magnitude << "); use the windowed spectral solve instead";
          return os.str();
      }()),
      step_(step) {}

namespace {

/// Sequential cursor over stepper slices; restarts from g when asked for an earlier slice.
class StepperCursor {
public:
    explicit StepperCursor(GridFunction g) : g_(g), current_(std::move(g)) {}

    GridFunction at(std::size_t i) {
        std::lock_guard lock(mutex_);
        if (i < index_) {
            index_ = 0;
            current_ = g_;
        }
        while (index_ < i) {
            current_ = step(current_);
            ++index_;
            const double m = current_.max_abs();
            if (!(m <= kOverflowGuard)) throw OverflowGuardError(index_, m);
        }
        return current_;
    }

private:
    std::mutex mutex_;
    GridFunction g_;
    GridFunction current_;
    std::size_t index_ = 0;
};

}  // namespace

Field evolve(const GridFunction& g, std::size_t steps) {
    if (steps >= g.params().time_count()) {
        throw std::out_of_range("evolve supports at most n^2 - 1 steps");
    }
    auto cursor = std::make_shared<StepperCursor>(g);
    cursor->at(steps);  // runs the overflow guard over the whole range up front
    return Field(g, [cursor](std::size_t i) { return cursor->at(i); }, steps);
}

std::vector<GridFunction> stepper_corrections(const GridFunction& g, std::size_t steps) {
    std::vector<GridFunction> out;
    out.reserve(steps);
    GridFunction slice = g;
    for (std::size_t i = 0; i < steps; ++i) {
        out.push_back(boundary_corrections(slice).f_corr);
        if (i + 1 < steps) slice = step(slice);
    }
    return out;
}

GridFunction spectral_hat(const GridFunction& g_hat, std::span<const GridFunction> corrections, std::size_t i) {
    const auto& p = g_hat.params();
    if (i >= p.time_count()) throw std::out_of_range("spectral_hat time index outside [0, n^2 - 1]");
    if (!corrections.empty() && corrections.size() < i) {
        throw std::invalid_argument("spectral_hat needs a correction for each of the first i slices");
    }
    const Propagator prop(p);
    GridFunction result = g_hat * prop.power(i);
    if (corrections.empty() || i == 0) return result;

    const double weight = 1.0 / p.n();
    std::vector<Complex> sum(p.space_count());
    auto growth = prop.growth().values();
    for (std::size_t m = 0; m < sum.size(); ++m) {
        CompensatedSum acc;
        for (std::size_t j = 0; j < i; ++j) {
            acc.add(corrections[j].values()[m] * integer_power(growth[m], i - j - 1));
        }
        sum[m] = weight * acc.value();
    }
    return result - GridFunction(p, std::move(sum));
}

GridFunction spectral_hat(const GridFunction& g_hat, std::size_t i) { return spectral_hat(g_hat, {}, i); }

Complex convolve_at(const GridFunction& f, const GridFunction& g, Index j) {
    const auto& p = f.params();
    if (g.params() != p) throw std::invalid_argument("convolution operands live on different grids");
    CompensatedSum acc;
    for (Index k = p.first_index(); k <= p.last_index(); ++k) acc.add(f[p.wrap(j - k)] * g[k]);
    return acc.value() / static_cast<double>(p.n());
}

GridFunction convolve(const GridFunction& f, const GridFunction& g) {
    return GridFunction::from_index(f.params(), [&](Index j) { return convolve_at(f, g, j); });
}

ConvolutionResiduals check_convolution_theorem(const GridFunction& f, const GridFunction& g) {
    const GridFunction fg = convolve(f, g);
    return {max_abs_difference(forward(fg), forward(f) * forward(g)),
            max_abs_difference(inverse(fg), inverse(f) * inverse(g))};
}

namespace {

void check_kernel_time(const GridParams& p, double t) {
    if (!(t >= 0.0) || t >= p.n()) throw std::invalid_argument("kernel time must lie in [0, n)");
}

/// window * growth^steps on the window's frequencies, starting at -half_width.
std::vector<Complex> windowed_symbol(const Window& window, std::size_t steps) {
    const auto& p = window.params();
    std::vector<Complex> a;
    for (Index k = -window.half_width(); k <= window.half_width(); ++k) {
        if (!p.contains(k)) continue;
        a.push_back(0.5 * integer_power(Propagator::growth_at(p, k), steps));
    }
    return a;
}

Index window_first(const Window& window) {
    return std::max(-window.half_width(), window.params().first_index());
}

}  // namespace

Complex kernel(double t, Index z_index, const Window& window) {
    const auto& p = window.params();
    check_kernel_time(p, t);
    if (!p.contains(z_index)) throw std::out_of_range("kernel offset outside grid");
    const auto a = windowed_symbol(window, Propagator::steps_for_time(p, t));
    const Index target[] = {z_index};
    return transform_at(p, +1, window_first(window), a, target)[0];
}

GridFunction kernel_slice(double t, const Window& window) {
    const auto& p = window.params();
    check_kernel_time(p, t);
    // frequencies outside the window are never raised to a power: their growth overflows to inf
    const std::uint64_t steps = Propagator::steps_for_time(p, t);
    const auto& w = window.values();
    return inverse(GridFunction::from_index(p, [&](Index k) {
        return window.contains(k) ? w[k] * integer_power(Propagator::growth_at(p, k), steps) : Complex(0.0);
    }));
}

void SolveConfig::validate() const {
    if (n < 1) throw ConfigError("n must be a positive integer");
    if (!(omega > 0.0) || !(omega < n)) throw ConfigError("omega must lie in (0, n)");
    if (!(omega_prime > 0.0) || !(omega_prime <= n)) throw ConfigError("omega' must lie in (0, n]");
    if (times.empty()) throw ConfigError("at least one query time is required");
    for (double t : times) {
        if (!(t > 0.0)) throw ConfigError("query times must be positive (t = 0 is not solved)");
        if (!(t < n)) throw ConfigError("query times must be below n");
    }
    for (double x : xs) {
        if (!std::isfinite(x)) throw ConfigError("query positions must be finite");
        if (!GridParams(n).contains(GridParams(n).floor_index(x))) throw ConfigError("query position outside [-n, n)");
    }
    if (threads < 1) throw ConfigError("threads must be at least 1");
}

bool SolveConfig::asymptotic_regime() const {
    return omega < std::sqrt(omega_prime) && n > 1 && omega_prime < std::sqrt(std::log(static_cast<double>(n)));
}

GridFunction TruncatedBoundary::to_grid(const GridParams& params) const {
    std::vector<Complex> v(params.space_count());
    for (std::size_t m = 0; m < values.size(); ++m) v[params.offset(first + static_cast<Index>(m))] = values[m];
    return GridFunction(params, std::move(v));
}

TruncatedBoundary truncate_boundary(const GridParams& params, const BoundaryCondition& g, double omega) {
    // j/n in [-omega, omega)  <=>  ceil(-omega n) <= j < ceil(omega n)
    const auto ceil_index = [&](double x) { return -params.floor_index(-x); };
    const Index first = std::max(ceil_index(-omega), params.first_index());
    const Index end = std::min(ceil_index(omega), params.last_index() + 1);
    TruncatedBoundary out;
    out.first = first;
    for (Index j = first; j < end; ++j) out.values.push_back(g(params.coordinate(j)));
    return out;
}

namespace {

std::vector<std::string> stability_warnings(const SolveConfig& config, const GridParams& p) {
    std::vector<std::string> warnings;
    const double m = max_growth_modulus(p, config.omega_prime);
    if (m > 1.0 + 1e-12) {
        std::ostringstream os;
        os << "growth factor reaches " << m << " > 1 inside the window (omega' = " << config.omega_prime
           << " exceeds the stability radius " << stability_radius(p) << ")";
        warnings.push_back(os.str());
    }
    return warnings;
}

std::vector<Index> query_indices(const SolveConfig& config, const GridParams& p) {
    std::vector<Index> idx;
    idx.reserve(config.xs.size());
    for (double x : config.xs) idx.push_back(p.floor_index(x));
    return idx;
}

}  // namespace

SolveResult solve(const SolveConfig& config) {
    config.validate();
    const GridParams p(config.n);
    const Window window(p, config.omega_prime);
    const auto g = truncate_boundary(p, config.boundary, config.omega);

    const Index k_first = window_first(window);
    const Index k_last = std::min(window.half_width(), p.last_index());
    const auto k_count = static_cast<std::size_t>(k_last - k_first + 1);
    const auto g_hat = partial_transform(p, -1, g.first, g.values, k_first, k_count, config.threads);

    SolveResult result;
    result.asymptotic_regime = config.asymptotic_regime();
    result.warnings = stability_warnings(config, p);
    const auto targets = query_indices(config, p);

    for (double t : config.times) {
        const std::size_t steps = Propagator::steps_for_time(p, t);
        std::vector<Complex> a(k_count);
        for (std::size_t m = 0; m < k_count; ++m) {
            const Index k = k_first + static_cast<Index>(m);
            a[m] = 0.5 * integer_power(Propagator::growth_at(p, k), steps) * g_hat[m];
        }
        const auto u = transform_at(p, +1, k_first, a, targets, config.threads);
        for (std::size_t q = 0; q < targets.size(); ++q) {
            result.rows.push_back({t, config.xs[q], p.coordinate(targets[q]), u[q].real(), u[q].imag()});
        }
    }
    return result;
}

SolveResult solve_via_convolution(const SolveConfig& config) {
    config.validate();
    if (config.n > kConvolutionSolveMaxN) {
        throw ConfigError("convolution solve materialises the kernel; n must be at most " +
                          std::to_string(kConvolutionSolveMaxN));
    }
    const GridParams p(config.n);
    const Window window(p, config.omega_prime);
    const GridFunction g = truncate_boundary(p, config.boundary, config.omega).to_grid(p);

    SolveResult result;
    result.asymptotic_regime = config.asymptotic_regime();
    result.warnings = stability_warnings(config, p);
    const auto targets = query_indices(config, p);
    for (double t : config.times) {
        const GridFunction psi = kernel_slice(t, window);
        std::vector<Complex> u(targets.size());
        parallel_for(targets.size(), config.threads, [&](std::size_t b, std::size_t e) {
            for (std::size_t q = b; q < e; ++q) u[q] = convolve_at(psi, g, targets[q]);
        });
        for (std::size_t q = 0; q < targets.size(); ++q) {
            result.rows.push_back({t, config.xs[q], p.coordinate(targets[q]), u[q].real(), u[q].imag()});
        }
    }
    return result;
}

}  // namespace hyperheat
