#include <algorithm>
#include <cmath>
#include <ostream>
#include <random>

#include "hyperheat/cli.hpp"
#include "hyperheat/transform.hpp"

namespace hyperheat::cli {

namespace {

constexpr double kIdentityTol = 1e-9;
constexpr double kStepperTol = 1e-8;

class RandomSlices {
public:
    explicit RandomSlices(std::uint64_t seed) : engine_(seed) {}

    GridFunction any(const GridParams& p) {
        return GridFunction::from_index(p, [&](Index) { return next(); });
    }

    /// Random values on [first, last], zero elsewhere.
    GridFunction supported(const GridParams& p, Index first, Index last) {
        return GridFunction::from_index(p, [&](Index j) { return j >= first && j <= last ? next() : Complex(0.0); });
    }

private:
    Complex next() { return {dist_(engine_), dist_(engine_)}; }

    std::mt19937_64 engine_;
    std::uniform_real_distribution<double> dist_{-1.0, 1.0};
};

class Tracker {
public:
    Tracker(std::string name, double tol) : result_{std::move(name), 0.0, tol} {}
    void record(double residual, double scale) {
        const double r = residual / scale;
        result_.max_residual = std::isnan(r) ? r : std::max(result_.max_residual, r);
    }
    IdentityResult result() const { return result_; }

private:
    IdentityResult result_;
};

std::vector<int> grid_sizes(int max_n) {
    std::vector<int> ns;
    for (int n = 1; n <= max_n; n *= 2) ns.push_back(n);
    return ns;
}

}  // namespace

bool ValidateReport::passed() const {
    return std::all_of(results.begin(), results.end(), [](const IdentityResult& r) { return r.pass(); });
}

std::optional<std::string> ValidateReport::first_failure() const {
    for (const auto& r : results) {
        if (!r.pass()) return r.name;
    }
    return std::nullopt;
}

ValidateReport validate_identities(const ValidateOptions& options) {
    if (options.max_n < 1 || options.max_n > kDirectPathMaxN) {
        throw ConfigError("validate needs 1 <= max_n <= " + std::to_string(kDirectPathMaxN));
    }
    if (options.trials < 1) throw ConfigError("validate needs at least one trial");
    RandomSlices rng(options.seed);
    const auto ns = grid_sizes(options.max_n);

    Tracker inversion("inversion", kIdentityTol);
    Tracker convolution("convolution", kIdentityTol);
    Tracker dx("dx_identity", kIdentityTol);
    Tracker dxx("dxx_identity", kIdentityTol);
    Tracker fast("fast_vs_direct", kIdentityTol);
    Tracker corrected("stepper_spectral_corrected", kStepperTol);
    Tracker truncated("stepper_spectral_truncated", kStepperTol);

    const double c = options.inversion_constant;
    for (int n : ns) {
        const GridParams p(n);
        for (int trial = 0; trial < options.trials; ++trial) {
            const auto f = rng.any(p);
            const auto g = rng.any(p);
            const double fmax = f.max_abs();
            const auto fh = forward(f, TransformPath::direct);
            const auto gh = forward(g, TransformPath::direct);

            inversion.record(max_abs_difference(inverse(fh, TransformPath::direct), c * f), 1.0 + fmax);
            inversion.record(max_abs_difference(forward(inverse(f, TransformPath::direct), TransformPath::direct), c * f),
                             1.0 + fmax);

            const auto conv = check_convolution_theorem(f, g);
            convolution.record(conv.max(), 1.0 + std::max(fh.max_abs() * gh.max_abs(),
                                                          inverse(f).max_abs() * inverse(g).max_abs()));

            dx.record(check_dx_identity(f), 1.0 + n * fmax);
            dxx.record(check_dxx_identity(f), 1.0 + static_cast<double>(n) * n * fmax);

            fast.record(max_abs_difference(fh, forward(f, TransformPath::fast)), 1.0 + fmax);
            fast.record(max_abs_difference(inverse(f, TransformPath::direct), inverse(f, TransformPath::fast)), 1.0 + fmax);
        }
    }

    // Full corrections: arbitrary g, n in {2, 4}, up to 6 steps.
    for (int n : ns) {
        if (n < 2 || n > 4) continue;
        const GridParams p(n);
        const std::size_t steps = std::min<std::size_t>(6, p.time_count() - 1);
        for (int trial = 0; trial < options.trials; ++trial) {
            const auto g = rng.any(p);
            const auto field = evolve(g, steps);
            const auto corr = stepper_corrections(g, steps);
            const auto gh = forward(g);
            for (std::size_t s = 0; s <= steps; ++s) {
                const auto expected = forward(field.slice(s));
                const auto got = spectral_hat(gh, std::span(corr).first(s), s);
                corrected.record(max_abs_difference(got, expected), 1.0 + expected.max_abs());
            }
        }
    }

    // No corrections: support kept off the boundary rows for every pre-step slice.
    for (int n : ns) {
        if (n < 2) continue;
        const GridParams p(n);
        const Index top = p.n_squared() - 3;
        // support [a, top] spreads to [a - 2s, top]; it must stay clear of -n^2 and -n^2+1
        std::size_t steps = 8;
        while (steps > 0 && p.first_index() + 2 + 2 * static_cast<Index>(steps) > top) --steps;
        if (steps == 0) continue;
        const Index first = p.first_index() + 2 + 2 * static_cast<Index>(steps);
        for (int trial = 0; trial < options.trials; ++trial) {
            const auto g = rng.supported(p, first, top);
            const auto field = evolve(g, steps);
            const auto gh = forward(g);
            for (std::size_t s = 0; s <= steps; ++s) {
                const auto expected = forward(field.slice(s));
                truncated.record(max_abs_difference(spectral_hat(gh, s), expected), 1.0 + expected.max_abs());
            }
        }
    }

    ValidateReport report;
    for (const auto* t : {&inversion, &convolution, &dx, &dxx, &fast, &corrected, &truncated}) {
        report.results.push_back(t->result());
    }
    return report;
}

int run_validate(const ValidateOptions& options, std::ostream& csv, std::ostream& log) {
    const auto report = validate_identities(options);
    const std::string header[] = {"identity", "max_residual", "tolerance", "pass"};
    write_csv_row(csv, header);
    for (const auto& r : report.results) {
        const std::string row[] = {r.name, format_double(r.max_residual), format_double(r.tolerance),
                                   r.pass() ? "true" : "false"};
        write_csv_row(csv, row);
    }
    if (const auto failed = report.first_failure()) {
        log << "validation failed: " << *failed << '\n';
        return kValidationFailure;
    }
    return kOk;
}

int run_solve(const SolveConfig& config, std::ostream& csv, std::ostream& log) {
    const auto result = solve(config);
    for (const auto& w : result.warnings) log << "warning: " << w << '\n';
    const bool has_oracle = classical_closed_form(config.boundary, config.times.front(), 0.0).has_value();

    std::vector<std::string> header{"t", "x", "u_re", "u_im_diag"};
    if (has_oracle) {
        header.emplace_back("oracle");
        header.emplace_back("abs_err");
    }
    write_csv_row(csv, header);
    for (const auto& row : result.rows) {
        std::vector<std::string> fields{format_double(row.t), format_double(row.x), format_double(row.u_re),
                                        format_double(row.u_im)};
        if (has_oracle) {
            const double exact = classical_closed_form(config.boundary, row.t, row.x)->real();
            fields.push_back(format_double(exact));
            fields.push_back(format_double(std::abs(row.u_re - exact)));
        }
        write_csv_row(csv, fields);
    }
    return kOk;
}

int run_kernel(const SolveConfig& config, std::ostream& csv, std::ostream& log) {
    if (config.n < 1) throw ConfigError("n must be a positive integer");
    if (!(config.omega_prime > 0.0) || !(config.omega_prime <= config.n)) throw ConfigError("omega' must lie in (0, n]");
    if (config.times.empty() || config.xs.empty()) throw ConfigError("kernel needs --times and --xs");
    const GridParams p(config.n);
    const Window window(p, config.omega_prime);
    if (max_growth_modulus(p, config.omega_prime) > 1.0 + 1e-12) {
        log << "warning: growth factor exceeds 1 inside the window\n";
    }
    const std::string header[] = {"t", "z", "kernel_re", "kernel_im", "gaussian", "abs_err"};
    write_csv_row(csv, header);
    for (double t : config.times) {
        if (!(t > 0.0) || !(t < config.n)) throw ConfigError("kernel times must lie in (0, n)");
        for (double z : config.xs) {
            const Index zi = p.floor_index(z);
            if (!p.contains(zi)) throw ConfigError("kernel offset outside [-n, n)");
            const Complex k = kernel(t, zi, window);
            const double exact = gaussian_heat_kernel(t, p.coordinate(zi));
            const std::string row[] = {format_double(t),        format_double(p.coordinate(zi)),
                                       format_double(k.real()), format_double(k.imag()),
                                       format_double(exact),    format_double(std::abs(k.real() - exact))};
            write_csv_row(csv, row);
        }
    }
    return kOk;
}

ConvergeReport converge(const SolveConfig& base, std::span<const int> n_list) {
    if (n_list.size() < 3) throw ConfigError("convergence sweep needs at least three grid sizes");
    if (!base.times.empty() && !classical_closed_form(base.boundary, base.times.front(), 0.0)) {
        throw ConfigError("convergence sweep needs a boundary with a closed-form solution");
    }
    ConvergeReport report{};
    std::vector<double> ns, errs;
    for (int n : n_list) {
        SolveConfig config = base;
        config.n = n;
        const auto result = solve(config);
        double worst = 0.0;
        for (const auto& row : result.rows) {
            const double exact = classical_closed_form(config.boundary, row.t, row.x)->real();
            worst = std::max(worst, std::abs(row.u_re - exact));
        }
        report.rows.push_back({n, worst, result.asymptotic_regime});
        ns.push_back(n);
        errs.push_back(worst);
    }
    const bool positive = std::all_of(errs.begin(), errs.end(), [](double e) { return e > 0.0; });
    report.fitted_order = positive ? fit_order(ns, errs) : std::numeric_limits<double>::quiet_NaN();
    return report;
}

int run_converge(const SolveConfig& base, std::span<const int> n_list, std::ostream& csv, std::ostream& log) {
    const auto report = converge(base, n_list);
    const std::string header[] = {"n", "max_abs_err", "asymptotic_regime"};
    write_csv_row(csv, header);
    for (const auto& r : report.rows) {
        const std::string row[] = {std::to_string(r.n), format_double(r.max_abs_err), r.asymptotic_regime ? "true" : "false"};
        write_csv_row(csv, row);
    }
    log << "fitted order: " << format_double(report.fitted_order) << '\n';
    return kOk;
}

RateReport default_rate_sweep() {
    RateReport report;
    const double p_ns[] = {1, 10, 1e2, 1e3, 1e4, 1e5, 1e6};
    report.append(rate_check_p(p_ns));

    const double y1[] = {1.0};
    const double t_ns[] = {1e2, 1e3, 1e4};
    report.append(rate_check_t(y1, t_ns));
    const double y5[] = {5.0};
    const double big_n[] = {1e4};
    report.append(rate_check_t(y5, big_n));

    for (const auto& [t, threshold] : {std::pair{1.0, 1.0}, std::pair{0.25, 2.0}}) {
        const auto tb = tail_bound_check(t, threshold, 100);
        report.rows.push_back({"tail_bound", "t=" + format_double(t) + ";threshold=" + format_double(threshold) + ";n=100",
                               tb.left, format_double(tb.right), tb.holds()});
    }

    const int q_ns[] = {64, 128, 256};
    report.append(quadrature_rate_check(1.0, 0.0, q_ns));
    const int q_single[] = {256};
    report.append(quadrature_rate_check(1.0, 1.0, q_single));
    return report;
}

int run_rates(std::ostream& csv, std::ostream& log) {
    const auto report = default_rate_sweep();
    const std::string header[] = {"check", "param", "observed", "bound_or_bracket", "pass"};
    write_csv_row(csv, header);
    for (const auto& r : report.rows) {
        const std::string row[] = {r.check, r.param, format_double(r.observed), r.bound_or_bracket,
                                   r.pass ? "true" : "false"};
        write_csv_row(csv, row);
        if (!r.pass) log << "check failed: " << r.check << " (" << r.param << ")\n";
    }
    return report.passed() ? kOk : kValidationFailure;
}

}  // namespace hyperheat::cli
