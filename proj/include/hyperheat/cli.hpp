#pragma once

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "hyperheat/evolution.hpp"
#include "hyperheat/oracle.hpp"

namespace hyperheat::cli {

enum ExitCode : int { kOk = 0, kValidationFailure = 1, kConfigError = 2 };

/// Shortest decimal that parses back to the same double.
std::string format_double(double v);
/// Quotes a field when it contains a comma, quote or line break.
std::string csv_field(std::string_view s);
void write_csv_row(std::ostream& out, std::span<const std::string> fields);

/// "a,b,c" or "first:last:count" (count evenly spaced values, both ends included).
std::vector<double> parse_number_list(std::string_view text);
std::vector<int> parse_int_list(std::string_view text);

/// Runs `body`, mapping ConfigError and std::invalid_argument to kConfigError with a message on `err`.
int guarded(const std::function<int()>& body, std::ostream& err);

struct ValidateOptions {
    std::uint64_t seed = 42;
    int max_n = 8;
    int trials = 10;
    /// Expected inversion constant; anything other than 2 is a fault injection.
    double inversion_constant = 2.0;
};

struct IdentityResult {
    std::string name;
    double max_residual;  ///< already divided by the per-sample scale
    double tolerance;
    bool pass() const { return max_residual <= tolerance; }
};

struct ValidateReport {
    std::vector<IdentityResult> results;
    bool passed() const;
    std::optional<std::string> first_failure() const;
};

/// Throws ConfigError when max_n > 16 or max_n < 1.
ValidateReport validate_identities(const ValidateOptions& options);
int run_validate(const ValidateOptions& options, std::ostream& csv, std::ostream& log);

int run_solve(const SolveConfig& config, std::ostream& csv, std::ostream& log);

/// Kernel at offsets `xs` against the Gaussian heat kernel.
int run_kernel(const SolveConfig& config, std::ostream& csv, std::ostream& log);

struct ConvergeRow {
    int n;
    double max_abs_err;
    bool asymptotic_regime;
};

struct ConvergeReport {
    std::vector<ConvergeRow> rows;
    double fitted_order;
};

/// Max error of solve against the closed form for each n; needs >= 3 sizes and a closed-form boundary.
ConvergeReport converge(const SolveConfig& base, std::span<const int> n_list);
int run_converge(const SolveConfig& base, std::span<const int> n_list, std::ostream& csv, std::ostream& log);

/// p_n bounds, t_n rates, tail bounds and quadrature rates with their default parameters.
RateReport default_rate_sweep();
int run_rates(std::ostream& csv, std::ostream& log);

}  // namespace hyperheat::cli
