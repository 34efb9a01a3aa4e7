#pragma once

#include <complex>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "hyperheat/boundary.hpp"

namespace hyperheat {

class QuadratureError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/**
 * H(t, x) = (4 pi t)^{-1/2} * integral of exp(-(x-y)^2 / 4t) g(y) dy by
 * adaptive Gauss-Kronrod quadrature to absolute tolerance 1e-10.
 *
 * The domain is |y - x| <= max(10 sqrt(t), r), where r is the first radius at
 * which kernel * certificate drops below 1e-14, intersected with the support
 * of g and split at its breakpoints. Throws std::invalid_argument for t <= 0
 * and QuadratureError when the error estimate exceeds the tolerance.
 */
std::complex<double> classical_solution(const BoundaryCondition& g, double t, double x);

/// Closed form of H for the gaussian and indicator kinds; nullopt otherwise.
std::optional<std::complex<double>> classical_closed_form(const BoundaryCondition& g, double t, double x);

/// (4 pi t)^{-1/2} exp(-z^2 / 4t).
double gaussian_heat_kernel(double t, double z);

struct TransformIdentity {
    std::complex<double> integral;  ///< integral of exp(i pi w z - pi^2 t w^2) dw
    double closed_form;             ///< (pi t)^{-1/2} exp(-z^2 / 4t)
    double residual;                ///< |integral - closed_form|
};

TransformIdentity gaussian_transform_identity(double t, double z);

namespace sequences {

/// n (exp(i pi y / n) - 1), which tends to i pi y.
std::complex<double> discrete_derivative_symbol(double y, double n);
/// (1 + w/n)^n, principal logarithm.
std::complex<double> compound_exp(std::complex<double> w, double n);
/// compound_exp(discrete_derivative_symbol(y, n)^2, n), which tends to exp(-pi^2 y^2).
std::complex<double> discrete_gaussian_symbol(double y, double n);

/// n (exp(i pi / n) - 1) - i pi.
std::complex<double> derivative_symbol_error(double n);
std::complex<double> discrete_gaussian_error(double y, double n);
std::complex<double> compound_exp_error(std::complex<double> w, double n);
/// discrete_gaussian_symbol(y, n)^t - exp(-pi^2 t y^2), principal branch.
std::complex<double> discrete_gaussian_power_error(double y, double t, double n);

}  // namespace sequences

struct CheckRow {
    std::string check;
    std::string param;
    double observed;
    std::string bound_or_bracket;
    bool pass;
};

struct RateReport {
    std::vector<CheckRow> rows;
    std::optional<double> fitted_order;

    bool passed() const;
    void append(const RateReport& other);
};

/// -slope of the least-squares line through (log n, log error).
double fit_order(std::span<const double> ns, std::span<const double> errors);

/// |p_n| <= pi^2 e^pi / n for every n, and the fitted order over n >= 100 in [0.8, 1.2].
RateReport rate_check_p(std::span<const double> n_values);

/**
 * For each y: y = 0 checks t_n(0) = 1 exactly. When exp(-pi^2 y^2) >= 1e-10
 * the error |t_n(y) - exp(-pi^2 y^2)| must decrease along n_values with order
 * in [0.8, 1.2]. Otherwise y is in the vanishing regime and |t_n(y)| <= 1e-3
 * is checked at every n >= 10 |y|^3.
 */
RateReport rate_check_t(std::span<const double> y_values, std::span<const double> n_values);

struct TailBound {
    double left;   ///< (1/n) sum of exp(-pi^2 t x^2) over grid |x| >= x0 + 1/n
    double right;  ///< (pi sqrt t)^{-1} exp(-pi^2 t x0^2)
    double x0;     ///< ceil(threshold n) / n
    bool holds() const { return left <= right; }
};

/// Throws std::invalid_argument unless threshold >= 1/(pi sqrt t).
TailBound tail_bound_check(double t, double threshold, int n);

/**
 * Discrete inverse transform of exp(-pi^2 t x^2) at z, against
 * (pi t)^{-1/2} exp(-z^2 / 4t). Per-n error <= 1e-2, errors strictly
 * decreasing in n, fitted order in [0.8, 1.5]. z must lie on every grid.
 */
RateReport quadrature_rate_check(double t, double z, std::span<const int> n_values);

/// The discrete transform used by quadrature_rate_check, on the grid of size n.
std::complex<double> discrete_gaussian_transform(double t, double z, int n);

}  // namespace hyperheat
