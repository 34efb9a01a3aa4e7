#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "hyperheat/boundary.hpp"
#include "hyperheat/grid.hpp"

namespace hyperheat {

/**
 * Frequency truncation window: 1/2 on |k| <= floor(radius * n), 0 elsewhere.
 * A radius of n covers the whole frequency grid (the constant 1/2 window).
 */
class Window {
public:
    Window(GridParams params, double radius);

    const GridParams& params() const { return values_.params(); }
    double radius() const { return radius_; }
    /// floor(radius * n), clamped to the grid.
    Index half_width() const { return half_width_; }
    bool contains(Index k) const { return k >= -half_width_ && k <= half_width_; }
    const GridFunction& values() const { return values_; }

private:
    double radius_;
    Index half_width_;
    GridFunction values_;
};

/// base^exponent by repeated squaring.
Complex integer_power(Complex base, std::uint64_t exponent);

/**
 * Per-frequency growth factor 1 + psi(x)^2 / n of one explicit step and its
 * powers growth^floor(n t).
 */
class Propagator {
public:
    explicit Propagator(GridParams params);

    const GridParams& params() const { return growth_.params(); }
    const GridFunction& growth() const { return growth_; }

    /// floor(n t), snapping products within 1e-9 of an integer.
    static std::size_t steps_for_time(const GridParams& params, double t);

    static Complex growth_at(const GridParams& params, Index k);
    /// |growth|^2 = 1 - 8n sin^2(theta/2) cos(theta) + 16 n^2 sin^4(theta/2), theta = pi k / n^2.
    static double growth_modulus_squared(const GridParams& params, Index k);

    GridFunction power(std::size_t steps) const;
    GridFunction at_time(double t) const { return power(steps_for_time(params(), t)); }

private:
    GridFunction growth_;
};

/// sqrt(2n)/pi, the leading-order edge of the band where |growth(x)| <= 1. The exact edge lies slightly inside.
double stability_radius(const GridParams& params);
/// max |growth(k/n)| over |k| <= floor(radius * n).
double max_growth_modulus(const GridParams& params, double radius);

/**
 * One explicit step f + (1/n) d_xx f. The top row is carried over and the
 * row below it uses the one-sided rule, matching d_xx's boundary rows.
 */
GridFunction step(const GridFunction& slice);

class OverflowGuardError : public std::runtime_error {
public:
    OverflowGuardError(std::size_t step, double magnitude);
    std::size_t step() const { return step_; }

private:
    std::size_t step_;
};

inline constexpr double kOverflowGuard = 1e100;

/**
 * Field of explicit steps from g, available for time indices [0, steps].
 * The stepper amplifies high frequencies by up to |1 - 4n| per step; if any
 * slice exceeds kOverflowGuard in modulus this throws OverflowGuardError.
 */
Field evolve(const GridFunction& g, std::size_t steps);

/// f_corr of each of the slices 0 .. steps-1 of the explicit stepper from g.
std::vector<GridFunction> stepper_corrections(const GridFunction& g, std::size_t steps);

/**
 * Closed-form frequency-space solution after i steps:
 *
 *   g_hat growth^i - (1/n) sum_{j<i} f_corr_j growth^{i-j-1}
 *
 * where f_corr_j are the boundary corrections of the pre-step slice j. An
 * empty `corrections` span drops the sum, which is exact while the solution
 * stays zero on the three boundary rows.
 */
GridFunction spectral_hat(const GridFunction& g_hat, std::span<const GridFunction> corrections, std::size_t i);
GridFunction spectral_hat(const GridFunction& g_hat, std::size_t i);

/// Periodic convolution (1/n) sum_k f_{(j-k) mod 2n^2} g_k.
GridFunction convolve(const GridFunction& f, const GridFunction& g);
/// One output value of convolve(f, g).
Complex convolve_at(const GridFunction& f, const GridFunction& g, Index j);

struct ConvolutionResiduals {
    double forward;  ///< max |forward(f*g) - forward(f) forward(g)|
    double inverse;  ///< max |inverse(f*g) - inverse(f) inverse(g)|
    double max() const { return forward > inverse ? forward : inverse; }
};

ConvolutionResiduals check_convolution_theorem(const GridFunction& f, const GridFunction& g);

/**
 * Discrete heat kernel: inverse transform of growth^floor(n t) * window,
 * evaluated at grid offset z_index / n. Requires 0 <= t < n.
 */
Complex kernel(double t, Index z_index, const Window& window);
/// The kernel at every grid offset.
GridFunction kernel_slice(double t, const Window& window);

class ConfigError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

struct SolveConfig {
    int n = 0;
    double omega = 0.0;        ///< boundary data kept on [-omega, omega)
    double omega_prime = 0.0;  ///< frequency window radius
    BoundaryCondition boundary = BoundaryCondition::zero();
    std::vector<double> times;
    std::vector<double> xs;
    int threads = 1;

    /// Throws ConfigError unless 0 < omega < n, 0 < omega_prime <= n and every t in (0, n).
    void validate() const;
    /// omega < sqrt(omega_prime) and omega_prime < sqrt(log n).
    bool asymptotic_regime() const;
};

/// Boundary samples on the grid cells inside [-omega, omega).
struct TruncatedBoundary {
    Index first = 0;
    std::vector<Complex> values;

    GridFunction to_grid(const GridParams& params) const;
};

TruncatedBoundary truncate_boundary(const GridParams& params, const BoundaryCondition& g, double omega);

struct SolveRow {
    double t;
    double x;
    double grid_x;  ///< floor(n x) / n, where the grid solution is read
    double u_re;
    double u_im;    ///< imaginary residue, reported as a diagnostic
};

struct SolveResult {
    std::vector<SolveRow> rows;  ///< ordered by time, then position
    std::vector<std::string> warnings;
    bool asymptotic_regime = false;
};

/**
 * Windowed spectral solve:
 *   1. sample g on [-omega, omega)
 *   2. forward transform at |k| <= floor(omega' n)
 *   3. multiply by the window and growth^floor(n t)
 *   4. inverse transform at floor(n x)
 * Cost is O(omega n * omega' n + |queries| * omega' n).
 */
SolveResult solve(const SolveConfig& config);

inline constexpr int kConvolutionSolveMaxN = 64;

/// kernel * truncated g by direct convolution; n <= kConvolutionSolveMaxN.
SolveResult solve_via_convolution(const SolveConfig& config);

}  // namespace hyperheat
