#pragma once

#include <complex>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

namespace hyperheat {

/// Constants with |g(y)| <= a * exp(b |y|^rho), rho < 2.
struct GrowthCertificate {
    double a = 1.0;
    double b = 0.0;
    double rho = 0.0;

    double bound(double y) const;
};

/**
 * Initial data g(y) for the heat equation.
 *
 * The gaussian and bump kinds are continuous. The indicator and sampled
 * kinds are piecewise constant (sampled: nearest sample, zero outside the
 * sampled range) and so fall outside the hypotheses of the classical
 * theory; they are accepted for experimentation.
 */
class BoundaryCondition {
public:
    enum class Kind { gaussian, indicator, bump, sampled };

    /// amplitude * exp(-rate y^2), rate > 0.
    static BoundaryCondition gaussian(double amplitude, double rate);
    /// The gaussian with amplitude 0.
    static BoundaryCondition zero();
    /// 1 on [left, right), 0 elsewhere. Only piecewise continuous.
    static BoundaryCondition indicator(double left, double right);
    /// exp(1 - 1/(1 - s^2)) for |s| < 1, s = (y - center)/width; peak value 1.
    static BoundaryCondition bump(double center, double width);
    static BoundaryCondition sampled(std::vector<double> xs, std::vector<std::complex<double>> values);

    /**
     * Parses "gaussian:a,b", "indicator:l,r", "bump:c,w" or "zero".
     * Throws std::invalid_argument on anything else.
     */
    static BoundaryCondition parse(std::string_view text);
    /// Reads "x,re,im" lines (blank lines and '#' comments skipped).
    static BoundaryCondition load_samples(const std::filesystem::path& path);

    Kind kind() const;
    std::string describe() const;
    bool continuous() const { return kind() == Kind::gaussian || kind() == Kind::bump; }

    std::complex<double> operator()(double y) const;

    GrowthCertificate certificate() const;
    /// Finite support, when g vanishes outside an interval.
    std::optional<std::pair<double, double>> support() const;
    /// Points where g or its derivative jumps; quadrature splits there.
    std::vector<double> breakpoints() const;
    /// The two constructor parameters of a builtin kind; nullopt for sampled data.
    std::optional<std::pair<double, double>> parameters() const;

private:
    struct Gaussian {
        double amplitude, rate;
    };
    struct Indicator {
        double left, right;
    };
    struct Bump {
        double center, width;
    };
    struct Sampled {
        std::vector<double> xs;
        std::vector<std::complex<double>> values;
    };
    using Data = std::variant<Gaussian, Indicator, Bump, Sampled>;

    explicit BoundaryCondition(Data data) : data_(std::move(data)) {}

    Data data_;
};

/// True when |g(y)| <= certificate bound at every sample point.
bool certificate_holds(const BoundaryCondition& g, std::span<const double> ys);

}  // namespace hyperheat
