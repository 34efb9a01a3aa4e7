#include <doctest.h>

#include <cmath>
#include <fstream>
#include <numbers>

#include "hyperheat/oracle.hpp"

using namespace hyperheat;

namespace {

constexpr double kPi = std::numbers::pi;

double gaussian_closed(double a, double b, double t, double x) {
    const double s = 1.0 + 4.0 * b * t;
    return a / std::sqrt(s) * std::exp(-b * x * x / s);
}

}  // namespace

TEST_CASE("boundary condition parsing and evaluation") {
    const auto g = BoundaryCondition::parse("gaussian:2,0.5");
    CHECK(g.kind() == BoundaryCondition::Kind::gaussian);
    CHECK(g(1.0).real() == doctest::Approx(2.0 * std::exp(-0.5)));
    CHECK(g.continuous());

    const auto ind = BoundaryCondition::parse("indicator:-1,1");
    CHECK(ind(-1.0) == std::complex<double>(1.0));
    CHECK(ind(1.0) == std::complex<double>(0.0));
    CHECK_FALSE(ind.continuous());

    const auto bump = BoundaryCondition::parse(" bump:0.5,2 ");
    CHECK(bump(0.5).real() == doctest::Approx(1.0));
    CHECK(bump(2.5) == std::complex<double>(0.0));

    CHECK(BoundaryCondition::parse("zero")(0.3) == std::complex<double>(0.0));
    CHECK_THROWS_AS(BoundaryCondition::parse("gaussian:1"), std::invalid_argument);
    CHECK_THROWS_AS(BoundaryCondition::parse("cosine:1,2"), std::invalid_argument);
    CHECK_THROWS_AS(BoundaryCondition::parse("gaussian:1,-1"), std::invalid_argument);
    CHECK_THROWS_AS(BoundaryCondition::parse("indicator:2,1"), std::invalid_argument);
    CHECK_THROWS_AS(BoundaryCondition::parse("gaussian:1,x"), std::invalid_argument);
}

TEST_CASE("sampled boundary uses the nearest sample") {
    const auto s = BoundaryCondition::sampled({1.0, 0.0, 2.0}, {{1, 0}, {0, 1}, {2, 0}});
    CHECK(s(0.0) == std::complex<double>(0, 1));
    CHECK(s(0.4) == std::complex<double>(0, 1));
    CHECK(s(0.6) == std::complex<double>(1, 0));
    CHECK(s(2.0) == std::complex<double>(2, 0));
    CHECK(s(2.1) == std::complex<double>(0, 0));
    CHECK(s.certificate().a == doctest::Approx(2.0));
    CHECK_THROWS_AS(BoundaryCondition::sampled({0.0, 0.0}, {1.0, 2.0}), std::invalid_argument);

    const auto path = std::string("oracle_samples_test.csv");
    {
        std::ofstream out(path);
        out << "# x,re,im\n0.5, 1, 0\n\n-0.5,0,2\n";
    }
    const auto loaded = BoundaryCondition::load_samples(path);
    CHECK(loaded(-0.5) == std::complex<double>(0, 2));
    CHECK(loaded(0.5) == std::complex<double>(1, 0));
    std::remove(path.c_str());
}

TEST_CASE("growth certificates hold on a dense sample") {
    std::vector<double> ys;
    for (int i = -4000; i <= 4000; ++i) ys.push_back(i * 0.005);
    for (const char* text : {"gaussian:3,0.2", "gaussian:-1,4", "indicator:-1,2", "bump:0,1.5", "zero"}) {
        CHECK(certificate_holds(BoundaryCondition::parse(text), ys));
    }
}

TEST_CASE("classical solution examples") {
    const auto g = BoundaryCondition::gaussian(1.0, 1.0);
    CHECK(classical_solution(g, 0.5, 0.0).real() == doctest::Approx(1.0 / std::sqrt(3.0)).epsilon(1e-12));
    for (double x : {0.0, 1.0, -1.0}) CHECK(std::abs(classical_solution(g, 1e-6, x) - g(x)) <= 1e-3);
    CHECK_THROWS_AS(classical_solution(g, 0.0, 0.0), std::invalid_argument);
    CHECK(classical_solution(BoundaryCondition::zero(), 1.0, 0.3) == std::complex<double>(0.0));
}

TEST_CASE("classical solution conserves mass") {
    const auto g = BoundaryCondition::gaussian(1.0, 1.0);
    const double mass = std::sqrt(kPi);
    for (double t : {0.25, 1.0}) {
        // trapezoid over a Gaussian profile is accurate far beyond the tolerance
        const double h = 0.05, half = 20.0;
        double sum = 0.0;
        for (double x = -half; x <= half + 1e-12; x += h) sum += classical_solution(g, t, x).real();
        CHECK(std::abs(sum * h - mass) <= 1e-6 * mass);
    }
}

TEST_CASE("closed form matches quadrature on a lattice") {
    const BoundaryCondition gs[] = {BoundaryCondition::gaussian(1.0, 1.0), BoundaryCondition::gaussian(-2.5, 0.3)};
    for (const auto& g : gs) {
        const auto [a, b] = *g.parameters();
        for (double t : {0.1, 0.5, 1.0, 2.0}) {
            for (double x : {-2.0, -0.7, 0.0, 0.4, 1.5}) {
                const double q = classical_solution(g, t, x).real();
                CHECK(std::abs(q - gaussian_closed(a, b, t, x)) <= 1e-9);
                CHECK(std::abs(classical_closed_form(g, t, x)->real() - q) <= 1e-9);
            }
        }
    }
    const auto ind = BoundaryCondition::indicator(-0.5, 1.0);
    for (double t : {0.05, 0.5}) {
        for (double x : {-1.0, -0.5, 0.2, 1.0, 3.0}) {
            CHECK(std::abs(classical_solution(ind, t, x) - *classical_closed_form(ind, t, x)) <= 1e-9);
        }
    }
    CHECK_FALSE(classical_closed_form(BoundaryCondition::bump(0, 1), 1.0, 0.0).has_value());
}

TEST_CASE("classical solution satisfies the heat equation") {
    const auto g = BoundaryCondition::gaussian(1.0, 1.0);
    const double h = 1e-3, t = 0.5;
    for (double x : {0.0, 0.5, -0.5, 1.0, -1.0}) {
        const double ut = (classical_solution(g, t + h, x) - classical_solution(g, t - h, x)).real() / (2 * h);
        const double uxx = (classical_solution(g, t, x + h) - 2.0 * classical_solution(g, t, x) +
                            classical_solution(g, t, x - h)).real() / (h * h);
        CHECK(std::abs(ut - uxx) <= 1e-4);
    }
}

TEST_CASE("bump classical solution stays between zero and the peak") {
    const auto g = BoundaryCondition::bump(0.0, 1.0);
    for (double x : {-1.5, 0.0, 0.7}) {
        const double v = classical_solution(g, 0.3, x).real();
        CHECK(v > 0.0);
        CHECK(v < 1.0);
    }
}

TEST_CASE("gaussian transform identity") {
    const auto r0 = gaussian_transform_identity(1.0, 0.0);
    CHECK(r0.integral.real() == doctest::Approx(1.0 / std::sqrt(kPi)).epsilon(1e-12));
    CHECK(r0.residual <= 1e-8);
    const auto r1 = gaussian_transform_identity(0.5, 1.0);
    CHECK(r1.residual <= 1e-8);
    CHECK(std::abs(r1.integral.imag()) <= 1e-10);
    CHECK(gaussian_heat_kernel(0.5, 0.0) == doctest::Approx(1.0 / std::sqrt(2.0 * kPi)));
}

TEST_CASE("derivative symbol error examples") {
    const auto p1 = sequences::derivative_symbol_error(1.0);
    CHECK(std::abs(p1 - std::complex<double>(-2.0, -kPi)) <= 1e-15);
    CHECK(std::abs(p1) == doctest::Approx(std::sqrt(4.0 + kPi * kPi)));
    CHECK(std::abs(p1) <= kPi * kPi * std::exp(kPi));
    CHECK(std::abs(sequences::derivative_symbol_error(1e6)) <= 2.29e-4);

    const double ns[] = {1e2, 1e3, 1e4, 1e5, 1e6};
    const auto report = rate_check_p(ns);
    CHECK(report.passed());
    REQUIRE(report.fitted_order.has_value());
    CHECK(*report.fitted_order >= 0.8);
    CHECK(*report.fitted_order <= 1.2);
}

TEST_CASE("discrete gaussian symbol sequences") {
    for (double n : {1.0, 7.0, 1e4}) CHECK(sequences::discrete_gaussian_symbol(0.0, n) == std::complex<double>(1.0));
    CHECK(std::abs(sequences::discrete_derivative_symbol(0.3, 1e6) - std::complex<double>(0, kPi * 0.3)) < 1e-6);
    CHECK(std::abs(sequences::compound_exp_error({-2.0, 1.0}, 1e5)) < 1e-4);
    CHECK(std::abs(sequences::compound_exp({0.0, 0.0}, 3.0) - 1.0) == 0.0);

    const double ys[] = {1.0};
    const double ns[] = {1e2, 1e3, 1e4};
    const auto report = rate_check_t(ys, ns);
    CHECK(report.passed());
    CHECK(*report.fitted_order >= 0.8);
    CHECK(*report.fitted_order <= 1.2);

    CHECK(std::abs(sequences::discrete_gaussian_symbol(5.0, 1e4)) <= 1e-3);
    const double big_y[] = {5.0};
    const double big_n[] = {1e2, 1e4};
    const auto vanish = rate_check_t(big_y, big_n);
    CHECK(vanish.rows.size() == 1);
    CHECK(vanish.passed());

    const double zero[] = {0.0};
    CHECK(rate_check_t(zero, ns).passed());
}

TEST_CASE("principal-branch power error shrinks with n") {
    double prev = 1.0;
    for (double n : {1e2, 1e3, 1e4}) {
        const double e = std::abs(sequences::discrete_gaussian_power_error(0.8, 1.7, n));
        CHECK(e < prev);
        prev = e;
    }
    CHECK(prev < 1e-5);
}

TEST_CASE("tail bound examples") {
    const auto a = tail_bound_check(1.0, 1.0, 100);
    CHECK(a.holds());
    CHECK(a.right == doctest::Approx(std::exp(-kPi * kPi) / kPi));
    CHECK(a.left <= 1.65e-5);
    CHECK(tail_bound_check(0.25, 2.0, 100).holds());
    CHECK_THROWS_AS(tail_bound_check(1.0, 0.2, 100), std::invalid_argument);
}

TEST_CASE("discrete gaussian transform against the closed form") {
    const std::complex<double> v = discrete_gaussian_transform(1.0, 1.0, 256);
    CHECK(std::abs(v - std::exp(-0.25) / std::sqrt(kPi)) <= 1e-2);
    CHECK_THROWS_AS(discrete_gaussian_transform(1.0, 0.001, 16), std::invalid_argument);
}

TEST_CASE("order fit recovers a known slope") {
    const double ns[] = {10, 100, 1000};
    const double errs[] = {3e-2, 3e-4, 3e-6};
    CHECK(fit_order(ns, errs) == doctest::Approx(2.0));
    CHECK_THROWS(fit_order(std::span(ns, 1), std::span(errs, 1)));
}
