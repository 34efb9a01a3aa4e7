#include <doctest.h>

#include "hyperheat/evolution.hpp"
#include "support.hpp"

using namespace hyperheat;

TEST_CASE("grid params index ranges") {
    const GridParams p(3);
    CHECK(p.space_count() == 18);
    CHECK(p.time_count() == 9);
    CHECK(p.first_index() == -9);
    CHECK(p.last_index() == 8);
    CHECK(p.coordinate(p.first_index()) == doctest::Approx(-3.0));
    CHECK(p.coordinate(p.last_index()) == doctest::Approx(3.0 - 1.0 / 3));
    CHECK(p.dx() == doctest::Approx(1.0 / 3));
    CHECK(p.offset(-9) == 0);
    CHECK(p.index_at(17) == 8);
    CHECK_THROWS_AS(GridParams(0), std::invalid_argument);
}

TEST_CASE("floor_index snaps near-integer products and floors otherwise") {
    const GridParams p(100);
    CHECK(p.floor_index(0.29) == 29);
    CHECK(p.floor_index(-0.29) == -29);
    CHECK(p.floor_index(0.295) == 29);
    CHECK(p.floor_index(-0.295) == -30);
    CHECK(p.floor_index(0.0) == 0);
}

TEST_CASE("wrap reduces modulo 2n^2 into the index range") {
    const GridParams p(2);
    CHECK(p.wrap(4) == -4);
    CHECK(p.wrap(-5) == 3);
    CHECK(p.wrap(11) == 3);
    CHECK(p.wrap(0) == 0);
}

TEST_CASE("grid function construction") {
    const GridParams p(2);
    CHECK_THROWS_AS(GridFunction(p, std::vector<Complex>(3)), std::invalid_argument);
    const auto d = GridFunction::delta(p, 1, 2.0);
    CHECK(d[1] == Complex(2.0));
    CHECK(d[0] == Complex(0.0));
    CHECK_THROWS(d.at(4));
    const auto c = GridFunction::from_coordinate(p, [](double x) { return Complex(x); });
    CHECK(c[-4] == Complex(-2.0));
    CHECK(c[3] == Complex(1.5));
}

TEST_CASE("integrate examples") {
    CHECK(integrate(GridFunction::zeros(GridParams(3))) == Complex(0.0));
    const GridParams p1(1);
    CHECK(integrate(GridFunction(p1, {1.0, 1.0})) == Complex(2.0));
    const GridParams p2(2);
    CHECK(integrate(GridFunction::delta(p2, 0, 2.0)) == Complex(1.0));
}

TEST_CASE("d_x examples") {
    const GridParams p2(2);
    CHECK(d_x(GridFunction::constant(p2, {3.0, -1.0})).max_abs() == 0.0);

    const auto id = GridFunction::from_coordinate(p2, [](double x) { return Complex(x); });
    const auto dx = d_x(id);
    for (Index j = -4; j <= 2; ++j) CHECK(dx[j] == Complex(1.0));
    CHECK(dx[3] == Complex(0.0));

    const GridParams p1(1);
    const Complex a(1.5, -2.0), b(0.25, 3.0);
    const auto f = d_x(GridFunction(p1, {a, b}));
    CHECK(f[-1] == b - a);
    CHECK(f[0] == Complex(0.0));
}

TEST_CASE("d_xx examples") {
    const GridParams p(2);
    CHECK(d_xx(GridFunction::constant(p, 7.0)).max_abs() == 0.0);

    const auto dd = d_xx(GridFunction::delta(p, 0));
    const std::vector<Complex> expected{0, 0, 4, -8, 4, 0, 0, 0};
    for (std::size_t m = 0; m < expected.size(); ++m) CHECK(dd.values()[m] == expected[m]);

    const auto id = d_xx(GridFunction::from_coordinate(p, [](double x) { return Complex(x); }));
    for (Index j = -4; j <= 1; ++j) CHECK(id[j] == Complex(0.0));
    CHECK(id[2] == Complex(-2.0));
    CHECK(id[3] == Complex(0.0));
}

TEST_CASE("d_xx boundary rows follow the one-sided rule") {
    std::mt19937_64 rng(7);
    const GridParams p(3);
    const auto f = testing_support::random_function(p, rng);
    const auto dd = d_xx(f);
    const double n2 = 9.0;
    CHECK(std::abs(dd[7] - (-n2 * (f[8] - f[7]))) < 1e-12);
    CHECK(dd[8] == Complex(0.0));
    CHECK(std::abs(dd[0] - n2 * (f[2] - 2.0 * f[1] + f[0])) < 1e-12);
}

TEST_CASE("d_xx is bit-identical to composing d_x") {
    std::mt19937_64 rng(11);
    for (int n = 1; n <= 16; ++n) {
        const GridParams p(n);
        const auto f = testing_support::random_function(p, rng);
        CHECK(max_abs_difference(d_xx(f), d_x(d_x(f))) == 0.0);
    }
}

TEST_CASE("differences are linear") {
    std::mt19937_64 rng(12);
    const Complex alpha(0.7, -1.3), beta(-2.1, 0.4);
    for (int n = 1; n <= 16; ++n) {
        const GridParams p(n);
        const auto f = testing_support::random_function(p, rng);
        const auto g = testing_support::random_function(p, rng);
        const auto mix = alpha * f + beta * g;
        const auto lhs = d_x(mix);
        const auto rhs = alpha * d_x(f) + beta * d_x(g);
        CHECK(max_abs_difference(lhs, rhs) <= 1e-12 * (1.0 + rhs.max_abs()));
        const auto lhs2 = d_xx(mix);
        const auto rhs2 = alpha * d_xx(f) + beta * d_xx(g);
        CHECK(max_abs_difference(lhs2, rhs2) <= 1e-12 * (1.0 + rhs2.max_abs()));

        if (n == 1) continue;  // a single time slice has no forward difference
        const Field ff(f, [&](std::size_t i) { return static_cast<double>(i) * g; }, 1);
        const Field fg(g, [&](std::size_t i) { return static_cast<double>(i) * f; }, 1);
        const Field fm(mix, [&](std::size_t i) { return static_cast<double>(i) * (alpha * g + beta * f); }, 1);
        const auto dt = alpha * d_t(ff, 0) + beta * d_t(fg, 0);
        CHECK(max_abs_difference(d_t(fm, 0), dt) <= 1e-12 * (1.0 + dt.max_abs()));
    }
}

TEST_CASE("integrate(d_x f) telescopes to f_top - f_bottom") {
    std::mt19937_64 rng(13);
    for (int n = 1; n <= 16; ++n) {
        const GridParams p(n);
        const auto f = testing_support::random_function(p, rng);
        const Complex expected = f[p.last_index()] - f[p.first_index()];
        CHECK(std::abs(integrate(d_x(f)) - expected) <= 1e-12 * (1.0 + n));
    }
}

TEST_CASE("d_t examples") {
    const GridParams p(2);
    const auto c = GridFunction::constant(p, 5.0);
    const Field constant(c, [&](std::size_t) { return c; });
    for (std::size_t i = 0; i < p.time_count(); ++i) CHECK(d_t(constant, i).max_abs() == 0.0);

    const Field linear(GridFunction::zeros(p),
                       [&](std::size_t i) { return GridFunction::constant(p, static_cast<double>(i) / p.n()); });
    for (std::size_t i = 0; i + 1 < p.time_count(); ++i) {
        CHECK(max_abs_difference(d_t(linear, i), GridFunction::constant(p, 1.0)) == 0.0);
    }
    CHECK(d_t(linear, p.time_count() - 1).max_abs() == 0.0);
    CHECK_THROWS_AS(d_t(linear, p.time_count()), std::out_of_range);

    const auto stepped = evolve(GridFunction::delta(p, 0), 1);
    const auto dt = d_t(stepped, 0);
    CHECK(dt[-2] == Complex(4.0));
    CHECK(dt[-1] == Complex(-8.0));
    CHECK(dt[0] == Complex(4.0));
    CHECK(dt[1] == Complex(0.0));
}

TEST_CASE("field slice zero is the initial function and bounds are enforced") {
    const GridParams p(2);
    const auto g = GridFunction::delta(p, 1, {0.5, 0.5});
    const Field f(g, [&](std::size_t) { return GridFunction::zeros(p); }, 2);
    CHECK(max_abs_difference(f.slice(0), g) == 0.0);
    CHECK(f.slice(2).max_abs() == 0.0);
    CHECK_THROWS_AS(f.slice(3), std::out_of_range);
}

TEST_CASE("grid function arithmetic rejects mismatched grids") {
    const auto a = GridFunction::zeros(GridParams(2));
    const auto b = GridFunction::zeros(GridParams(3));
    CHECK_THROWS_AS(a + b, std::invalid_argument);
    CHECK(GridFunction::constant(GridParams(1), {std::nan(""), 0}).all_finite() == false);
}
